#include "anisomhd/config.hpp"

#include <fstream>
#include <stdexcept>

namespace anisomhd {
namespace {

const Json& descend(const Json& j, const std::string& path) {
  const Json* cur = &j;
  std::size_t pos = 0;
  while (pos < path.size()) {
    const std::size_t dot = path.find('.', pos);
    const std::string key = path.substr(pos, dot == std::string::npos ? dot : dot - pos);
    cur = &cur->at(key);
    if (dot == std::string::npos) break;
    pos = dot + 1;
  }
  return *cur;
}

template <typename T>
T get_as(const Json& j, const std::string& path) {
  try {
    return descend(j, path).get<T>();
  } catch (const Json::exception& e) {
    throw std::invalid_argument("config: bad value at '" + path + "': " + e.what());
  }
}

std::array<double, 3> get_vec3(const Json& j, const std::string& path) {
  const auto v = get_as<std::vector<double>>(j, path);
  if (v.size() != 3)
    throw std::invalid_argument("config: '" + path + "' must have exactly 3 entries");
  return {v[0], v[1], v[2]};
}

void check_keys(const Json& user, const Json& skeleton, const std::string& path) {
  if (path == "audit.constant_overrides") return;  // free-form label map
  if (user.is_object()) {
    if (!skeleton.is_object())
      throw std::invalid_argument("config: unexpected object at '" + path + "'");
    for (auto it = user.begin(); it != user.end(); ++it) {
      const std::string sub = path.empty() ? it.key() : path + "." + it.key();
      if (!skeleton.contains(it.key()))
        throw std::invalid_argument("config: unknown key '" + sub + "'");
      check_keys(it.value(), skeleton.at(it.key()), sub);
    }
  } else if (user.is_array() && skeleton.is_array() && !skeleton.empty() &&
             skeleton.front().is_object()) {
    for (std::size_t i = 0; i < user.size(); ++i)
      check_keys(user[i], skeleton.front(), path + "[" + std::to_string(i) + "]");
  }
}

void merge_into(Json& base, const Json& user) {
  if (base.is_object() && user.is_object()) {
    for (auto it = user.begin(); it != user.end(); ++it) {
      if (base.contains(it.key()))
        merge_into(base[it.key()], it.value());
      else
        base[it.key()] = it.value();
    }
  } else {
    base = user;
  }
}

Json heat_case_json(const RunConfig::HeatCase& c) {
  return Json{{"alpha", c.alpha}, {"beta", c.beta},       {"p", c.p},
              {"q", c.q},         {"d", c.d},             {"profile", c.profile},
              {"param", c.param}, {"tol", c.tol}};
}

}  // namespace

RunConfig default_config() {
  RunConfig cfg;
  cfg.heat.cases = {
      {0.0, 2.0, 2.0, 2.0, 2, "lowpass", 5e-3, 0.03},
      {0.0, 2.0, 1.0, 2.0, 2, "gaussian", 1.0, 0.02},
      {1.0, 2.0, 1.0, 2.0, 2, "gaussian", 1.0, 0.03},
  };
  cfg.convolution.cases = {{2.0, 2.0}, {0.5, 1.0}, {0.25, 0.5}};
  return cfg;
}

Json config_to_json(const RunConfig& cfg) {
  Json j;
  j["format_version"] = cfg.format_version;
  j["seed"] = cfg.seed;
  j["threads"] = cfg.threads;
  j["physics"] = {{"mu", cfg.physics.mu}, {"eta", cfg.physics.eta}};
  j["grid"] = {{"n1", cfg.grid.n1}, {"n2", cfg.grid.n2}, {"n3", cfg.grid.n3}, {"L", cfg.grid.L}};
  j["quadrature"] = {{"extent", cfg.quadrature.extent}, {"m", cfg.quadrature.m}};
  j["initial_data"] = {{"profile", cfg.initial_data.profile},
                       {"sigma", cfg.initial_data.sigma},
                       {"amp_u", cfg.initial_data.amp_u},
                       {"amp_b", cfg.initial_data.amp_b},
                       {"project", cfg.initial_data.project}};
  j["solver"] = {{"dt", cfg.solver.dt},
                 {"T", cfg.solver.T},
                 {"integrator", cfg.solver.integrator},
                 {"dealias", cfg.solver.dealias},
                 {"output_cadence", cfg.solver.output_cadence},
                 {"checkpoint_cadence", cfg.solver.checkpoint_cadence},
                 {"blowup_factor", cfg.solver.blowup_factor},
                 {"divergence_tol", cfg.solver.divergence_tol},
                 {"band", cfg.solver.band},
                 {"delta", cfg.solver.delta}};
  j["energy"] = {{"epsilon", cfg.energy.epsilon}, {"lyapunov_weight", cfg.energy.lyapunov_weight}};
  j["propagate"] = {{"t_min", cfg.propagate.t_min},
                    {"t_max", cfg.propagate.t_max},
                    {"n_times", cfg.propagate.n_times}};
  j["fit"] = {{"t_lo", cfg.fit.t_lo}, {"t_hi", cfg.fit.t_hi}};

  Json overrides = Json::object();
  for (const auto& [label, c] : cfg.audit.constant_overrides)
    overrides[label] = {{"C", c.C}, {"c0", c.c0}, {"c1", c.c1}, {"c2", c.c2}, {"c3", c.c3}};
  j["audit"] = {{"r", cfg.audit.r},
                {"n_train", cfg.audit.n_train},
                {"n_validate", cfg.audit.n_validate},
                {"t_count", cfg.audit.t_count},
                {"t_min", cfg.audit.t_min},
                {"t_max", cfg.audit.t_max},
                {"xi_min", cfg.audit.xi_min},
                {"xi_max", cfg.audit.xi_max},
                {"safety", cfg.audit.safety},
                {"drop_second_term_a23", cfg.audit.drop_second_term_a23},
                {"drop_c3_only_a23", cfg.audit.drop_c3_only_a23},
                {"constant_overrides", overrides}};
  j["kernels"] = {{"extent", cfg.kernels.extent}, {"times", cfg.kernels.times}};
  j["inequality"] = {{"n_samples", cfg.inequality.n_samples},
                     {"grid_n", cfg.inequality.grid_n},
                     {"band", cfg.inequality.band}};
  Json hc = Json::array();
  for (const auto& c : cfg.heat.cases) hc.push_back(heat_case_json(c));
  j["heat"] = {{"cases", hc}};
  Json cc = Json::array();
  for (const auto& c : cfg.convolution.cases) cc.push_back(Json{{"s1", c.s1}, {"s2", c.s2}});
  j["convolution"] = {{"cases", cc},
                      {"t_min", cfg.convolution.t_min},
                      {"t_max", cfg.convolution.t_max},
                      {"n_times", cfg.convolution.n_times}};
  return j;
}

RunConfig config_from_json(const Json& user) {
  const RunConfig defaults = default_config();
  const Json skeleton = config_to_json(defaults);
  check_keys(user, skeleton, "");
  Json j = skeleton;
  merge_into(j, user);

  RunConfig cfg = defaults;
  cfg.format_version = get_as<int>(j, "format_version");
  if (cfg.format_version != 1)
    throw std::invalid_argument("config: unsupported format_version " +
                                std::to_string(cfg.format_version));
  cfg.seed = get_as<std::uint64_t>(j, "seed");
  cfg.threads = get_as<int>(j, "threads");
  cfg.physics.mu = get_as<double>(j, "physics.mu");
  cfg.physics.eta = get_as<double>(j, "physics.eta");
  cfg.grid.n1 = get_as<int>(j, "grid.n1");
  cfg.grid.n2 = get_as<int>(j, "grid.n2");
  cfg.grid.n3 = get_as<int>(j, "grid.n3");
  cfg.grid.L = get_as<double>(j, "grid.L");
  cfg.quadrature.extent = get_as<double>(j, "quadrature.extent");
  cfg.quadrature.m = get_as<int>(j, "quadrature.m");
  cfg.initial_data.profile = get_as<std::string>(j, "initial_data.profile");
  cfg.initial_data.sigma = get_vec3(j, "initial_data.sigma");
  cfg.initial_data.amp_u = get_vec3(j, "initial_data.amp_u");
  cfg.initial_data.amp_b = get_vec3(j, "initial_data.amp_b");
  cfg.initial_data.project = get_as<bool>(j, "initial_data.project");
  cfg.solver.dt = get_as<double>(j, "solver.dt");
  cfg.solver.T = get_as<double>(j, "solver.T");
  cfg.solver.integrator = get_as<std::string>(j, "solver.integrator");
  if (cfg.solver.integrator != "etdrk2" && cfg.solver.integrator != "ifrk4")
    throw std::invalid_argument("config: solver.integrator must be etdrk2 or ifrk4");
  cfg.solver.dealias = get_as<std::string>(j, "solver.dealias");
  if (cfg.solver.dealias != "two_thirds" && cfg.solver.dealias != "none")
    throw std::invalid_argument("config: solver.dealias must be two_thirds or none");
  cfg.solver.output_cadence = get_as<int>(j, "solver.output_cadence");
  cfg.solver.checkpoint_cadence = get_as<int>(j, "solver.checkpoint_cadence");
  cfg.solver.blowup_factor = get_as<double>(j, "solver.blowup_factor");
  cfg.solver.divergence_tol = get_as<double>(j, "solver.divergence_tol");
  cfg.solver.band = get_as<double>(j, "solver.band");
  cfg.solver.delta = get_as<double>(j, "solver.delta");
  cfg.energy.epsilon = get_as<double>(j, "energy.epsilon");
  cfg.energy.lyapunov_weight = get_as<double>(j, "energy.lyapunov_weight");
  cfg.propagate.t_min = get_as<double>(j, "propagate.t_min");
  cfg.propagate.t_max = get_as<double>(j, "propagate.t_max");
  cfg.propagate.n_times = get_as<int>(j, "propagate.n_times");
  cfg.fit.t_lo = get_as<double>(j, "fit.t_lo");
  cfg.fit.t_hi = get_as<double>(j, "fit.t_hi");

  cfg.audit.r = get_as<double>(j, "audit.r");
  cfg.audit.n_train = get_as<int>(j, "audit.n_train");
  cfg.audit.n_validate = get_as<int>(j, "audit.n_validate");
  cfg.audit.t_count = get_as<int>(j, "audit.t_count");
  cfg.audit.t_min = get_as<double>(j, "audit.t_min");
  cfg.audit.t_max = get_as<double>(j, "audit.t_max");
  cfg.audit.xi_min = get_as<double>(j, "audit.xi_min");
  cfg.audit.xi_max = get_as<double>(j, "audit.xi_max");
  cfg.audit.safety = get_as<double>(j, "audit.safety");
  cfg.audit.drop_second_term_a23 = get_as<bool>(j, "audit.drop_second_term_a23");
  cfg.audit.drop_c3_only_a23 = get_as<bool>(j, "audit.drop_c3_only_a23");
  cfg.audit.seed = cfg.seed;
  cfg.audit.constant_overrides.clear();
  const Json& ov = j.at("audit").at("constant_overrides");
  if (!ov.is_object())
    throw std::invalid_argument("config: audit.constant_overrides must be an object");
  for (auto it = ov.begin(); it != ov.end(); ++it) {
    AuditConstants c;
    const Json& e = it.value();
    if (!e.is_object())
      throw std::invalid_argument("config: audit.constant_overrides entries must be objects");
    for (auto f = e.begin(); f != e.end(); ++f) {
      const std::string& k = f.key();
      double v;
      try {
        v = f.value().get<double>();
      } catch (const Json::exception&) {
        throw std::invalid_argument("config: audit.constant_overrides." + it.key() + "." + k +
                                    " must be numeric");
      }
      if (k == "C") c.C = v;
      else if (k == "c0") c.c0 = v;
      else if (k == "c1") c.c1 = v;
      else if (k == "c2") c.c2 = v;
      else if (k == "c3") c.c3 = v;
      else
        throw std::invalid_argument("config: unknown key 'audit.constant_overrides." + it.key() +
                                    "." + k + "'");
    }
    cfg.audit.constant_overrides[it.key()] = c;
  }

  cfg.kernels.extent = get_as<int>(j, "kernels.extent");
  cfg.kernels.times = get_as<std::vector<double>>(j, "kernels.times");
  cfg.inequality.n_samples = get_as<int>(j, "inequality.n_samples");
  cfg.inequality.grid_n = get_as<int>(j, "inequality.grid_n");
  cfg.inequality.band = get_as<double>(j, "inequality.band");

  cfg.heat.cases.clear();
  for (const Json& e : j.at("heat").at("cases")) {
    RunConfig::HeatCase c;
    c.alpha = e.value("alpha", c.alpha);
    c.beta = e.value("beta", c.beta);
    c.p = e.value("p", c.p);
    c.q = e.value("q", c.q);
    c.d = e.value("d", c.d);
    c.profile = e.value("profile", c.profile);
    c.param = e.value("param", c.param);
    c.tol = e.value("tol", c.tol);
    cfg.heat.cases.push_back(c);
  }
  cfg.convolution.cases.clear();
  for (const Json& e : j.at("convolution").at("cases")) {
    RunConfig::ConvCase c;
    c.s1 = e.value("s1", c.s1);
    c.s2 = e.value("s2", c.s2);
    cfg.convolution.cases.push_back(c);
  }
  cfg.convolution.t_min = get_as<double>(j, "convolution.t_min");
  cfg.convolution.t_max = get_as<double>(j, "convolution.t_max");
  cfg.convolution.n_times = get_as<int>(j, "convolution.n_times");
  return cfg;
}

void apply_override(Json& doc, const std::string& assignment) {
  const std::size_t eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0)
    throw std::invalid_argument("override must look like key.path=value: " + assignment);
  const std::string path = assignment.substr(0, eq);
  const std::string raw = assignment.substr(eq + 1);

  Json value = Json::parse(raw, nullptr, false);
  if (value.is_discarded()) value = raw;

  Json* cur = &doc;
  std::size_t pos = 0;
  try {
    while (true) {
      const std::size_t dot = path.find('.', pos);
      const std::string key = path.substr(pos, dot == std::string::npos ? dot : dot - pos);
      if (key.empty()) throw std::invalid_argument("override has empty path segment: " + path);
      if (dot == std::string::npos) {
        (*cur)[key] = value;
        break;
      }
      cur = &(*cur)[key];
      pos = dot + 1;
    }
  } catch (const Json::exception& e) {
    throw std::invalid_argument("override path '" + path + "' not settable: " + e.what());
  }
}

RunConfig load_config(const std::string& path, const std::vector<std::string>& overrides) {
  Json doc = Json::object();
  if (!path.empty()) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot open config file: " + path);
    try {
      doc = Json::parse(is);
    } catch (const Json::exception& e) {
      throw std::invalid_argument("config parse error in " + path + ": " + e.what());
    }
  }
  for (const auto& o : overrides) apply_override(doc, o);
  return config_from_json(doc);
}

}  // namespace anisomhd
