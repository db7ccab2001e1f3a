#include "CLI11.hpp"

#include "anisomhd/checkpoint.hpp"
#include "anisomhd/config.hpp"
#include "anisomhd/energy.hpp"
#include "anisomhd/inequality.hpp"
#include "anisomhd/json_io.hpp"
#include "anisomhd/random_fields.hpp"
#include "anisomhd/solver.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace anisomhd;

namespace {

constexpr const char* kToolVersion = "1.0.0";

struct CommonArgs {
  std::string config_path;
  std::string out_dir = "out";
  std::uint64_t seed = 0;
  int threads = 0;
  std::vector<std::string> sets;
};

void add_common(CLI::App* cmd, CommonArgs& a) {
  cmd->add_option("--config", a.config_path, "JSON configuration file");
  cmd->add_option("--out", a.out_dir, "output directory");
  cmd->add_option("--seed", a.seed, "override the top-level seed");
  cmd->add_option("--threads", a.threads, "FFT threads (0 = auto)");
  cmd->add_option("--set", a.sets, "dotted.path=value configuration override");
}

RunConfig prepare(const CLI::App& cmd, const CommonArgs& a) {
  std::vector<std::string> ov = a.sets;
  if (cmd.count("--seed")) ov.push_back("seed=" + std::to_string(a.seed));
  if (cmd.count("--threads")) ov.push_back("threads=" + std::to_string(a.threads));
  RunConfig cfg = load_config(a.config_path, ov);
  set_fft_threads(cfg.threads);
  fs::create_directories(a.out_dir);
  return cfg;
}

void write_meta(const std::string& out_dir, const std::string& tool, const RunConfig& cfg,
                const std::vector<std::string>& artifacts) {
  Json m;
  m["tool"] = tool;
  m["tool_version"] = kToolVersion;
  m["format_version"] = cfg.format_version;
  m["seed"] = cfg.seed;
  m["config"] = config_to_json(cfg);
  m["artifacts"] = artifacts;
  std::string stem = tool;
  for (char& c : stem)
    if (c == '-') c = '_';
  write_json_file((fs::path(out_dir) / (stem + "_meta.json")).string(), m);
}

// Column order shared by the diagnostics writer and the energies reader.
struct SemCol {
  const char* name;
  double SeminormSet::*member;
};
const SemCol kSemCols[] = {
    {"pair_h3_sq", &SeminormSet::pair_h3_sq},
    {"d1u_h3_sq", &SeminormSet::d1u_h3_sq},
    {"d2u_h2_sq", &SeminormSet::d2u_h2_sq},
    {"gradh_b_h3_sq", &SeminormSet::gradh_b_h3_sq},
    {"gradh_pair_h1_sq", &SeminormSet::gradh_pair_h1_sq},
    {"d1_gradh_u_h1_sq", &SeminormSet::d1_gradh_u_h1_sq},
    {"d2_gradh_u_l2_sq", &SeminormSet::d2_gradh_u_l2_sq},
    {"gradh2_b_h1_sq", &SeminormSet::gradh2_b_h1_sq},
    {"pair_l2_sq", &SeminormSet::pair_l2_sq},
    {"gradh_pair_l2_sq", &SeminormSet::gradh_pair_l2_sq},
    {"d3_pair_l2_sq", &SeminormSet::d3_pair_l2_sq},
    {"d1d1_pair_l2_sq", &SeminormSet::d1d1_pair_l2_sq},
    {"d1d2_pair_l2_sq", &SeminormSet::d1d2_pair_l2_sq},
    {"d1d3_pair_l2_sq", &SeminormSet::d1d3_pair_l2_sq},
    {"d2d2_pair_l2_sq", &SeminormSet::d2d2_pair_l2_sq},
    {"d2d3_pair_l2_sq", &SeminormSet::d2d3_pair_l2_sq},
    {"d3d3_pair_l2_sq", &SeminormSet::d3d3_pair_l2_sq},
    {"d1u_l2_sq", &SeminormSet::d1u_l2_sq},
    {"gradh_b_l2_sq", &SeminormSet::gradh_b_l2_sq},
    {"u_h3_sq", &SeminormSet::u_h3_sq},
    {"b_h3_sq", &SeminormSet::b_h3_sq},
};

FieldPair seeded_initial_pair(const RunConfig& cfg, const SpectralGrid& g) {
  Rng rng(cfg.seed);
  FieldPair p = random_band_pair(g, cfg.solver.band, rng, true);
  for (int i = 0; i < 3; ++i) {
    p.u.c[i] *= cfg.solver.delta;
    p.b.c[i] *= cfg.solver.delta;
  }
  return p;
}

SolverConfig solver_config(const RunConfig& cfg, const std::string& out_dir) {
  SolverConfig sc;
  sc.n1 = cfg.grid.n1;
  sc.n2 = cfg.grid.n2;
  sc.n3 = cfg.grid.n3;
  sc.L = cfg.grid.L;
  sc.params = cfg.physics;
  sc.dt = cfg.solver.dt;
  sc.T = cfg.solver.T;
  sc.dealias = cfg.solver.dealias;
  sc.integrator = cfg.solver.integrator == "ifrk4" ? Integrator::IFRK4 : Integrator::ETDRK2;
  sc.output_cadence = cfg.solver.output_cadence;
  sc.checkpoint_cadence = cfg.solver.checkpoint_cadence;
  sc.checkpoint_dir = out_dir;
  sc.blowup_factor = cfg.solver.blowup_factor;
  sc.divergence_tol = cfg.solver.divergence_tol;
  return sc;
}

void write_trajectory(const std::string& out_dir, const Trajectory& traj) {
  std::vector<std::string> head = {"t"};
  for (const auto& c : kSemCols) head.push_back(c.name);
  head.insert(head.end(), {"div_u", "div_b", "lyap_ip_h2", "lyap_ip_l2"});
  CsvWriter diag(head);
  for (const auto& r : traj.records) {
    diag.cell(r.t);
    for (const auto& c : kSemCols) diag.cell(r.sem.*(c.member));
    diag.cell(r.div_u).cell(r.div_b).cell(r.lyap_ip_h2).cell(r.lyap_ip_l2);
    diag.endrow();
  }
  diag.write((fs::path(out_dir) / "diagnostics.csv").string());

  CsvWriter steps({"t", "energy", "diss", "diss_interval_exact"});
  for (const auto& s : traj.steps) {
    steps.cell(s.t).cell(s.energy).cell(s.diss).cell(s.diss_interval_exact);
    steps.endrow();
  }
  steps.write((fs::path(out_dir) / "steps.csv").string());

  const IdentityResiduals res = energy_identity_residuals(traj);
  CsvWriter rw({"t_lo", "t_hi", "trapezoid", "exact_linear"});
  for (std::size_t i = 0; i < res.t_lo.size(); ++i) {
    rw.cell(res.t_lo[i]).cell(res.t_hi[i]).cell(res.trapezoid[i]).cell(res.exact_linear[i]);
    rw.endrow();
  }
  rw.write((fs::path(out_dir) / "residuals.csv").string());
}

Trajectory trajectory_from_dir(const std::string& dir) {
  Trajectory traj;
  const CsvTable diag = read_csv((fs::path(dir) / "diagnostics.csv").string());
  const std::size_t ct = diag.col("t");
  for (const auto& row : diag.rows) {
    OutputRecord r;
    r.t = row[ct];
    for (const auto& c : kSemCols) r.sem.*(c.member) = row[diag.col(c.name)];
    r.div_u = row[diag.col("div_u")];
    r.div_b = row[diag.col("div_b")];
    r.lyap_ip_h2 = row[diag.col("lyap_ip_h2")];
    r.lyap_ip_l2 = row[diag.col("lyap_ip_l2")];
    traj.records.push_back(r);
  }
  const CsvTable st = read_csv((fs::path(dir) / "steps.csv").string());
  for (const auto& row : st.rows) {
    StepDiag s;
    s.t = row[st.col("t")];
    s.energy = row[st.col("energy")];
    s.diss = row[st.col("diss")];
    s.diss_interval_exact = row[st.col("diss_interval_exact")];
    traj.steps.push_back(s);
  }
  if (traj.records.empty() || traj.steps.empty())
    throw std::runtime_error("empty trajectory in " + dir);
  traj.initial_pair_h3 = std::sqrt(traj.records.front().sem.pair_h3_sq);
  traj.n_steps = long(traj.steps.size()) - 1;
  return traj;
}

int cmd_analyze_kernels(const CLI::App& cmd, const CommonArgs& a) {
  const RunConfig cfg = prepare(cmd, a);
  const int e = cfg.kernels.extent;
  if (e < 0) throw std::invalid_argument("kernels.extent must be >= 0");
  for (double t : cfg.kernels.times)
    if (t < 0) throw std::invalid_argument("kernels.times must be >= 0");

  CsvWriter sym({"xi1", "xi2", "xi3", "S", "P", "Gamma", "lambda1_re", "lambda1_im",
                 "lambda2_re", "lambda2_im", "degenerate", "subdomain"});
  CsvWriter ker({"xi1", "xi2", "xi3", "t", "G1_re", "G1_im", "Q1_re", "Q1_im", "Q2_re",
                 "Q2_im", "Q3_re", "Q3_im"});
  for (int x1 = -e; x1 <= e; ++x1)
    for (int x2 = -e; x2 <= e; ++x2) {
      const ModeSymbol s = mode_symbol(cfg.physics, {double(x1), double(x2), 0.0});
      const KernelMatrix probe = kernel_matrix(s, 1.0);
      sym.cell(double(x1)).cell(double(x2)).cell(0.0);
      sym.cell(s.S).cell(s.P).cell(s.Gamma);
      sym.cell(s.lambda1.real()).cell(s.lambda1.imag());
      sym.cell(s.lambda2.real()).cell(s.lambda2.imag());
      sym.cell(probe.degenerate ? 1 : 0);
      sym.cell(std::string(subdomain_name(classify_subdomain(s, cfg.audit.r))));
      sym.endrow();
      for (double t : cfg.kernels.times) {
        const KernelMatrix k = kernel_matrix(s, t);
        ker.cell(double(x1)).cell(double(x2)).cell(0.0).cell(t);
        ker.cell(k.G1.real()).cell(k.G1.imag());
        ker.cell(k.Q1.real()).cell(k.Q1.imag());
        ker.cell(k.Q2.real()).cell(k.Q2.imag());
        ker.cell(k.Q3.real()).cell(k.Q3.imag());
        ker.endrow();
      }
    }
  sym.write((fs::path(a.out_dir) / "symbols.csv").string());
  ker.write((fs::path(a.out_dir) / "kernels.csv").string());
  write_meta(a.out_dir, "analyze-kernels", cfg, {"symbols.csv", "kernels.csv"});
  return 0;
}

int cmd_audit_bounds(const CLI::App& cmd, const CommonArgs& a) {
  const RunConfig cfg = prepare(cmd, a);
  const auto reports = audit_bounds(cfg.physics, cfg.audit);
  Json arr = Json::array();
  bool any_covered = false, all_pass = true;
  for (const auto& r : reports) {
    if (r.covered) any_covered = true;
    if (r.covered && !r.pass) all_pass = false;
    arr.push_back(Json{{"label", r.label},
                       {"covered", r.covered},
                       {"n_train", r.n_train},
                       {"n_validate", r.n_validate},
                       {"constants",
                        {{"C", r.constants.C},
                         {"c0", r.constants.c0},
                         {"c1", r.constants.c1},
                         {"c2", r.constants.c2},
                         {"c3", r.constants.c3}}},
                       {"max_train_log_ratio", r.max_train_log_ratio},
                       {"max_log_ratio", r.max_log_ratio},
                       {"max_ratio", r.max_ratio},
                       {"pass", r.pass},
                       {"worst_xi", r.worst_xi},
                       {"worst_t", r.worst_t}});
  }
  Json out;
  out["subdomains"] = arr;
  out["pass"] = any_covered && all_pass;
  write_json_file((fs::path(a.out_dir) / "audit.json").string(), out);
  write_meta(a.out_dir, "audit-bounds", cfg, {"audit.json"});
  return 0;
}

int cmd_propagate_linear(const CLI::App& cmd, const CommonArgs& a) {
  const RunConfig cfg = prepare(cmd, a);
  const QuadratureGrid q = make_quadrature(cfg.quadrature.extent, cfg.quadrature.m);
  const std::vector<double> times =
      log_spaced_times(cfg.propagate.t_min, cfg.propagate.t_max, cfg.propagate.n_times);
  const NormSeries ns = propagate_linear(cfg.physics, cfg.initial_data, q, times);

  std::vector<std::string> head = {"t"};
  head.insert(head.end(), ns.order.begin(), ns.order.end());
  CsvWriter csv(head);
  for (std::size_t i = 0; i < ns.times.size(); ++i) {
    csv.cell(ns.times[i]);
    for (const auto& key : ns.order) csv.cell(ns.series.at(key)[i]);
    csv.endrow();
  }
  csv.write((fs::path(a.out_dir) / "decay_norms.csv").string());

  const std::vector<std::string> quantities = {"pair_id",      "pair_gradh",   "pair_d3",
                                               "pair_d1gradh", "pair_d2gradh", "pair_d1d3",
                                               "pair_d2d3",    "pair_d3d3"};
  Json fits = Json::array();
  for (const auto& qty : quantities) {
    const DecayFit f = fit_decay(qty, ns.times, ns.series.at(qty), cfg.fit.t_lo, cfg.fit.t_hi);
    fits.push_back(Json{{"quantity", f.quantity},
                        {"t_lo", f.t_lo},
                        {"t_hi", f.t_hi},
                        {"n_points", f.n_points},
                        {"exponent", f.exponent},
                        {"intercept", f.intercept},
                        {"r2", f.r2}});
  }
  Json out;
  out["fits"] = fits;
  out["mass_outside_fraction"] = mass_outside_fraction(cfg.initial_data, cfg.quadrature.extent);
  write_json_file((fs::path(a.out_dir) / "decay_fits.json").string(), out);
  write_meta(a.out_dir, "propagate-linear", cfg, {"decay_norms.csv", "decay_fits.json"});
  return 0;
}

int cmd_solve(const CLI::App& cmd, const CommonArgs& a) {
  const RunConfig cfg = prepare(cmd, a);
  const SpectralGrid g = make_grid(cfg.grid.n1, cfg.grid.n2, cfg.grid.n3, cfg.grid.L);
  const FieldPair init = seeded_initial_pair(cfg, g);
  const Trajectory traj = run_solver(solver_config(cfg, a.out_dir), init);
  write_trajectory(a.out_dir, traj);

  const FourierTransformer ft(g);
  write_checkpoint((fs::path(a.out_dir) / "final.chk").string(), ft.inverse(traj.final_spectral));
  write_meta(a.out_dir, "solve", cfg,
             {"diagnostics.csv", "steps.csv", "residuals.csv", "final.chk"});
  return 0;
}

int cmd_energies(const CLI::App& cmd, const CommonArgs& a, const std::string& from_dir) {
  const RunConfig cfg = prepare(cmd, a);
  Trajectory traj;
  if (!from_dir.empty()) {
    traj = trajectory_from_dir(from_dir);
  } else {
    const SpectralGrid g = make_grid(cfg.grid.n1, cfg.grid.n2, cfg.grid.n3, cfg.grid.L);
    traj = run_solver(solver_config(cfg, a.out_dir), seeded_initial_pair(cfg, g));
  }

  const EnergyLedger led = energy_ledger(traj, cfg.energy.epsilon, cfg.energy.lyapunov_weight);
  const IdentityResiduals res = energy_identity_residuals(traj);

  // F is recomputed from the seeded initial datum; with --from, the config
  // must be the one echoed in the source run's meta file.
  const SpectralGrid g = make_grid(cfg.grid.n1, cfg.grid.n2, cfg.grid.n3, cfg.grid.L);
  const FourierTransformer ft(g);
  const InitialDataNorms idn = initial_data_norms(ft.inverse(seeded_initial_pair(cfg, g)), ft);

  Json out;
  out["epsilon"] = led.epsilon;
  out["lyapunov_weight"] = led.lyapunov_weight;
  out["times"] = led.times;
  out["E0"] = led.E0;
  out["E1"] = led.E1;
  out["E2"] = led.E2;
  out["E_total"] = led.E_total;
  out["E0_sup"] = led.E0_sup;
  out["E0_int"] = led.E0_int;
  out["E1_sup"] = led.E1_sup;
  out["E1_int"] = led.E1_int;
  out["L"] = led.L;
  out["ip_d2u_b_H2"] = led.ip_d2u_b_H2;
  out["ip_d2gradhu_gradhb_L2"] = led.ip_d2gradhu_gradhb_L2;
  out["lemma43"] = led.lemma43;
  out["residuals"] = {{"e0", res.e0},
                      {"t_lo", res.t_lo},
                      {"t_hi", res.t_hi},
                      {"trapezoid", res.trapezoid},
                      {"exact_linear", res.exact_linear}};
  out["initial"] = {{"h3_sq", idn.h3_sq},
                    {"mixed_sq", idn.mixed_sq},
                    {"d3_mixed_sq", idn.d3_mixed_sq},
                    {"d3d3_mixed_sq", idn.d3d3_mixed_sq},
                    {"F", idn.F}};
  std::vector<double> e0_over_f(led.E0.size());
  for (std::size_t i = 0; i < led.E0.size(); ++i)
    e0_over_f[i] = idn.F > 0 ? led.E0[i] / idn.F : 0.0;
  out["E0_over_F"] = e0_over_f;
  write_json_file((fs::path(a.out_dir) / "energies.json").string(), out);
  write_meta(a.out_dir, "energies", cfg, {"energies.json"});
  return 0;
}

int cmd_inequality_suite(const CLI::App& cmd, const CommonArgs& a) {
  const RunConfig cfg = prepare(cmd, a);
  const SuiteReport rep = run_inequality_suite(cfg.seed, cfg.inequality.n_samples,
                                               cfg.inequality.grid_n, cfg.inequality.band);
  Json ids = Json::array();
  for (const auto& r : rep.ids)
    ids.push_back(Json{{"id", r.id},
                       {"n_cases", r.n_cases},
                       {"max_ratio_100", r.max_ratio_100},
                       {"max_ratio", r.max_ratio},
                       {"saturation_ok", r.saturation_ok},
                       {"valid", r.valid}});

  // Reference datum: a centered line Gaussian, lhs attained on the grid.
  const SpectralGrid gg = make_grid(64, 4, 4, 12.0 / kTau);
  const FourierTransformer ft(gg);
  ScalarField gau = sample_physical(gg, [](double x1, double, double) {
    return std::exp(-0.5 * (x1 - 6.0) * (x1 - 6.0));
  });
  const InequalityCase ex = product_check(gau, gau, "f1d", {1, 0, 0}, ft);

  Json heat = Json::array();
  for (const auto& c : cfg.heat.cases) {
    const HeatDecayResult h =
        heat_decay_check(c.alpha, c.beta, c.p, c.q, c.d, c.profile, c.param, c.tol);
    heat.push_back(Json{{"alpha", h.alpha},
                        {"beta", h.beta},
                        {"p", h.p},
                        {"q", h.q},
                        {"d", h.d},
                        {"profile", h.profile},
                        {"param", h.profile_param},
                        {"predicted", h.predicted},
                        {"fitted", h.fit.exponent},
                        {"r2", h.fit.r2},
                        {"pass", h.pass}});
  }

  Json conv = Json::array();
  const std::vector<double> tgrid = log_spaced_times(
      cfg.convolution.t_min, cfg.convolution.t_max, cfg.convolution.n_times);
  for (const auto& c : cfg.convolution.cases) {
    const ConvolutionResult r = convolution_bound_check(c.s1, c.s2, tgrid);
    conv.push_back(Json{{"s1", r.s1},
                        {"s2", r.s2},
                        {"branch", r.branch},
                        {"times", r.times},
                        {"ratios", r.ratios},
                        {"early_max", r.early_max},
                        {"late_max", r.late_max},
                        {"pass", r.pass}});
  }

  Json out;
  out["suite"] = {{"seed", rep.seed}, {"n_samples", rep.n_samples}, {"ids", ids}};
  out["f1d_example"] = {{"lhs", ex.lhs}, {"rhs", ex.rhs_factor_product}, {"ratio", ex.ratio}};
  out["heat"] = heat;
  out["convolution"] = conv;
  write_json_file((fs::path(a.out_dir) / "inequality.json").string(), out);
  write_meta(a.out_dir, "inequality-suite", cfg, {"inequality.json"});
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"anisotropic MHD numerical laboratory"};
  app.require_subcommand(1);

  CommonArgs args[6];
  std::string from_dir;
  CLI::App* sub[6];
  sub[0] = app.add_subcommand("analyze-kernels", "tabulate per-mode symbols and kernels");
  sub[1] = app.add_subcommand("audit-bounds", "calibrate and validate subdomain decay bounds");
  sub[2] = app.add_subcommand("propagate-linear", "exact linear evolution and decay-rate fits");
  sub[3] = app.add_subcommand("solve", "nonlinear time integration with diagnostics");
  sub[4] = app.add_subcommand("energies", "weighted energy functionals from a trajectory");
  sub[5] = app.add_subcommand("inequality-suite", "sampling checks of the inequality toolbox");
  for (int i = 0; i < 6; ++i) add_common(sub[i], args[i]);
  sub[4]->add_option("--from", from_dir, "read diagnostics/steps from this run directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (sub[0]->parsed()) return cmd_analyze_kernels(*sub[0], args[0]);
    if (sub[1]->parsed()) return cmd_audit_bounds(*sub[1], args[1]);
    if (sub[2]->parsed()) return cmd_propagate_linear(*sub[2], args[2]);
    if (sub[3]->parsed()) return cmd_solve(*sub[3], args[3]);
    if (sub[4]->parsed()) return cmd_energies(*sub[4], args[4], from_dir);
    if (sub[5]->parsed()) return cmd_inequality_suite(*sub[5], args[5]);
  } catch (const std::exception& e) {
    Json err;
    err["error"] = {{"type", "runtime"}, {"message", e.what()}};
    std::fputs(dump_json(err).c_str(), stdout);
    return 1;
  }
  return 0;
}
