#include "anisomhd/bound_audit.hpp"

#include "anisomhd/random_fields.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace anisomhd {

AuditConstants derived_constants(const PhysParams& par, Subdomain label, double r) {
  const double mu = par.mu, eta = par.eta;
  const double me = mu * eta / (mu + eta);
  const double rr = r * r;
  AuditConstants c;
  switch (label) {
    case Subdomain::A1:
      c.c0 = eta / 16.0;
      break;
    case Subdomain::A21:
      c.c1 = 0.5 * std::min(0.75 * eta, me / (1.0 + rr));
      break;
    case Subdomain::A22:
      c.c1 = 0.5 * std::min(0.75 * eta, me * rr / (1.0 + rr));
      break;
    case Subdomain::A23:
      c.c1 = 0.5 * 0.75 * eta;
      c.c2 = 0.5 * me;
      c.c3 = 0.5 * rr / ((1.0 + rr) * (mu + eta));
      break;
  }
  return c;
}

namespace {

double logsumexp2(double a, double b) {
  const double m = std::max(a, b);
  if (m == -std::numeric_limits<double>::infinity()) return m;
  return m + std::log(std::exp(a - m) + std::exp(b - m));
}

double kernel_log_max(const ModeSymbol& sym, double t) {
  const KernelMatrix k = kernel_matrix(sym, t);
  const double m = std::max({std::abs(k.Q1), std::abs(k.Q2), std::abs(k.Q3)});
  return m > 0 ? std::log(m) : -std::numeric_limits<double>::infinity();
}

}  // namespace

double bound_log_form(const ModeSymbol& sym, Subdomain label, const AuditConstants& c,
                      double t, bool drop_second_term, bool drop_c3) {
  const double hh = sym.xi[0] * sym.xi[0] + sym.xi[1] * sym.xi[1];
  switch (label) {
    case Subdomain::A1:
      return -c.c0 * hh * t;
    case Subdomain::A21:
    case Subdomain::A22:
      return -c.c1 * hh * t;
    case Subdomain::A23: {
      const double first = -c.c1 * hh * t;
      if (drop_second_term) return first;
      const double second = -c.c2 * sym.xi[0] * sym.xi[0] * t - (drop_c3 ? 0.0 : c.c3 * t);
      return logsumexp2(first, second);
    }
  }
  return 0.0;
}

namespace {

struct Sample {
  std::array<double, 3> xi;
  ModeSymbol sym;
};

std::vector<double> audit_times(const AuditOptions& opt) {
  std::vector<double> ts;
  ts.push_back(0.0);
  const double l0 = std::log(opt.t_min), l1 = std::log(opt.t_max);
  for (int i = 0; i < opt.t_count; ++i)
    ts.push_back(std::exp(l0 + (l1 - l0) * double(i) / double(opt.t_count - 1)));
  return ts;
}

std::vector<std::array<double, 3>> hard_points(const AuditOptions& opt) {
  std::vector<std::array<double, 3>> pts;
  const double l0 = std::log10(opt.xi_min), l1 = std::log10(opt.xi_max);
  for (double e = std::ceil(l0); e <= std::floor(l1) + 0.5; e += 1.0) {
    const double rho = std::pow(10.0, e);
    pts.push_back({rho, 0.0, 0.0});
    pts.push_back({0.0, rho, 0.0});
    pts.push_back({0.0, 0.0, rho});
    pts.push_back({rho, rho, 0.0});
    pts.push_back({rho, rho, rho});
    pts.push_back({rho, rho / opt.r, 0.0});
    pts.push_back({rho / opt.r, rho, 0.0});
    pts.push_back({0.0, rho, rho});
  }
  return pts;
}

int label_index(Subdomain s) { return int(s); }

}  // namespace

std::vector<SubdomainReport> audit_bounds(const PhysParams& par, const AuditOptions& opt) {
  if (opt.n_train < 1 || opt.n_validate < 1)
    throw std::invalid_argument("audit_bounds: sample counts must be positive");
  if (!(opt.xi_min > 0) || !(opt.xi_max > opt.xi_min))
    throw std::invalid_argument("audit_bounds: bad xi magnitude range");
  if (opt.t_count < 2 || !(opt.t_min > 0) || !(opt.t_max > opt.t_min))
    throw std::invalid_argument("audit_bounds: bad time grid");

  const Subdomain labels[4] = {Subdomain::A1, Subdomain::A21, Subdomain::A22, Subdomain::A23};
  std::array<std::vector<Sample>, 4> train, validate;

  Rng rng(opt.seed);
  const double llo = std::log(opt.xi_min), lhi = std::log(opt.xi_max);
  const long target = long(opt.n_train + opt.n_validate);
  const long max_draws = 400L * target;
  long accepted[4] = {0, 0, 0, 0};
  for (long draw = 0; draw < max_draws; ++draw) {
    bool all_full = true;
    for (int i = 0; i < 4; ++i) all_full = all_full && accepted[i] >= target;
    if (all_full) break;
    const double rho = std::exp(llo + (lhi - llo) * rng.uniform());
    double d[3] = {rng.gaussian(), rng.gaussian(), rng.gaussian()};
    const int fam = int(draw % 3);
    if (fam == 1) d[1] *= std::pow(10.0, -4.0 * rng.uniform());
    if (fam == 2) d[0] *= std::pow(10.0, -4.0 * rng.uniform());
    const double len = std::sqrt(d[0] * d[0] + d[1] * d[1] + d[2] * d[2]);
    if (len == 0) continue;
    const std::array<double, 3> xi = {rho * d[0] / len, rho * d[1] / len, rho * d[2] / len};
    Sample s{xi, mode_symbol(par, xi)};
    const int li = label_index(classify_subdomain(s.sym, opt.r));
    if (accepted[li] >= target) continue;
    if (accepted[li] < opt.n_train)
      train[li].push_back(s);
    else
      validate[li].push_back(s);
    ++accepted[li];
  }
  for (const auto& xi : hard_points(opt)) {
    Sample s{xi, mode_symbol(par, xi)};
    const int li = label_index(classify_subdomain(s.sym, opt.r));
    train[li].push_back(s);
    validate[li].push_back(s);
  }

  const std::vector<double> ts = audit_times(opt);
  std::vector<SubdomainReport> reports;
  for (int li = 0; li < 4; ++li) {
    const Subdomain label = labels[li];
    SubdomainReport rep;
    rep.label = subdomain_name(label);
    rep.n_train = int(train[li].size());
    rep.n_validate = int(validate[li].size());
    rep.covered = rep.n_train > 0 && rep.n_validate > 0;
    if (!rep.covered) {
      reports.push_back(rep);
      continue;
    }

    AuditConstants c = derived_constants(par, label, opt.r);
    const auto it = opt.constant_overrides.find(rep.label);
    const bool have_override = it != opt.constant_overrides.end();
    if (have_override) c = it->second;

    const double neg_inf = -std::numeric_limits<double>::infinity();
    if (!have_override) {
      double worst = neg_inf;
      for (const Sample& s : train[li])
        for (const double t : ts) {
          const double lk = kernel_log_max(s.sym, t);
          if (lk == neg_inf) continue;
          worst = std::max(worst, lk - bound_log_form(s.sym, label, c, t));
        }
      rep.max_train_log_ratio = worst;
      c.C = std::max(1.0, opt.safety * std::exp(worst));
    }

    const double logC = std::log(c.C);
    double worst = neg_inf;
    for (const Sample& s : validate[li])
      for (const double t : ts) {
        const double lk = kernel_log_max(s.sym, t);
        if (lk == neg_inf) continue;
        const double lf = bound_log_form(s.sym, label, c, t, opt.drop_second_term_a23,
                                         opt.drop_c3_only_a23);
        const double lr = lk - lf - logC;
        if (lr > worst) {
          worst = lr;
          rep.worst_xi = s.xi;
          rep.worst_t = t;
        }
      }
    rep.constants = c;
    rep.max_log_ratio = worst;
    rep.max_ratio = std::exp(std::min(worst, 700.0));
    rep.pass = std::isfinite(c.C) && worst <= 0.0;
    reports.push_back(rep);
  }
  return reports;
}

}  // namespace anisomhd
