// Acceptance harness: one pass/fail line per criterion, tolerances pinned
// below. Run without arguments for the full battery, or --only N for a single
// criterion. Exit status 0 iff every executed criterion passes.

#include "anisomhd/bound_audit.hpp"
#include "anisomhd/config.hpp"
#include "anisomhd/energy.hpp"
#include "anisomhd/inequality.hpp"
#include "anisomhd/kernel.hpp"
#include "anisomhd/propagator.hpp"
#include "anisomhd/random_fields.hpp"
#include "anisomhd/solver.hpp"
#include "anisomhd/transform.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

using namespace anisomhd;

namespace {

constexpr double kPi = 3.14159265358979323846;

std::string fmt(const char* f, ...) {
  char buf[640];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

struct Criterion {
  int id = 0;
  std::string title;
  struct Line {
    bool gating;
    bool ok;
    std::string text;
  };
  std::vector<Line> lines;
  double seconds = 0;

  void gate(bool ok, std::string text) { lines.push_back({true, ok, std::move(text)}); }
  void note(std::string text) { lines.push_back({false, true, std::move(text)}); }
  bool pass() const {
    for (const auto& l : lines)
      if (l.gating && !l.ok) return false;
    return true;
  }
};

// ---- 2x2 propagator helpers -------------------------------------------------

struct Mat2 {
  Cplx a11, a12, a21, a22;
};

Mat2 propagator_matrix(const KernelMatrix& k) { return {k.Q1, k.Q2, k.Q2, k.Q3}; }

Mat2 mul(const Mat2& x, const Mat2& y) {
  return {x.a11 * y.a11 + x.a12 * y.a21, x.a11 * y.a12 + x.a12 * y.a22,
          x.a21 * y.a11 + x.a22 * y.a21, x.a21 * y.a12 + x.a22 * y.a22};
}

double max_abs(const Mat2& m) {
  return std::max(std::max(std::abs(m.a11), std::abs(m.a12)),
                  std::max(std::abs(m.a21), std::abs(m.a22)));
}

double max_diff(const Mat2& x, const Mat2& y) {
  return std::max(std::max(std::abs(x.a11 - y.a11), std::abs(x.a12 - y.a12)),
                  std::max(std::abs(x.a21 - y.a21), std::abs(x.a22 - y.a22)));
}

double log_uniform(Rng& rng, double lo, double hi) {
  return lo * std::pow(hi / lo, rng.uniform());
}

std::array<double, 3> sample_xi(Rng& rng, double lo, double hi) {
  std::array<double, 3> xi;
  for (double& c : xi) {
    c = log_uniform(rng, lo, hi);
    if (rng.uniform() < 0.5) c = -c;
  }
  return xi;
}

// ---- field helpers ----------------------------------------------------------

FieldPair scaled_pair(const FieldPair& p, double s) {
  FieldPair q = p;
  for (int c = 0; c < 3; ++c) {
    q.u.c[c] *= s;
    q.b.c[c] *= s;
  }
  return q;
}

double l2_diff(const FieldPair& x, const FieldPair& y) {
  double s = 0;
  for (int c = 0; c < 3; ++c) {
    s += (x.u.c[c] - y.u.c[c]).abs2().sum();
    s += (x.b.c[c] - y.b.c[c]).abs2().sum();
  }
  return std::sqrt(s);
}

double flat_l2(const FieldPair& x) {
  double s = 0;
  for (int c = 0; c < 3; ++c) s += x.u.c[c].abs2().sum() + x.b.c[c].abs2().sum();
  return std::sqrt(s);
}

// Exact mode-by-mode evolution of a spectral pair under the 2x2 kernel,
// applied componentwise to (u_j, b_j).
FieldPair linear_evolve(const FieldPair& spectral, const PhysParams& par, double t) {
  if (spectral.u.rep != Rep::Spectral) throw std::invalid_argument("linear_evolve: spectral rep");
  const SpectralGrid& g = spectral.u.grid;
  FieldPair out = spectral;
  out.time = spectral.time + t;
  for (int i3 = 0; i3 < g.n3; ++i3)
    for (int i2 = 0; i2 < g.n2; ++i2)
      for (int i1 = 0; i1 < g.n1; ++i1) {
        const ModeSymbol sym = mode_symbol(par, {g.k1[i1], g.k2[i2], g.k3[i3]});
        const KernelMatrix k = kernel_matrix(sym, t);
        const std::size_t n = g.idx(i1, i2, i3);
        for (int c = 0; c < 3; ++c) {
          const Cplx u = spectral.u.c[c][n], b = spectral.b.c[c][n];
          out.u.c[c][n] = k.Q1 * u + k.Q2 * b;
          out.b.c[c][n] = k.Q2 * u + k.Q3 * b;
        }
      }
  return out;
}

double lsq_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = double(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

FieldPair seeded_pair(int n, double band, double delta, std::uint64_t seed) {
  const SpectralGrid g = make_grid(n, n, n, 1.0);
  Rng rng(seed);
  return scaled_pair(random_band_pair(g, band, rng, true), delta);
}

const SubdomainReport& by_label(const std::vector<SubdomainReport>& reps, const char* label) {
  for (const auto& r : reps)
    if (r.label == label) return r;
  throw std::logic_error("label missing");
}

// ---- criteria ---------------------------------------------------------------

Criterion criterion1() {
  Criterion c{1, "mode propagator: K(0) = I and the semigroup identity"};
  const int n_samples = 10000;
  Rng rng(11);
  double worst_id = 0, worst_semi = 0;
  for (int s = 0; s < n_samples; ++s) {
    std::array<double, 3> xi = sample_xi(rng, 1e-2, 1e2);
    if (s % 10 == 3) xi[s % 3] = 0.0;  // exercise the axis degeneracies
    const PhysParams par{log_uniform(rng, 0.1, 10.0), log_uniform(rng, 0.1, 10.0)};
    const ModeSymbol sym = mode_symbol(par, xi);

    const KernelMatrix k0 = kernel_matrix(sym, 0.0);
    worst_id = std::max(worst_id, max_diff(propagator_matrix(k0), Mat2{1, 0, 0, 1}));

    const double t = 5.0 * (1.0 - rng.uniform());
    const double u = 5.0 * (1.0 - rng.uniform());
    const Mat2 mt = propagator_matrix(kernel_matrix(sym, t));
    const Mat2 ms = propagator_matrix(kernel_matrix(sym, u));
    const Mat2 mts = propagator_matrix(kernel_matrix(sym, t + u));
    const double rel = max_diff(mul(mt, ms), mts) / std::max(max_abs(mts), 1e-250);
    worst_semi = std::max(worst_semi, rel);
  }
  c.gate(worst_id <= 1e-12,
         fmt("max |K(0) - I| over %d draws of (xi, mu, eta): %.3e  (tol 1e-12 absolute)",
             n_samples, worst_id));
  c.gate(worst_semi <= 1e-8,
         fmt("max |K(t)K(s) - K(t+s)| / |K(t+s)| for t,s in (0,5]: %.3e  (tol 1e-8 relative)",
             worst_semi));
  return c;
}

Criterion criterion2() {
  Criterion c{2, "eigenvalue structure: Vieta residuals and two exact spectra"};
  const int n_samples = 100000;
  Rng rng(13);
  double worst_sum = 0, worst_prod = 0;
  for (int s = 0; s < n_samples; ++s) {
    const PhysParams par{log_uniform(rng, 0.1, 10.0), log_uniform(rng, 0.1, 10.0)};
    const ModeSymbol sym = mode_symbol(par, sample_xi(rng, 1e-2, 1e2));
    worst_sum = std::max(worst_sum, std::abs(sym.lambda1 + sym.lambda2 + sym.S) / sym.S);
    worst_prod =
        std::max(worst_prod, std::abs(sym.lambda1 * sym.lambda2 - sym.P) / std::max(sym.P, 1e-300));
  }
  c.gate(worst_sum <= 1e-10 && worst_prod <= 1e-10,
         fmt("Vieta residuals over %d draws: |l1+l2+S|/S = %.3e, |l1 l2 - P|/P = %.3e  "
             "(tol 1e-10 relative)",
             n_samples, worst_sum, worst_prod));

  const PhysParams unit{1.0, 1.0};
  const ModeSymbol dbl = mode_symbol(unit, {1.0, 0.0, 0.0});
  const KernelMatrix kd = kernel_matrix(dbl, 1.0);
  const double err_dbl =
      std::max(std::abs(dbl.lambda1 - Cplx(-1.0, 0.0)), std::abs(dbl.lambda2 - Cplx(-1.0, 0.0)));
  c.gate(err_dbl <= 1e-12 && kd.degenerate,
         fmt("xi = (1,0,0), mu = eta = 1: double root, max |lambda - (-1)| = %.3e  (tol 1e-12)",
             err_dbl));
  c.gate(std::abs(kd.G1 - Cplx(std::exp(-1.0), 0.0)) <= 1e-12,
         fmt("confluent branch at the double root: |G1(1) - 1/e| = %.3e  (tol 1e-12)",
             std::abs(kd.G1 - Cplx(std::exp(-1.0), 0.0))));

  const ModeSymbol osc = mode_symbol(unit, {0.0, 1.0, 0.0});
  Cplx lo = osc.lambda1, hi = osc.lambda2;
  if (lo.imag() > hi.imag()) std::swap(lo, hi);
  const double root3 = std::sqrt(3.0);
  const double err_pair = std::max(std::abs(lo - Cplx(-0.5, -0.5 * root3)),
                                   std::abs(hi - Cplx(-0.5, 0.5 * root3)));
  c.gate(err_pair <= 1e-12,
         fmt("xi = (0,1,0), mu = eta = 1: lambda = (-1 +- i sqrt 3)/2, max error = %.3e  "
             "(tol 1e-12)",
             err_pair));
  return c;
}

Criterion criterion3() {
  Criterion c{3, "subdomain decay-bound audit with calibrated constants"};
  const auto t0 = std::chrono::steady_clock::now();
  AuditOptions opt;
  opt.n_train = 2000;
  opt.n_validate = 1000;
  opt.t_count = 64;
  opt.t_min = 1e-2;
  opt.t_max = 50.0;
  opt.seed = 1;

  // mu != eta populates all four subdomains (equal viscosities provably leave
  // A22 empty, see the note below).
  const PhysParams skew{4.0, 1.0};
  const auto reps = audit_bounds(skew, opt);
  bool all = true;
  for (const char* label : {"A1", "A21", "A22", "A23"}) {
    const auto& r = by_label(reps, label);
    const bool ok = r.covered && r.n_validate >= 1000 && r.pass;
    all = all && ok;
    c.gate(ok, fmt("%-3s at mu = 4, eta = 1: %d validation modes x 65 times in [0, 50], "
                   "max log bound-ratio %+.4f  (gate <= 0)",
                   label, r.n_validate, r.max_log_ratio));
  }

  AuditOptions weak = opt;
  weak.drop_second_term_a23 = true;
  const auto& bad = by_label(audit_bounds(skew, weak), "A23");
  c.gate(!bad.pass, fmt("counterexample: dropping the second A23 comparison term fails validation "
                        "(max log ratio %+.3e at xi = (%.3f, %.3f, %.3f))",
                        bad.max_log_ratio, bad.worst_xi[0], bad.worst_xi[1], bad.worst_xi[2]));

  const auto equal = audit_bounds(PhysParams{1.0, 1.0}, opt);
  c.gate(!by_label(equal, "A22").covered && by_label(equal, "A1").pass &&
             by_label(equal, "A21").pass && by_label(equal, "A23").pass,
         "equal viscosities: A22 is empty (3S^2 <= 16P wherever |xi1| >= r |xi2|) and the "
         "remaining subdomains pass");

  c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  c.gate(c.seconds < 60.0, fmt("runtime %.1f s  (gate < 60 s)", c.seconds));
  return c;
}

Criterion criterion4() {
  Criterion c{4, "linear decay exponents from the quadrature propagator"};
  const auto t0 = std::chrono::steady_clock::now();
  const PhysParams par{1.0, 1.0};
  const InitialDataSpec spec;  // divergence-free projected Gaussian, default amplitudes
  const std::vector<double> times = log_spaced_times(10.0, 1000.0, 25);

  // m = 1024 is the resolved setting: the fitted exponents are stable to
  // 0.5% under node-spacing refinement (checked below), while m = 128 leaves
  // h = 0.125 coarser than the surviving spectral width near t = 10^3 and
  // fails its own refinement invariant; it is reported for the record.
  const QuadratureGrid q1024 = make_quadrature(8.0, 1024);
  const NormSeries s1024 = propagate_linear(par, spec, q1024, times);

  struct Gate {
    const char* key;
    double target, tol;  // tol < 0: one-sided ceiling at target
  };
  const Gate gates[] = {{"pair_id", -0.50, 0.05},
                        {"pair_gradh", -1.00, 0.07},
                        {"pair_d3", -0.50, 0.07},
                        {"pair_d1gradh", -1.30, -1.0},
                        {"pair_d2gradh", -1.30, -1.0}};
  std::map<std::string, double> slope1024;
  for (const Gate& g : gates) {
    const DecayFit f = fit_decay(g.key, times, s1024.series.at(g.key), 10.0, 1000.0);
    slope1024[g.key] = f.exponent;
    const bool slope_ok =
        g.tol > 0 ? std::abs(f.exponent - g.target) <= g.tol : f.exponent <= g.target;
    const std::string window = g.tol > 0 ? fmt("%+.2f +- %.2f", g.target, g.tol)
                                         : fmt("<= %+.2f", g.target);
    c.gate(slope_ok && f.r2 >= 0.99,
           fmt("%-13s exponent %+.4f (gate %s), R^2 = %.6f (gate >= 0.99)", g.key, f.exponent,
               window.c_str(), f.r2));
  }

  // Plancherel oracle at t = 0: default Gaussian amplitudes give
  // |(u,b)hat|^2 = 2.625 e^{-|xi|^2} before projection, and the isotropic
  // Leray projector keeps exactly 2/3 of that mass.
  const NormSeries at0 = propagate_linear(par, spec, q1024, {0.0});
  const double measured0 = at0.series.at("pair_id").front();
  const double exact0 = std::sqrt((2.0 / 3.0) * 2.625 * std::pow(kPi, 1.5));
  c.gate(std::abs(measured0 - exact0) <= 0.01 * exact0,
         fmt("t = 0 norm vs closed form: %.6f vs %.6f  (tol 1%%)", measured0, exact0));

  const QuadratureGrid q2048 = make_quadrature(8.0, 2048);
  const NormSeries s2048 = propagate_linear(par, spec, q2048, times);
  double worst_shift = 0;
  for (const Gate& g : gates) {
    const DecayFit f = fit_decay(g.key, times, s2048.series.at(g.key), 10.0, 1000.0);
    worst_shift = std::max(worst_shift,
                           std::abs(f.exponent - slope1024[g.key]) / std::abs(slope1024[g.key]));
  }
  c.gate(worst_shift <= 5e-3,
         fmt("node-spacing refinement m = 1024 -> 2048 moves exponents by %.4f%%  (gate 0.5%%)",
             100.0 * worst_shift));

  const QuadratureGrid q128 = make_quadrature(8.0, 128);
  const NormSeries s128 = propagate_linear(par, spec, q128, times);
  const DecayFit f128 = fit_decay("pair_id", times, s128.series.at("pair_id"), 10.0, 1000.0);
  c.note(fmt("for the record, m = 128 measures pair_id exponent %+.4f with R^2 = %.4f: "
             "under-resolved and unstable under refinement, hence the m = 1024 gate above",
             f128.exponent, f128.r2));

  c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  c.gate(c.seconds < 600.0, fmt("runtime %.1f s  (gate < 600 s)", c.seconds));
  return c;
}

Criterion criterion5() {
  Criterion c{5, "nonlinear stability run at delta = 1e-3 on a 48^3 torus"};
  const auto t0 = std::chrono::steady_clock::now();
  SolverConfig cfg;
  cfg.n1 = cfg.n2 = cfg.n3 = 48;
  cfg.dt = 1e-2;
  cfg.T = 50.0;
  cfg.output_cadence = 10;
  const FieldPair initial = seeded_pair(48, 4.0, 1e-3, 1);

  try {
    const Trajectory traj = run_solver(cfg, initial);
    c.gate(true, fmt("completed %ld steps with no blow-up guard trip", traj.n_steps));

    double sup_h3 = 0, max_div = 0;
    for (const auto& r : traj.records) {
      sup_h3 = std::max(sup_h3, std::sqrt(r.sem.pair_h3_sq));
      max_div = std::max(max_div, std::max(r.div_u, r.div_b));
    }
    c.gate(sup_h3 <= 2.0 * traj.initial_pair_h3,
           fmt("sup_t H^3 = %.6e vs initial %.6e: ratio %.4f  (gate <= 2)", sup_h3,
               traj.initial_pair_h3, sup_h3 / traj.initial_pair_h3));
    c.gate(max_div <= 1e-10 * traj.initial_pair_h3,
           fmt("max mode divergence %.3e  (gate <= 1e-10 x initial H^3 = %.3e)", max_div,
               1e-10 * traj.initial_pair_h3));

    const IdentityResiduals res = energy_identity_residuals(traj);
    double worst_trap = 0, worst_exact = 0;
    for (std::size_t i = 0; i < res.trapezoid.size(); ++i) {
      worst_trap = std::max(worst_trap, res.trapezoid[i]);
      worst_exact = std::max(worst_exact, res.exact_linear[i]);
    }
    c.gate(worst_trap <= 1e-6 * res.e0,
           fmt("energy-identity residual, trapezoid on step diagnostics: max %.3e = %.3e x e0 "
               "per output interval  (gate <= 1e-6 x e0)",
               worst_trap, worst_trap / res.e0));
    c.note("the trapezoid rule on dt = 1e-2 step diagnostics carries O((r dt)^2 / 12) ~ 3e-3 "
           "relative error for the fastest seeded modes (r ~ 64), so this gate is not "
           "attainable by any correct integrator at this step size");
    c.note(fmt("the same identity closed with the exact per-step linear dissipation integral: "
               "max %.3e = %.3e x e0",
               worst_exact, worst_exact / res.e0));
  } catch (const std::exception& e) {
    c.gate(false, fmt("solver aborted: %s", e.what()));
  }

  c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  c.gate(c.seconds < 900.0, fmt("runtime %.1f s  (gate < 900 s)", c.seconds));
  return c;
}

Criterion criterion6() {
  Criterion c{6, "nonlinear deviation from the kernel evolution scales as delta^2"};
  SolverConfig cfg;
  cfg.n1 = cfg.n2 = cfg.n3 = 32;
  cfg.dt = 1e-2;
  cfg.T = 1.0;
  cfg.output_cadence = 100;
  const FieldPair base = seeded_pair(32, 4.0, 1.0, 1);

  std::map<double, double> dev;
  for (double delta : {1e-2, 1e-3}) {
    const FieldPair initial = scaled_pair(base, delta);
    const Trajectory traj = run_solver(cfg, initial);
    const FieldPair lin = linear_evolve(initial, cfg.params, cfg.T);
    dev[delta] = l2_diff(traj.final_spectral, lin);
    c.note(fmt("delta = %.0e: |nonlinear - kernel| = %.6e at T = 1 (relative to the kernel "
               "solution: %.3e)",
               delta, dev[delta], dev[delta] / flat_l2(lin)));
  }
  const double ratio = dev[1e-2] / dev[1e-3];
  c.gate(ratio >= 30.0 && ratio <= 300.0,
         fmt("deviation ratio across one decade of delta: %.2f  (ideal 100, gate [30, 300])",
             ratio));
  return c;
}

Criterion criterion7() {
  Criterion c{7, "weighted energy functional bounded by the data norm, single constant"};
  SolverConfig cfg;
  cfg.n1 = cfg.n2 = cfg.n3 = 32;
  cfg.dt = 1e-2;
  cfg.T = 50.0;
  cfg.output_cadence = 10;
  const SpectralGrid g = make_grid(32, 32, 32, 1.0);
  const FourierTransformer ft(g);
  const FieldPair base = seeded_pair(32, 4.0, 1.0, 1);

  // C is calibrated once at delta = 1e-2 (5% headroom pinned here) and must
  // cover the smaller-amplitude runs untouched.
  const double deltas[] = {1e-2, 1e-3, 1e-4};
  double C = 0;
  for (double delta : deltas) {
    const FieldPair initial = scaled_pair(base, delta);
    const Trajectory traj = run_solver(cfg, initial);
    const EnergyLedger led = energy_ledger(traj, 1.0 / 36.0, 1e-2);
    const double F = initial_data_norms(ft.inverse(initial), ft).F;
    const double max_e0 = *std::max_element(led.E0.begin(), led.E0.end());
    if (delta == 1e-2) {
      C = 1.05 * max_e0 / F;
      c.note(fmt("calibration at delta = 1e-2: max_t E0 / F = %.6f, C = %.6f", max_e0 / F, C));
    }
    c.gate(max_e0 <= C * F,
           fmt("delta = %.0e: max_t E0 = %.6e vs C F = %.6e  (ratio %.4f, gate <= 1)", delta,
               max_e0, C * F, max_e0 / (C * F)));
  }
  return c;
}

Criterion criterion8() {
  Criterion c{8, "interpolation-inequality suite saturates on seeded fields"};
  const auto t0 = std::chrono::steady_clock::now();

  const SuiteReport rep = run_inequality_suite(1, 1000, 32, 8.0);
  for (const auto& id : rep.ids) {
    const bool ok = id.saturation_ok && id.valid;
    c.gate(ok, fmt("%-4s %5d cases: max ratio %.4f, first-100 max %.4f%s", id.id.c_str(),
                   id.n_cases, id.max_ratio, id.max_ratio_100,
                   id.id == "f1d" ? " (sqrt-2 constant holds on every sample)" : ""));
  }
  c.gate(rep.ids.size() == 5, fmt("%zu inequality families exercised  (expect 5)",
                                  rep.ids.size()));

  // Exact line-inequality oracle: a centered Gaussian on a box of edge 12 has
  // max |f| = 1 on the grid and sqrt(2) ||f||^{1/2} ||f'||^{1/2} = (2 pi)^{1/4}.
  const SpectralGrid g = make_grid(64, 4, 4, 12.0 / kTau);
  const FourierTransformer ft(g);
  ScalarField f = make_scalar(g, Rep::Physical);
  for (int i3 = 0; i3 < g.n3; ++i3)
    for (int i2 = 0; i2 < g.n2; ++i2)
      for (int i1 = 0; i1 < g.n1; ++i1) {
        const double x = i1 * g.spacing(1) - 6.0;
        f.v[g.idx(i1, i2, i3)] = std::exp(-0.5 * x * x);
      }
  const InequalityCase gauss = product_check(f, f, "f1d", {1, 0, 0}, ft);
  const double rhs_exact = std::pow(2.0 * kPi, 0.25);
  c.gate(std::abs(gauss.lhs - 1.0) <= 1e-12 &&
             std::abs(gauss.rhs_factor_product - rhs_exact) <= 1e-2 * rhs_exact,
         fmt("Gaussian line oracle: lhs = %.12f (exact 1), rhs = %.6f vs (2 pi)^(1/4) = %.6f",
             gauss.lhs, gauss.rhs_factor_product, rhs_exact));

  c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  c.gate(c.seconds < 300.0, fmt("runtime %.1f s  (gate < 300 s)", c.seconds));
  return c;
}

Criterion criterion9() {
  Criterion c{9, "fractional heat decay and convolution-bound oracles"};
  for (const auto& hc : default_config().heat.cases) {
    const HeatDecayResult r =
        heat_decay_check(hc.alpha, hc.beta, hc.p, hc.q, hc.d, hc.profile, hc.param, 0.03);
    c.gate(r.pass, fmt("heat alpha=%g beta=%g p=%g q=%g d=%d %s: fitted %+.4f vs predicted "
                       "%+.4f  (tol 0.03)",
                       r.alpha, r.beta, r.p, r.q, r.d, r.profile.c_str(), r.fit.exponent,
                       r.predicted));
  }
  const std::vector<double> grid = log_spaced_times(10.0, 1000.0, 25);
  for (const auto& cc : default_config().convolution.cases) {
    const ConvolutionResult r = convolution_bound_check(cc.s1, cc.s2, grid);
    c.gate(r.pass, fmt("convolution s1=%g s2=%g (branch %s): ratio early max %.4f, late max "
                       "%.4f  (gate: bounded)",
                       r.s1, r.s2, r.branch.c_str(), r.early_max, r.late_max));
  }
  return c;
}

Criterion criterion10() {
  Criterion c{10, "integrator convergence order on a fixed smooth problem"};
  const FieldPair initial = seeded_pair(16, 2.0, 0.1, 1);
  SolverConfig cfg;
  cfg.n1 = cfg.n2 = cfg.n3 = 16;
  cfg.T = 0.5;
  cfg.output_cadence = 1000000;

  cfg.integrator = Integrator::IFRK4;
  cfg.dt = 0.5 / 256;
  const FieldPair ref = run_solver(cfg, initial).final_spectral;

  const double dts[] = {1.0 / 16, 1.0 / 32, 1.0 / 64, 1.0 / 128};
  for (Integrator integ : {Integrator::ETDRK2, Integrator::IFRK4}) {
    std::vector<double> lx, ly;
    for (double dt : dts) {
      cfg.integrator = integ;
      cfg.dt = dt;
      const double err = l2_diff(run_solver(cfg, initial).final_spectral, ref);
      lx.push_back(std::log(dt));
      ly.push_back(std::log(err));
    }
    const double slope = lsq_slope(lx, ly);
    const bool is_etd = integ == Integrator::ETDRK2;
    const double gate = is_etd ? 1.9 : 3.8;
    c.gate(slope >= gate,
           fmt("%s global-error slope %.3f over dt = 1/16 .. 1/128  (gate >= %.1f); "
               "errors %.3e .. %.3e",
               is_etd ? "ETDRK2" : "IFRK4 ", slope, gate, std::exp(ly.front()),
               std::exp(ly.back())));
  }
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--only" && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else if (a.rfind("--only=", 0) == 0) {
      only = std::atoi(a.c_str() + 7);
    } else {
      std::fprintf(stderr, "usage: acceptance [--only N]\n");
      return 2;
    }
  }

  const std::function<Criterion()> table[] = {criterion1, criterion2, criterion3, criterion4,
                                              criterion5, criterion6, criterion7, criterion8,
                                              criterion9, criterion10};
  int ran = 0, passed = 0;
  for (int id = 1; id <= 10; ++id) {
    if (only != 0 && id != only) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Criterion c;
    try {
      c = table[id - 1]();
    } catch (const std::exception& e) {
      c.id = id;
      c.title = "criterion body threw";
      c.gate(false, fmt("unexpected exception: %s", e.what()));
    }
    if (c.seconds == 0)
      c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    ++ran;
    passed += c.pass() ? 1 : 0;
    std::printf("[%s] criterion %2d: %s  (%.1f s)\n", c.pass() ? "PASS" : "FAIL", id,
                c.title.c_str(), c.seconds);
    for (const auto& l : c.lines)
      std::printf("         %-4s %s\n", l.gating ? (l.ok ? "ok" : "FAIL") : "note",
                  l.text.c_str());
    std::fflush(stdout);
  }
  std::printf("acceptance: %d/%d criteria passed\n", passed, ran);
  return passed == ran ? 0 : 1;
}
