#include "anisomhd/inequality.hpp"

#include "anisomhd/operators.hpp"
#include "anisomhd/random_fields.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

namespace anisomhd {
namespace {

void require_physical(const ScalarField& f, const char* who) {
  if (f.rep != Rep::Physical)
    throw std::invalid_argument(std::string(who) + ": fields must be physical");
}

void require_axis(int a, const char* who) {
  if (a < 1 || a > 3) throw std::invalid_argument(std::string(who) + ": axis must be 1, 2 or 3");
}

double norm_of(const ScalarField& spec) { return l2_norm(spec); }

double dnorm(const ScalarField& spec, int axis) { return l2_norm(derivative(spec, axis, 1)); }

double d2norm(const ScalarField& spec, int i, int j) {
  return l2_norm(derivative(derivative(spec, i, 1), j, 1));
}

double safe_ratio(double lhs, double rhs) {
  if (rhs > 0) return lhs / rhs;
  return lhs == 0 ? 0.0 : std::numeric_limits<double>::infinity();
}

double abs_triple_integral(const ScalarField& f, const ScalarField& g, const ScalarField& h) {
  const std::size_t n = f.grid.size();
  double s = 0;
  for (std::size_t i = 0; i < n; ++i)
    s += std::abs(f.v[i].real() * g.v[i].real() * h.v[i].real());
  return s * f.grid.cell_volume();
}

// --- adaptive Simpson -------------------------------------------------------

double adapt(const std::function<double(double)>& f, double a, double b, double fa, double fm,
             double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return adapt(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adapt(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

// Adaptive Simpson over [a, b] with uniform seed panels and a relative
// tolerance anchored to a coarse first pass.
double integrate(const std::function<double(double)>& f, double a, double b, double rel_tol,
                 int seed_panels) {
  if (!(b > a)) return 0.0;
  const double len = b - a;
  std::vector<double> xs(seed_panels + 1), fs(seed_panels + 1);
  for (int i = 0; i <= seed_panels; ++i) {
    xs[i] = a + len * i / seed_panels;
    fs[i] = f(xs[i]);
  }
  double coarse = 0;
  for (int i = 0; i < seed_panels; ++i) {
    const double m = 0.5 * (xs[i] + xs[i + 1]);
    coarse += (xs[i + 1] - xs[i]) / 6.0 * (fs[i] + 4.0 * f(m) + fs[i + 1]);
  }
  const double tol_abs = rel_tol * std::max(std::abs(coarse), 1e-300);
  double total = 0;
  for (int i = 0; i < seed_panels; ++i) {
    const double m = 0.5 * (xs[i] + xs[i + 1]);
    const double fm = f(m);
    const double whole = (xs[i + 1] - xs[i]) / 6.0 * (fs[i] + 4.0 * fm + fs[i + 1]);
    total += adapt(f, xs[i], xs[i + 1], fs[i], fm, fs[i + 1], whole,
                   tol_abs * (xs[i + 1] - xs[i]) / len, 48);
  }
  return total;
}

}  // namespace

InequalityCase triple_product_check(const ScalarField& f, const ScalarField& g,
                                    const ScalarField& h, const std::string& id,
                                    const std::array<int, 3>& axes,
                                    const FourierTransformer& ft) {
  require_physical(f, "triple_product_check");
  require_physical(g, "triple_product_check");
  require_physical(h, "triple_product_check");
  if (!f.grid.same_shape(g.grid) || !f.grid.same_shape(h.grid))
    throw std::invalid_argument("triple_product_check: grid mismatch");
  for (int a : axes) require_axis(a, "triple_product_check");

  InequalityCase c;
  c.id = id;
  c.axes = axes;
  c.lhs = abs_triple_integral(f, g, h);

  const ScalarField fs = ft.forward(f);
  const ScalarField gs = ft.forward(g);
  const ScalarField hs = ft.forward(h);

  if (id == "Ine1") {
    c.rhs_factor_product = std::sqrt(norm_of(fs) * dnorm(fs, axes[0])) *
                           std::sqrt(norm_of(gs) * dnorm(gs, axes[1])) *
                           std::sqrt(norm_of(hs) * dnorm(hs, axes[2]));
  } else if (id == "Ine2") {
    const int i = axes[0], j = axes[1], k = axes[2];
    if (i == j || j == k || i == k)
      throw std::invalid_argument("Ine2 needs three distinct axes");
    c.rhs_factor_product =
        std::pow(norm_of(fs) * dnorm(fs, i) * dnorm(fs, j) * d2norm(fs, i, j), 0.25) *
        std::sqrt(norm_of(gs) * dnorm(gs, k)) * norm_of(hs);
  } else {
    throw std::invalid_argument("triple_product_check: unknown id " + id);
  }
  c.ratio = safe_ratio(c.lhs, c.rhs_factor_product);
  return c;
}

InequalityCase product_check(const ScalarField& f, const ScalarField& g,
                             const std::string& variant, const std::array<int, 3>& axes,
                             const FourierTransformer& ft) {
  require_physical(f, "product_check");
  InequalityCase c;
  c.id = variant;
  c.axes = axes;

  if (variant == "f1d") {
    const int axis = axes[0];
    require_axis(axis, "product_check");
    const SpectralGrid& gr = f.grid;
    const ScalarField df = ft.inverse(derivative(ft.forward(f), axis, 1));
    const double hstep = gr.spacing(axis);

    int count = 0, stride = 0;
    if (axis == 1) { count = gr.n1; stride = 1; }
    if (axis == 2) { count = gr.n2; stride = gr.n1; }
    if (axis == 3) { count = gr.n3; stride = gr.n1 * gr.n2; }

    double best_ratio = 0, best_lhs = 0, best_rhs = 0;
    auto scan_line = [&](std::size_t base) {
      double mx = 0, s2 = 0, d2 = 0;
      for (int i = 0; i < count; ++i) {
        const double fv = f.v[base + std::size_t(i) * stride].real();
        const double dv = df.v[base + std::size_t(i) * stride].real();
        mx = std::max(mx, std::abs(fv));
        s2 += fv * fv;
        d2 += dv * dv;
      }
      const double rhs =
          std::sqrt(2.0) * std::pow(s2 * hstep, 0.25) * std::pow(d2 * hstep, 0.25);
      const double r = safe_ratio(mx, rhs);
      if (r > best_ratio || (best_ratio == 0 && best_lhs == 0)) {
        best_ratio = r;
        best_lhs = mx;
        best_rhs = rhs;
      }
    };
    if (axis == 1) {
      for (int i3 = 0; i3 < gr.n3; ++i3)
        for (int i2 = 0; i2 < gr.n2; ++i2) scan_line(gr.idx(0, i2, i3));
    } else if (axis == 2) {
      for (int i3 = 0; i3 < gr.n3; ++i3)
        for (int i1 = 0; i1 < gr.n1; ++i1) scan_line(gr.idx(i1, 0, i3));
    } else {
      for (int i2 = 0; i2 < gr.n2; ++i2)
        for (int i1 = 0; i1 < gr.n1; ++i1) scan_line(gr.idx(i1, i2, 0));
    }
    c.lhs = best_lhs;
    c.rhs_factor_product = best_rhs;
    c.ratio = best_ratio;
    return c;
  }

  require_physical(g, "product_check");
  if (!f.grid.same_shape(g.grid))
    throw std::invalid_argument("product_check: grid mismatch");

  ScalarField prod = make_scalar(f.grid, Rep::Physical);
  for (std::size_t i = 0; i < f.grid.size(); ++i)
    prod.v[i] = f.v[i].real() * g.v[i].real();

  const ScalarField fs = ft.forward(f);
  const ScalarField gs = ft.forward(g);

  if (variant == "Ine3") {
    const int i = axes[0], j = axes[1], k = axes[2];
    require_axis(i, "product_check");
    require_axis(j, "product_check");
    require_axis(k, "product_check");
    if (i == j || j == k || i == k)
      throw std::invalid_argument("Ine3 needs three distinct axes");
    c.lhs = l2_norm(prod);
    c.rhs_factor_product =
        std::pow(norm_of(fs) * dnorm(fs, i) * dnorm(fs, j) * d2norm(fs, i, j), 0.25) *
        std::sqrt(norm_of(gs) * dnorm(gs, k));
  } else if (variant == "fg") {
    c.axes = {3, 0, 0};
    c.lhs = mixed_norm_L2L1(prod);
    c.rhs_factor_product = std::sqrt(norm_of(fs) * dnorm(fs, 3)) * norm_of(gs);
  } else {
    throw std::invalid_argument("product_check: unknown variant " + variant);
  }
  c.ratio = safe_ratio(c.lhs, c.rhs_factor_product);
  return c;
}

HeatDecayResult heat_decay_check(double alpha, double beta, double p, double q, int d,
                                 const std::string& profile, double profile_param,
                                 double tol) {
  if (alpha < 0) throw std::invalid_argument("heat_decay_check: alpha must be >= 0");
  if (beta <= 0) throw std::invalid_argument("heat_decay_check: beta must be > 0");
  if (d != 1 && d != 2) throw std::invalid_argument("heat_decay_check: d must be 1 or 2");
  if (p < 1 || p > q) throw std::invalid_argument("heat_decay_check: need 1 <= p <= q");
  if (q != 2)
    throw std::invalid_argument("heat_decay_check: only q = 2 is measurable by quadrature");
  if (profile != "gaussian" && profile != "lowpass")
    throw std::invalid_argument("heat_decay_check: unknown profile " + profile);
  if (profile_param <= 0) throw std::invalid_argument("heat_decay_check: profile_param > 0");

  HeatDecayResult res;
  res.alpha = alpha;
  res.beta = beta;
  res.p = p;
  res.q = q;
  res.d = d;
  res.profile = profile;
  res.profile_param = profile_param;
  res.predicted = -alpha / beta - (double(d) / beta) * (1.0 / p - 1.0 / q);

  // |fhat(r)|^2; both profiles are radial Gaussians on the Fourier side.
  const double decay =
      profile == "gaussian" ? profile_param * profile_param : 1.0 / (profile_param * profile_param);
  const double r_prof = 8.0 / std::sqrt(decay);
  const double pw = 2.0 * alpha + d - 1.0;
  const double cd = d == 1 ? 2.0 : kTau;

  const std::vector<double> times = log_spaced_times(10.0, 1000.0, 25);
  std::vector<double> values(times.size());
  for (std::size_t it = 0; it < times.size(); ++it) {
    const double t = times[it];
    const double r_heat = std::pow(23.0 / t, 1.0 / beta);
    const double R = std::min(r_prof, r_heat);
    auto integrand = [&](double r) {
      return std::pow(r, pw) * std::exp(-2.0 * std::pow(r, beta) * t - decay * r * r);
    };
    values[it] = std::sqrt(cd * integrate(integrand, 0.0, R, 1e-10, 48));
  }
  res.fit = fit_decay("heat", times, values, times.front(), times.back());
  res.pass = std::abs(res.fit.exponent - res.predicted) <= tol;
  return res;
}

ConvolutionResult convolution_bound_check(double s1, double s2,
                                          const std::vector<double>& t_grid) {
  if (s1 < 0 || s2 < 0)
    throw std::invalid_argument("convolution_bound_check: exponents must be >= 0");
  if (s1 > s2) throw std::invalid_argument("convolution_bound_check: requires s1 <= s2");
  if (t_grid.empty()) throw std::invalid_argument("convolution_bound_check: empty time grid");

  ConvolutionResult res;
  res.s1 = s1;
  res.s2 = s2;
  const bool log_branch = std::abs(s2 - 1.0) < 1e-12;
  res.branch = log_branch ? "s2=1" : (s2 > 1.0 ? "s2>1" : "s2<1");

  for (double t : t_grid) {
    if (t <= 0) throw std::invalid_argument("convolution_bound_check: times must be > 0");
    auto integrand = [&](double s) {
      return std::pow(1.0 + t - s, -s1) * std::pow(1.0 + s, -s2);
    };
    const double half = 0.5 * t;
    const double I = integrate(integrand, 0.0, half, 1e-8, 8) +
                     integrate(integrand, half, t, 1e-8, 8);
    double bound;
    if (log_branch)
      bound = std::pow(1.0 + t, -s1) * std::log(1.0 + t);
    else if (s2 > 1.0)
      bound = std::pow(1.0 + t, -s1);
    else
      bound = std::pow(1.0 + t, 1.0 - s1 - s2);
    res.times.push_back(t);
    res.ratios.push_back(I / bound);
  }

  const double tm = std::sqrt(t_grid.front() * t_grid.back());
  double early = 0, late = 0;
  bool have_late = false, finite = true;
  for (std::size_t i = 0; i < res.times.size(); ++i) {
    if (!std::isfinite(res.ratios[i])) finite = false;
    if (res.times[i] <= tm)
      early = std::max(early, res.ratios[i]);
    else {
      late = std::max(late, res.ratios[i]);
      have_late = true;
    }
  }
  if (!have_late) late = early;
  res.early_max = early;
  res.late_max = late;
  res.pass = finite && late <= 1.2 * early;
  return res;
}

SuiteReport run_inequality_suite(std::uint64_t seed, int n_samples, int grid_n, double band) {
  if (n_samples < 1) throw std::invalid_argument("run_inequality_suite: n_samples >= 1");
  const SpectralGrid g = make_grid(grid_n, grid_n, grid_n, 1.0);
  const FourierTransformer ft(g);
  Rng rng(seed);

  SuiteReport rep;
  rep.seed = seed;
  rep.n_samples = n_samples;

  const std::vector<std::string> ids = {"Ine1", "Ine2", "Ine3", "fg", "f1d"};
  std::map<std::string, SuiteIdReport> agg;
  for (const auto& id : ids) {
    SuiteIdReport r;
    r.id = id;
    agg[id] = r;
  }
  auto record = [&](const InequalityCase& c, int sample) {
    SuiteIdReport& r = agg[c.id];
    ++r.n_cases;
    r.max_ratio = std::max(r.max_ratio, c.ratio);
    if (sample < 100) r.max_ratio_100 = std::max(r.max_ratio_100, c.ratio);
    if (c.id == "f1d" && !(c.ratio <= 1.0 + 1e-3)) r.valid = false;
    if (!std::isfinite(c.ratio)) r.valid = false;
  };

  auto realify = [](ScalarField s) {
    for (std::size_t i = 0; i < s.v.size(); ++i) s.v[i] = s.v[i].real();
    return s;
  };

  for (int sample = 0; sample < n_samples; ++sample) {
    const ScalarField f = realify(ft.inverse(random_band_scalar(g, band, rng)));
    const ScalarField gg = realify(ft.inverse(random_band_scalar(g, band, rng)));
    const ScalarField hh = realify(ft.inverse(random_band_scalar(g, band, rng)));

    record(triple_product_check(f, gg, hh, "Ine1", {1, 2, 3}, ft), sample);
    static const int perms[6][3] = {{1, 2, 3}, {1, 3, 2}, {2, 1, 3},
                                    {2, 3, 1}, {3, 1, 2}, {3, 2, 1}};
    for (const auto& p : perms)
      record(triple_product_check(f, gg, hh, "Ine2", {p[0], p[1], p[2]}, ft), sample);
    record(product_check(f, gg, "Ine3", {2, 3, 1}, ft), sample);
    record(product_check(f, gg, "Ine3", {1, 3, 2}, ft), sample);
    record(product_check(f, gg, "Ine3", {1, 2, 3}, ft), sample);
    record(product_check(f, gg, "fg", {3, 0, 0}, ft), sample);

    const ScalarField fa = antisymmetrize_x1(f);
    record(product_check(fa, fa, "f1d", {1, 0, 0}, ft), sample);
  }

  for (const auto& id : ids) {
    SuiteIdReport r = agg[id];
    if (n_samples <= 100)
      r.saturation_ok = true;
    else
      r.saturation_ok = r.max_ratio <= 1.2 * r.max_ratio_100;
    rep.ids.push_back(r);
  }
  return rep;
}

}  // namespace anisomhd
