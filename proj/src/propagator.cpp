#include "anisomhd/propagator.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace anisomhd {

const std::array<const char*, 10> kMultiIndexNames = {
    "id", "d1", "d2", "d3", "d1d1", "d1d2", "d1d3", "d2d2", "d2d3", "d3d3"};

namespace {

// (a1, a2, a3) derivative orders per multi-index, same order as the names.
constexpr int kOrders[10][3] = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {2, 0, 0},
                                {1, 1, 0}, {1, 0, 1}, {0, 2, 0}, {0, 1, 1}, {0, 0, 2}};

}  // namespace

QuadratureGrid make_quadrature(double extent, int m) {
  if (!(extent > 0)) throw std::invalid_argument("make_quadrature: extent must be positive");
  if (m < 2 || m % 2 != 0) throw std::invalid_argument("make_quadrature: m must be even and >= 2");
  QuadratureGrid q;
  q.extent = extent;
  q.m = m;
  q.h = 2.0 * extent / m;
  q.nodes.resize(m);
  for (int i = 0; i < m; ++i) q.nodes[i] = -extent + q.h * (i + 0.5);
  return q;
}

void validate_spec(const InitialDataSpec& spec) {
  if (spec.profile != "gaussian")
    throw std::invalid_argument("initial data: unknown profile '" + spec.profile + "'");
  for (double s : spec.sigma)
    if (!(s > 0)) throw std::invalid_argument("initial data: sigma components must be positive");
}

double mass_outside_fraction(const InitialDataSpec& spec, double extent) {
  validate_spec(spec);
  double inside = 1.0;
  for (double s : spec.sigma) inside *= std::erf(s * extent);
  return 1.0 - inside;
}

NormSeries propagate_linear(const PhysParams& par, const InitialDataSpec& spec,
                            const QuadratureGrid& q, const std::vector<double>& times) {
  validate_spec(spec);
  for (double t : times)
    if (t < 0) throw std::invalid_argument("propagate_linear: negative time");
  const double defect = mass_outside_fraction(spec, q.extent);
  if (defect > 1e-6) {
    std::ostringstream os;
    os << "propagate_linear: quadrature extent " << q.extent
       << " does not resolve the data (spectral mass defect " << defect << " > 1e-06)";
    throw std::invalid_argument(os.str());
  }

  const int m = q.m;
  const std::vector<double>& x = q.nodes;

  // Per-axis squared profile tables.
  std::vector<double> g1(m), g2(m), g3(m);
  for (int i = 0; i < m; ++i) {
    g1[i] = std::exp(-spec.sigma[0] * spec.sigma[0] * x[i] * x[i]);
    g2[i] = std::exp(-spec.sigma[1] * spec.sigma[1] * x[i] * x[i]);
    g3[i] = std::exp(-spec.sigma[2] * spec.sigma[2] * x[i] * x[i]);
  }

  // xi3 moments of the projected data, column by column over the xi2 > 0
  // half-plane (the data and the kernels are invariant under xi -> -xi, and
  // the midpoint rule pairs nodes exactly).
  const int half = m / 2;
  const std::size_t ncol = std::size_t(m) * half;
  std::vector<double> U0(ncol), U1(ncol), U2(ncol), B0(ncol), B1(ncol), B2(ncol);
  const auto& au = spec.amp_u;
  const auto& ab = spec.amp_b;
  const double au_sq = au[0] * au[0] + au[1] * au[1] + au[2] * au[2];
  const double ab_sq = ab[0] * ab[0] + ab[1] * ab[1] + ab[2] * ab[2];
  for (int j = half; j < m; ++j) {
    const double x2 = x[j];
    for (int i = 0; i < m; ++i) {
      const double x1 = x[i];
      const double g12 = g1[i] * g2[j];
      const double qh = x1 * x1 + x2 * x2;
      const double su_h = x1 * au[0] + x2 * au[1];
      const double sb_h = x1 * ab[0] + x2 * ab[1];
      double u0 = 0, u1 = 0, u2 = 0, b0 = 0, b1 = 0, b2 = 0;
      for (int k = 0; k < m; ++k) {
        const double x3 = x[k];
        const double gg = g12 * g3[k];  // |uhat0|^2 profile; the tables are pre-squared
        double pu = au_sq, pb = ab_sq;
        if (spec.project) {
          const double qq = qh + x3 * x3;
          const double su = su_h + x3 * au[2];
          const double sb = sb_h + x3 * ab[2];
          pu -= su * su / qq;
          pb -= sb * sb / qq;
        }
        const double eu = gg * pu, eb = gg * pb;
        const double w = x3 * x3;
        u0 += eu;
        u1 += eu * w;
        u2 += eu * w * w;
        b0 += eb;
        b1 += eb * w;
        b2 += eb * w * w;
      }
      const std::size_t col = std::size_t(j - half) * m + i;
      U0[col] = u0;
      U1[col] = u1;
      U2[col] = u2;
      B0[col] = b0;
      B1[col] = b1;
      B2[col] = b2;
    }
  }

  NormSeries out;
  out.times = times;
  for (const char* n : kMultiIndexNames) out.order.push_back(std::string("u_") + n);
  for (const char* n : kMultiIndexNames) out.order.push_back(std::string("b_") + n);
  for (const char* n : kMultiIndexNames) out.order.push_back(std::string("pair_") + n);
  out.order.push_back("pair_gradh");
  out.order.push_back("pair_d1gradh");
  out.order.push_back("pair_d2gradh");
  for (const std::string& k : out.order) out.series[k] = {};

  const double cell = 2.0 * q.h * q.h * q.h;  // doubled for the half-plane
  for (const double t : times) {
    double usq[10] = {}, bsq[10] = {};
    for (int j = half; j < m; ++j) {
      const double x2 = x[j];
      for (int i = 0; i < m; ++i) {
        const double x1 = x[i];
        const ModeSymbol sym = mode_symbol(par, {x1, x2, 0.0});
        const KernelMatrix km = kernel_matrix(sym, t);
        const double q1 = std::norm(km.Q1), q2 = std::norm(km.Q2), q3 = std::norm(km.Q3);
        const std::size_t col = std::size_t(j - half) * m + i;
        const double mu_k[3] = {q1 * U0[col] + q2 * B0[col], q1 * U1[col] + q2 * B1[col],
                                q1 * U2[col] + q2 * B2[col]};
        const double mb_k[3] = {q2 * U0[col] + q3 * B0[col], q2 * U1[col] + q3 * B1[col],
                                q2 * U2[col] + q3 * B2[col]};
        const double p1[3] = {1.0, x1 * x1, x1 * x1 * x1 * x1};
        const double p2[3] = {1.0, x2 * x2, x2 * x2 * x2 * x2};
        for (int a = 0; a < 10; ++a) {
          const double w = p1[kOrders[a][0]] * p2[kOrders[a][1]];
          usq[a] += w * mu_k[kOrders[a][2]];
          bsq[a] += w * mb_k[kOrders[a][2]];
        }
      }
    }
    for (int a = 0; a < 10; ++a) {
      usq[a] *= cell;
      bsq[a] *= cell;
      out.series[std::string("u_") + kMultiIndexNames[a]].push_back(std::sqrt(usq[a]));
      out.series[std::string("b_") + kMultiIndexNames[a]].push_back(std::sqrt(bsq[a]));
      out.series[std::string("pair_") + kMultiIndexNames[a]].push_back(
          std::sqrt(usq[a] + bsq[a]));
    }
    out.series["pair_gradh"].push_back(std::sqrt(usq[1] + bsq[1] + usq[2] + bsq[2]));
    out.series["pair_d1gradh"].push_back(std::sqrt(usq[4] + bsq[4] + usq[5] + bsq[5]));
    out.series["pair_d2gradh"].push_back(std::sqrt(usq[5] + bsq[5] + usq[7] + bsq[7]));
  }
  return out;
}

DecayFit fit_decay(const std::string& quantity, const std::vector<double>& times,
                   const std::vector<double>& values, double t_lo, double t_hi) {
  if (times.size() != values.size())
    throw std::invalid_argument("fit_decay: times and values length mismatch");
  if (!(t_lo < t_hi)) throw std::invalid_argument("fit_decay: empty window");
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (times[i] < t_lo || times[i] > t_hi) continue;
    if (!(values[i] > 0))
      throw std::invalid_argument("fit_decay: nonpositive value inside the fit window");
    xs.push_back(std::log1p(times[i]));
    ys.push_back(std::log(values[i]));
  }
  if (xs.size() < 8)
    throw std::invalid_argument("fit_decay: fewer than 8 samples inside the fit window");
  const double n = double(xs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  const double det = n * sxx - sx * sx;
  if (det == 0) throw std::invalid_argument("fit_decay: degenerate abscissae");
  DecayFit f;
  f.quantity = quantity;
  f.t_lo = t_lo;
  f.t_hi = t_hi;
  f.n_points = int(xs.size());
  f.exponent = (n * sxy - sx * sy) / det;
  f.intercept = (sy * sxx - sx * sxy) / det;
  double ss_res = 0, ss_tot = 0;
  const double ybar = sy / n;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double fit = f.intercept + f.exponent * xs[i];
    ss_res += (ys[i] - fit) * (ys[i] - fit);
    ss_tot += (ys[i] - ybar) * (ys[i] - ybar);
  }
  f.r2 = ss_tot > 0 ? 1.0 - ss_res / ss_tot : 1.0;
  return f;
}

std::vector<double> log_spaced_times(double lo, double hi, int n) {
  if (!(lo > 0) || !(hi > lo) || n < 2)
    throw std::invalid_argument("log_spaced_times: bad range");
  std::vector<double> ts(n);
  const double l0 = std::log(lo), l1 = std::log(hi);
  for (int i = 0; i < n; ++i) ts[i] = std::exp(l0 + (l1 - l0) * i / double(n - 1));
  return ts;
}

}  // namespace anisomhd
