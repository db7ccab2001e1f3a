#include "anisomhd/operators.hpp"

#include <cmath>
#include <stdexcept>

namespace anisomhd {

namespace {

void require_rep(Rep have, Rep want, const char* op) {
  if (have != want)
    throw std::invalid_argument(std::string(op) + ": field has the wrong representation");
}

Cplx ipow(int order) {
  switch (order & 3) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

}  // namespace

ScalarField sample_physical(const SpectralGrid& g,
                            const std::function<double(double, double, double)>& f) {
  ScalarField out = make_scalar(g, Rep::Physical);
  const double h1 = g.spacing(1), h2 = g.spacing(2), h3 = g.spacing(3);
  std::size_t p = 0;
  for (int i3 = 0; i3 < g.n3; ++i3)
    for (int i2 = 0; i2 < g.n2; ++i2)
      for (int i1 = 0; i1 < g.n1; ++i1, ++p)
        out.v[p] = f(h1 * i1, h2 * i2, h3 * i3);
  return out;
}

ScalarField derivative(const ScalarField& f, int axis, int order) {
  require_rep(f.rep, Rep::Spectral, "derivative");
  if (axis < 1 || axis > 3) throw std::invalid_argument("derivative: axis must be 1, 2 or 3");
  if (order < 1) throw std::invalid_argument("derivative: order must be positive");
  const SpectralGrid& g = f.grid;
  ScalarField out = f;
  const bool odd = (order % 2) != 0;
  const Cplx unit = ipow(order);
  const int nyq = (axis == 1 ? g.n1 : axis == 2 ? g.n2 : g.n3) / 2;
  std::size_t p = 0;
  for (int i3 = 0; i3 < g.n3; ++i3)
    for (int i2 = 0; i2 < g.n2; ++i2)
      for (int i1 = 0; i1 < g.n1; ++i1, ++p) {
        const int i = axis == 1 ? i1 : axis == 2 ? i2 : i3;
        const double k = axis == 1 ? g.k1[i1] : axis == 2 ? g.k2[i2] : g.k3[i3];
        if (odd && i == nyq) {
          out.v[p] = Cplx(0, 0);
        } else {
          out.v[p] = f.v[p] * unit * std::pow(k, order);
        }
      }
  return out;
}

VectorField derivative(const VectorField& f, int axis, int order) {
  VectorField out = f;
  for (int c = 0; c < 3; ++c) {
    ScalarField s{f.grid, f.rep, f.c[c]};
    out.c[c] = derivative(s, axis, order).v;
  }
  return out;
}

VectorField leray_project(const VectorField& f) {
  require_rep(f.rep, Rep::Spectral, "leray_project");
  const SpectralGrid& g = f.grid;
  VectorField out = f;
  std::size_t p = 0;
  for (int i3 = 0; i3 < g.n3; ++i3)
    for (int i2 = 0; i2 < g.n2; ++i2)
      for (int i1 = 0; i1 < g.n1; ++i1, ++p) {
        const double x1 = g.k1[i1], x2 = g.k2[i2], x3 = g.k3[i3];
        const double q = x1 * x1 + x2 * x2 + x3 * x3;
        if (q == 0.0) continue;
        const Cplx s = (x1 * f.c[0][p] + x2 * f.c[1][p] + x3 * f.c[2][p]) / q;
        out.c[0][p] = f.c[0][p] - x1 * s;
        out.c[1][p] = f.c[1][p] - x2 * s;
        out.c[2][p] = f.c[2][p] - x3 * s;
      }
  return out;
}

namespace {

double sum_sq(const CArray& a) {
  double s = 0;
  for (Eigen::Index i = 0; i < a.size(); ++i) s += std::norm(a[i]);
  return s;
}

}  // namespace

double l2_norm_sq(const ScalarField& f) {
  const double w = f.rep == Rep::Spectral ? f.grid.box_volume() : f.grid.cell_volume();
  return w * sum_sq(f.v);
}

double l2_norm_sq(const VectorField& f) {
  const double w = f.rep == Rep::Spectral ? f.grid.box_volume() : f.grid.cell_volume();
  return w * (sum_sq(f.c[0]) + sum_sq(f.c[1]) + sum_sq(f.c[2]));
}

double l2_norm_sq(const FieldPair& p) { return l2_norm_sq(p.u) + l2_norm_sq(p.b); }

double l2_norm(const ScalarField& f) { return std::sqrt(l2_norm_sq(f)); }
double l2_norm(const VectorField& f) { return std::sqrt(l2_norm_sq(f)); }
double l2_norm(const FieldPair& p) { return std::sqrt(l2_norm_sq(p)); }

namespace {

double sobolev_sum(const SpectralGrid& g, const std::array<const CArray*, 6>& comps, int ncomp,
                   int s, SobolevVariant variant) {
  if (s < 0 || s > 3)
    throw std::invalid_argument("sobolev_norm: order s must lie in {0,1,2,3}");
  double acc = 0;
  std::size_t p = 0;
  for (int i3 = 0; i3 < g.n3; ++i3)
    for (int i2 = 0; i2 < g.n2; ++i2)
      for (int i1 = 0; i1 < g.n1; ++i1, ++p) {
        const double x1 = g.k1[i1], x2 = g.k2[i2], x3 = g.k3[i3];
        const double q = x1 * x1 + x2 * x2 + x3 * x3;
        const double base = variant == SobolevVariant::Full ? 1.0 + q : q;
        double w = 1.0;
        for (int j = 0; j < s; ++j) w *= base;
        double m = 0;
        for (int c = 0; c < ncomp; ++c) m += std::norm((*comps[c])[p]);
        acc += w * m;
      }
  return acc * g.box_volume();
}

}  // namespace

double sobolev_norm(const FieldPair& p, int s, SobolevVariant variant) {
  require_rep(p.u.rep, Rep::Spectral, "sobolev_norm");
  require_rep(p.b.rep, Rep::Spectral, "sobolev_norm");
  return std::sqrt(sobolev_sum(p.u.grid,
                               {&p.u.c[0], &p.u.c[1], &p.u.c[2], &p.b.c[0], &p.b.c[1], &p.b.c[2]},
                               6, s, variant));
}

double sobolev_norm(const VectorField& f, int s, SobolevVariant variant) {
  require_rep(f.rep, Rep::Spectral, "sobolev_norm");
  return std::sqrt(sobolev_sum(f.grid, {&f.c[0], &f.c[1], &f.c[2], nullptr, nullptr, nullptr}, 3,
                               s, variant));
}

double sobolev_norm(const ScalarField& f, int s, SobolevVariant variant) {
  require_rep(f.rep, Rep::Spectral, "sobolev_norm");
  return std::sqrt(
      sobolev_sum(f.grid, {&f.v, nullptr, nullptr, nullptr, nullptr, nullptr}, 1, s, variant));
}

namespace {

double mixed_norm_impl(const SpectralGrid& g, const std::array<const CArray*, 6>& comps,
                       int ncomp) {
  const double area_cell = (kTau * g.L / g.n1) * (kTau * g.L / g.n2);
  const double h3 = kTau * g.L / g.n3;
  double acc = 0;
  for (int i3 = 0; i3 < g.n3; ++i3) {
    double slab = 0;
    std::size_t p = g.idx(0, 0, i3);
    for (int i2 = 0; i2 < g.n2; ++i2)
      for (int i1 = 0; i1 < g.n1; ++i1, ++p) {
        double m = 0;
        for (int c = 0; c < ncomp; ++c) {
          const double re = (*comps[c])[p].real();
          m += re * re;
        }
        slab += std::sqrt(m);
      }
    slab *= area_cell;
    acc += slab * slab;
  }
  return std::sqrt(acc * h3);
}

}  // namespace

double mixed_norm_L2L1(const ScalarField& f) {
  require_rep(f.rep, Rep::Physical, "mixed_norm_L2L1");
  return mixed_norm_impl(f.grid, {&f.v, nullptr, nullptr, nullptr, nullptr, nullptr}, 1);
}

double mixed_norm_L2L1(const VectorField& f) {
  require_rep(f.rep, Rep::Physical, "mixed_norm_L2L1");
  return mixed_norm_impl(f.grid, {&f.c[0], &f.c[1], &f.c[2], nullptr, nullptr, nullptr}, 3);
}

double mixed_norm_L2L1(const FieldPair& p) {
  require_rep(p.u.rep, Rep::Physical, "mixed_norm_L2L1");
  require_rep(p.b.rep, Rep::Physical, "mixed_norm_L2L1");
  return mixed_norm_impl(p.u.grid,
                         {&p.u.c[0], &p.u.c[1], &p.u.c[2], &p.b.c[0], &p.b.c[1], &p.b.c[2]}, 6);
}

DivergenceStats divergence_stats(const VectorField& f) {
  require_rep(f.rep, Rep::Spectral, "divergence_stats");
  const SpectralGrid& g = f.grid;
  DivergenceStats st;
  std::size_t p = 0;
  for (int i3 = 0; i3 < g.n3; ++i3)
    for (int i2 = 0; i2 < g.n2; ++i2)
      for (int i1 = 0; i1 < g.n1; ++i1, ++p) {
        const double x1 = g.k1[i1], x2 = g.k2[i2], x3 = g.k3[i3];
        const double d = std::abs(x1 * f.c[0][p] + x2 * f.c[1][p] + x3 * f.c[2][p]);
        const double a = std::sqrt(std::norm(f.c[0][p]) + std::norm(f.c[1][p]) +
                                   std::norm(f.c[2][p]));
        if (d > st.max_div) st.max_div = d;
        if (a > st.max_amp) st.max_amp = a;
      }
  return st;
}

void check_field_pair(const FieldPair& p, double tol) {
  for (const VectorField* f : {&p.u, &p.b}) {
    const DivergenceStats st = divergence_stats(*f);
    const double scale = std::max(1.0, st.max_amp);
    if (st.max_div > tol * scale)
      throw std::runtime_error("field pair violates the divergence-free invariant");
    const double mean = std::sqrt(std::norm((*f).c[0][0]) + std::norm((*f).c[1][0]) +
                                  std::norm((*f).c[2][0]));
    if (mean > tol * scale)
      throw std::runtime_error("field pair violates the zero-mean invariant");
  }
}

SeminormSet anisotropic_seminorms(const FieldPair& p) {
  require_rep(p.u.rep, Rep::Spectral, "anisotropic_seminorms");
  require_rep(p.b.rep, Rep::Spectral, "anisotropic_seminorms");
  const SpectralGrid& g = p.u.grid;
  SeminormSet s;
  std::size_t q = 0;
  for (int i3 = 0; i3 < g.n3; ++i3)
    for (int i2 = 0; i2 < g.n2; ++i2)
      for (int i1 = 0; i1 < g.n1; ++i1, ++q) {
        const double x1 = g.k1[i1], x2 = g.k2[i2], x3 = g.k3[i3];
        const double x1s = x1 * x1, x2s = x2 * x2, x3s = x3 * x3;
        const double hh = x1s + x2s;
        const double full = 1.0 + hh + x3s;
        const double h1w = full, h2w = full * full, h3w = h2w * full;
        const double su = std::norm(p.u.c[0][q]) + std::norm(p.u.c[1][q]) +
                          std::norm(p.u.c[2][q]);
        const double sb = std::norm(p.b.c[0][q]) + std::norm(p.b.c[1][q]) +
                          std::norm(p.b.c[2][q]);
        const double sp = su + sb;
        s.pair_h3_sq += h3w * sp;
        s.u_h3_sq += h3w * su;
        s.b_h3_sq += h3w * sb;
        s.d1u_h3_sq += x1s * h3w * su;
        s.d2u_h2_sq += x2s * h2w * su;
        s.gradh_b_h3_sq += hh * h3w * sb;
        s.gradh_pair_h1_sq += hh * h1w * sp;
        s.d1_gradh_u_h1_sq += x1s * hh * h1w * su;
        s.d2_gradh_u_l2_sq += x2s * hh * su;
        s.gradh2_b_h1_sq += hh * hh * h1w * sb;
        s.pair_l2_sq += sp;
        s.gradh_pair_l2_sq += hh * sp;
        s.d3_pair_l2_sq += x3s * sp;
        s.d1d1_pair_l2_sq += x1s * x1s * sp;
        s.d1d2_pair_l2_sq += x1s * x2s * sp;
        s.d1d3_pair_l2_sq += x1s * x3s * sp;
        s.d2d2_pair_l2_sq += x2s * x2s * sp;
        s.d2d3_pair_l2_sq += x2s * x3s * sp;
        s.d3d3_pair_l2_sq += x3s * x3s * sp;
        s.d1u_l2_sq += x1s * su;
        s.gradh_b_l2_sq += hh * sb;
      }
  const double vol = g.box_volume();
  s.pair_h3_sq *= vol;
  s.u_h3_sq *= vol;
  s.b_h3_sq *= vol;
  s.d1u_h3_sq *= vol;
  s.d2u_h2_sq *= vol;
  s.gradh_b_h3_sq *= vol;
  s.gradh_pair_h1_sq *= vol;
  s.d1_gradh_u_h1_sq *= vol;
  s.d2_gradh_u_l2_sq *= vol;
  s.gradh2_b_h1_sq *= vol;
  s.pair_l2_sq *= vol;
  s.gradh_pair_l2_sq *= vol;
  s.d3_pair_l2_sq *= vol;
  s.d1d1_pair_l2_sq *= vol;
  s.d1d2_pair_l2_sq *= vol;
  s.d1d3_pair_l2_sq *= vol;
  s.d2d2_pair_l2_sq *= vol;
  s.d2d3_pair_l2_sq *= vol;
  s.d3d3_pair_l2_sq *= vol;
  s.d1u_l2_sq *= vol;
  s.gradh_b_l2_sq *= vol;
  return s;
}

}  // namespace anisomhd
