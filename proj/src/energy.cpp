#include "anisomhd/energy.hpp"

#include "anisomhd/operators.hpp"

#include <cmath>
#include <stdexcept>

namespace anisomhd {

LyapunovProducts lyapunov_inner_products(const FieldPair& p) {
  if (p.u.rep != Rep::Spectral || p.b.rep != Rep::Spectral)
    throw std::invalid_argument("lyapunov_inner_products: fields must be spectral");
  const SpectralGrid& g = p.u.grid;
  double ip_h2 = 0, ip_l2 = 0;
  double nu_h2 = 0, nb_h2 = 0, nu_l2 = 0, nb_l2 = 0;
  std::size_t q = 0;
  for (int i3 = 0; i3 < g.n3; ++i3)
    for (int i2 = 0; i2 < g.n2; ++i2)
      for (int i1 = 0; i1 < g.n1; ++i1, ++q) {
        const double x1 = g.k1[i1], x2 = g.k2[i2], x3 = g.k3[i3];
        const double hh = x1 * x1 + x2 * x2;
        const double full = 1.0 + hh + x3 * x3;
        const double h2w = full * full;
        double im_ub = 0, su = 0, sb = 0;
        for (int c = 0; c < 3; ++c) {
          const Cplx uv = p.u.c[c][q], bv = p.b.c[c][q];
          im_ub += (uv * std::conj(bv)).imag();
          su += std::norm(uv);
          sb += std::norm(bv);
        }
        // (i x2 uhat) . conj(bhat) has real part -x2 Im(uhat . conj(bhat))
        ip_h2 += -h2w * x2 * im_ub;
        ip_l2 += -hh * x2 * im_ub;
        nu_h2 += h2w * x2 * x2 * su;
        nb_h2 += h2w * sb;
        nu_l2 += hh * x2 * x2 * su;
        nb_l2 += hh * sb;
      }
  const double vol = g.box_volume();
  LyapunovProducts r;
  r.d2u_b_h2 = vol * ip_h2;
  r.d2gradhu_gradhb_l2 = vol * ip_l2;
  r.cs_bound_h2 = vol * std::sqrt(nu_h2) * std::sqrt(nb_h2);
  r.cs_bound_l2 = vol * std::sqrt(nu_l2) * std::sqrt(nb_l2);
  return r;
}

InitialDataNorms initial_data_norms(const FieldPair& physical, const FourierTransformer& ft) {
  if (physical.u.rep != Rep::Physical || physical.b.rep != Rep::Physical)
    throw std::invalid_argument("initial_data_norms: fields must be physical");
  InitialDataNorms r;
  const FieldPair spec = ft.forward(physical);
  const double h3 = sobolev_norm(spec, 3);
  r.h3_sq = h3 * h3;
  const double m0 = mixed_norm_L2L1(physical);
  r.mixed_sq = m0 * m0;

  FieldPair d3 = spec;
  d3.u = derivative(spec.u, 3, 1);
  d3.b = derivative(spec.b, 3, 1);
  const FieldPair d3_phys = ft.inverse(d3);
  const double m1 = mixed_norm_L2L1(d3_phys);
  r.d3_mixed_sq = m1 * m1;

  FieldPair d33 = spec;
  d33.u = derivative(spec.u, 3, 2);
  d33.b = derivative(spec.b, 3, 2);
  const FieldPair d33_phys = ft.inverse(d33);
  const double m2 = mixed_norm_L2L1(d33_phys);
  r.d3d3_mixed_sq = m2 * m2;

  r.F = r.h3_sq + r.mixed_sq + r.d3_mixed_sq + r.d3d3_mixed_sq;
  return r;
}

EnergyLedger energy_ledger(const Trajectory& traj, double epsilon, double lyapunov_weight) {
  if (traj.records.size() < 2)
    throw std::invalid_argument("energy_ledger: need at least two diagnostic records");
  if (!(epsilon > 0) || epsilon > 1.0 / 36.0)
    throw std::invalid_argument("energy_ledger: epsilon must lie in (0, 1/36]");

  EnergyLedger led;
  led.epsilon = epsilon;
  led.lyapunov_weight = lyapunov_weight;

  double e0_sup = 0, e0_int = 0, e1_sup = 0, e1_int = 0, e2_sup = 0;
  double prev_t = 0, prev_d0 = 0, prev_d1 = 0;
  bool first = true;
  for (const OutputRecord& rec : traj.records) {
    const SeminormSet& s = rec.sem;
    const double t = rec.t;
    const double w = 1.0 + t;

    const double d0 = s.d1u_h3_sq + s.d2u_h2_sq + s.gradh_b_h3_sq;
    const double d1 = w * (s.d1_gradh_u_h1_sq + s.d2_gradh_u_l2_sq + s.gradh2_b_h1_sq);
    if (!first) {
      e0_int += 0.5 * (t - prev_t) * (d0 + prev_d0);
      e1_int += 0.5 * (t - prev_t) * (d1 + prev_d1);
    }
    first = false;
    prev_t = t;
    prev_d0 = d0;
    prev_d1 = d1;

    e0_sup = std::max(e0_sup, s.pair_h3_sq);
    e1_sup = std::max(e1_sup, w * s.gradh_pair_h1_sq);
    const double e2_now = w * s.pair_l2_sq + w * w * s.gradh_pair_l2_sq +
                          std::pow(w, 1.0 - 2.0 * epsilon) * s.d3_pair_l2_sq +
                          std::pow(w, 2.5 - 2.0 * epsilon) *
                              (s.d1d1_pair_l2_sq + s.d1d2_pair_l2_sq) +
                          std::pow(w, 4.0 / 3.0 - 2.0 * epsilon) *
                              (s.d2d2_pair_l2_sq + s.d2d3_pair_l2_sq) +
                          std::pow(w, 2.0 - 2.0 * epsilon) * s.d1d3_pair_l2_sq +
                          std::sqrt(w) * s.d3d3_pair_l2_sq;
    e2_sup = std::max(e2_sup, e2_now);

    led.times.push_back(t);
    led.E0_sup.push_back(e0_sup);
    led.E0_int.push_back(e0_int);
    led.E0.push_back(e0_sup + e0_int);
    led.E1_sup.push_back(e1_sup);
    led.E1_int.push_back(e1_int);
    led.E1.push_back(e1_sup + e1_int);
    led.E2.push_back(e2_sup);
    led.E_total.push_back(e0_sup + e0_int + e1_sup + e1_int + e2_sup);
    led.L.push_back(s.pair_h3_sq + lyapunov_weight * rec.lyap_ip_h2);
    led.ip_d2u_b_H2.push_back(rec.lyap_ip_h2);
    led.ip_d2gradhu_gradhb_L2.push_back(rec.lyap_ip_l2);
    led.lemma43.push_back(w * rec.lyap_ip_l2);
  }
  return led;
}

IdentityResiduals energy_identity_residuals(const Trajectory& traj) {
  if (traj.records.size() < 2 || traj.steps.size() < 2)
    throw std::invalid_argument("energy_identity_residuals: trajectory too short");
  IdentityResiduals out;
  out.e0 = traj.steps.front().energy;
  std::size_t j = 0;
  for (std::size_t k = 0; k + 1 < traj.records.size(); ++k) {
    const double ta = traj.records[k].t, tb = traj.records[k + 1].t;
    while (j + 1 < traj.steps.size() && traj.steps[j].t < ta - 1e-12) ++j;
    std::size_t ja = j, jb = ja;
    double trapz = 0, exact = 0;
    while (jb + 1 < traj.steps.size() && traj.steps[jb].t < tb - 1e-12) {
      const StepDiag& s0 = traj.steps[jb];
      const StepDiag& s1 = traj.steps[jb + 1];
      trapz += 0.5 * (s1.t - s0.t) * (s0.diss + s1.diss);
      exact += s1.diss_interval_exact;
      ++jb;
    }
    const double de = traj.steps[jb].energy - traj.steps[ja].energy;
    out.t_lo.push_back(ta);
    out.t_hi.push_back(tb);
    out.trapezoid.push_back(std::abs(de + trapz));
    out.exact_linear.push_back(std::abs(de + exact));
  }
  return out;
}

}  // namespace anisomhd
