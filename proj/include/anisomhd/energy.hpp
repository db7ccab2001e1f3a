#pragma once

#include "anisomhd/solver.hpp"
#include "anisomhd/transform.hpp"

#include <vector>

namespace anisomhd {

struct LyapunovProducts {
  double d2u_b_h2 = 0;            // (d2 u, b)_{H2}
  double d2gradhu_gradhb_l2 = 0;  // (d2 grad_h u, grad_h b)_{L2}
  double cs_bound_h2 = 0;         // ||d2 u||_{H2} ||b||_{H2}
  double cs_bound_l2 = 0;         // ||d2 grad_h u|| ||grad_h b||
};

LyapunovProducts lyapunov_inner_products(const FieldPair& spectral);

struct InitialDataNorms {
  double h3_sq = 0;
  double mixed_sq = 0;       // ||(u0,b0)||^2 in L^2_{x3} L^1_{x1 x2}
  double d3_mixed_sq = 0;    // same norm of (d3 u0, d3 b0)
  double d3d3_mixed_sq = 0;  // and of the second x3 derivatives
  double F = 0;              // sum of the four terms
};

InitialDataNorms initial_data_norms(const FieldPair& physical, const FourierTransformer& ft);

struct EnergyLedger {
  double epsilon = 0;
  double lyapunov_weight = 0;
  std::vector<double> times;
  std::vector<double> E0, E1, E2, E_total;  // prefix functionals of time
  std::vector<double> E0_sup, E0_int, E1_sup, E1_int;
  std::vector<double> L;                    // H^3 Lyapunov functional, pointwise
  std::vector<double> ip_d2u_b_H2, ip_d2gradhu_gradhb_L2;
  std::vector<double> lemma43;              // (1+t) (d2 grad_h u, grad_h b)
};

// Builds the weighted energy functionals from trajectory diagnostics.
// Requires at least two records and 0 < epsilon <= 1/36. Time integrals use
// the trapezoid rule on the diagnostic cadence.
EnergyLedger energy_ledger(const Trajectory& traj, double epsilon, double lyapunov_weight);

struct IdentityResiduals {
  double e0 = 0;  // initial (1/2) ||(u,b)||^2
  std::vector<double> t_lo, t_hi;
  std::vector<double> trapezoid;     // |e(t_hi) - e(t_lo) + trapz D| per output interval
  std::vector<double> exact_linear;  // same with the exact per-step linear dissipation
};

IdentityResiduals energy_identity_residuals(const Trajectory& traj);

}  // namespace anisomhd
