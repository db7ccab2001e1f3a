#pragma once

#include "anisomhd/types.hpp"

namespace anisomhd {

// Per-mode symbol of the coupled (uhat, bhat) system
//   A = [ -mu xi1^2    i xi2   ]
//       [  i xi2      -eta |xi_h|^2 ],
// eigenvalues lambda^2 + S lambda + P = 0 with
//   S = mu xi1^2 + eta |xi_h|^2,  P = mu eta xi1^2 |xi_h|^2 + xi2^2,
//   Gamma = S^2 - 4P.
struct ModeSymbol {
  std::array<double, 3> xi{};
  double mu = 0, eta = 0;
  double S = 0, P = 0, Gamma = 0;
  Cplx lambda1, lambda2;  // ordered Re(lambda1) <= Re(lambda2)
};

ModeSymbol mode_symbol(const PhysParams& par, const std::array<double, 3>& xi);

// Exact mode propagator exp(t A) = G3 I + G1 A with
//   G1 = (e^{l2 t} - e^{l1 t})/(l2 - l1)   (-> t e^{l1 t} at the double root),
//   G2 = e^{l2 t} + l1 G1,  G3 = e^{l1 t} - l1 G1,
//   Q1 = eta |xi_h|^2 G1 + G2,  Q2 = i xi2 G1,  Q3 = -eta |xi_h|^2 G1 + G3.
// Q1, Q3 are real and Q2 purely imaginary for real parameters.
struct KernelMatrix {
  double t = 0;
  bool degenerate = false;
  Cplx G1, G2, G3;
  Cplx Q1, Q2, Q3;
};

KernelMatrix kernel_matrix(const ModeSymbol& sym, double t, double degeneracy_tol = 1e-8);

enum class Subdomain { A1, A21, A22, A23 };
const char* subdomain_name(Subdomain s);

// A1 when 3 S^2 <= 16 P (ties included); otherwise A2, split by the
// anisotropy ratio |xi1|/|xi2| against r: A21 inside [1/r, r], A22 above,
// A23 below. Requires r > 1.
Subdomain classify_subdomain(const ModeSymbol& sym, double r = 10.0);

// Stable scalar kernels shared with the integrator tables. All assume
// Re z <= 0 so exponentials stay bounded.
Cplx phi1(Cplx z);                  // (e^z - 1)/z
Cplx phi2(Cplx z);                  // (e^z - 1 - z)/z^2
Cplx exp_dd(Cplx z1, Cplx z2);      // (e^{z2} - e^{z1})/(z2 - z1)
Cplx phi1_dd(Cplx z1, Cplx z2);
Cplx phi2_dd(Cplx z1, Cplx z2);

}  // namespace anisomhd
