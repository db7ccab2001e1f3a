#pragma once

#include "anisomhd/propagator.hpp"
#include "anisomhd/transform.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace anisomhd {

// One evaluated inequality instance. ratio = lhs / rhs_factor_product, with
// the convention 0/0 = 0, so valid cases satisfy ratio <= C (or <= 1 when the
// constant is part of the right-hand side, as for f1d).
struct InequalityCase {
  std::string id;  // Ine1 | Ine2 | Ine3 | fg | f1d | lem53
  std::array<int, 3> axes{0, 0, 0};
  double lhs = 0;
  double rhs_factor_product = 0;
  double ratio = 0;
};

// Ine1: int |f g h| <= C prod ||.||^{1/2} ||d_axis .||^{1/2} with the three
// axes applied to f, g, h in order.
// Ine2: int |f g h| <= C ||f||^{1/4} ||d_i f||^{1/4} ||d_j f||^{1/4}
//       ||d_i d_j f||^{1/4} ||g||^{1/2} ||d_k g||^{1/2} ||h||, axes = (i,j,k).
InequalityCase triple_product_check(const ScalarField& f, const ScalarField& g,
                                    const ScalarField& h, const std::string& id,
                                    const std::array<int, 3>& axes,
                                    const FourierTransformer& ft);

// Ine3: ||f g||_{L2} <= C (same f factors as Ine2) ||g||^{1/2} ||d_k g||^{1/2}.
// fg:   ||f g||_{L2_{x3} L1_{x1 x2}} <= C ||f||^{1/2} ||d3 f||^{1/2} ||g||.
// f1d:  max |f| <= sqrt(2) ||f||^{1/2} ||d_l f||^{1/2} on every grid line
//       along axis l = axes[0]; needs sections that vanish somewhere, e.g.
//       x1-antisymmetrized samples. The reported case is the worst line and
//       the sqrt(2) lives inside rhs_factor_product.
InequalityCase product_check(const ScalarField& f, const ScalarField& g,
                             const std::string& variant, const std::array<int, 3>& axes,
                             const FourierTransformer& ft);

struct HeatDecayResult {
  double alpha = 0, beta = 0;
  double p = 0, q = 0;
  int d = 0;
  std::string profile;
  double profile_param = 0;
  double predicted = 0;
  DecayFit fit;
  bool pass = false;
};

// Measures ||Lambda^alpha e^{-Lambda^beta t} f||_{L^q(R^d)} on t in
// [10, 10^3] (25 log-spaced samples) by radial quadrature and fits the decay
// exponent; only q = 2 is measurable. The prediction is
// -alpha/beta - (d/beta)(1/p - 1/q). profile: "gaussian" (param = sigma) or
// "lowpass" (param = spectral radius r0).
HeatDecayResult heat_decay_check(double alpha, double beta, double p, double q, int d,
                                 const std::string& profile, double profile_param,
                                 double tol = 0.05);

struct ConvolutionResult {
  double s1 = 0, s2 = 0;
  std::string branch;  // s2>1 | s2=1 | s2<1
  std::vector<double> times, ratios;
  double early_max = 0, late_max = 0;
  bool pass = false;  // ratios stay bounded: late_max <= 1.2 * early_max
};

// I(t) = int_0^t (1+t-s)^{-s1} (1+s)^{-s2} ds against the three-branch bound
// of the convolution lemma; adaptive quadrature to 1e-8 relative. Requires
// s1 <= s2.
ConvolutionResult convolution_bound_check(double s1, double s2,
                                          const std::vector<double>& t_grid);

struct SuiteIdReport {
  std::string id;
  int n_cases = 0;
  double max_ratio_100 = 0;  // over the first 100 samples
  double max_ratio = 0;
  bool saturation_ok = false;  // max_ratio <= 1.2 * max_ratio_100
  bool valid = true;           // f1d only: every ratio <= 1 + 1e-3
};

struct SuiteReport {
  std::uint64_t seed = 0;
  int n_samples = 0;
  std::vector<SuiteIdReport> ids;
};

// Random band-limited sampling study of Ine1/Ine2/Ine3/fg/f1d on a periodic
// box (grid n^3, band-limited Gaussian coefficients).
SuiteReport run_inequality_suite(std::uint64_t seed, int n_samples, int grid_n, double band);

}  // namespace anisomhd
