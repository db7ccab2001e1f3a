#pragma once

#include "anisomhd/kernel.hpp"

#include <map>
#include <string>
#include <vector>

namespace anisomhd {

// Uniform midpoint tensor rule on [-extent, extent]^3; node weights are h^3
// and sum to (2 extent)^3. The midpoint family never places a node on a
// coordinate plane, so the projector and the kernels are evaluated away from
// their xi_h = 0 degeneracies.
struct QuadratureGrid {
  double extent = 8.0;
  int m = 1024;
  double h = 0.0;
  std::vector<double> nodes;
};

QuadratureGrid make_quadrature(double extent, int m);

// Closed-form initial datum on the Fourier side:
//   uhat0(xi) = amp_u * exp(-(sigma1^2 xi1^2 + sigma2^2 xi2^2 + sigma3^2 xi3^2)/2),
// likewise bhat0; with project = true both are Leray-projected pointwise.
struct InitialDataSpec {
  std::string profile = "gaussian";
  std::array<double, 3> sigma{1.0, 1.0, 1.0};
  std::array<double, 3> amp_u{1.0, 0.5, 0.25};
  std::array<double, 3> amp_b{0.25, 0.5, 1.0};
  bool project = true;
};

void validate_spec(const InitialDataSpec& spec);

// Fraction of the (unprojected) spectral L^2 mass outside [-extent, extent]^3.
double mass_outside_fraction(const InitialDataSpec& spec, double extent);

// L^2(R^3) moments ∫ |xi^alpha (u,b)hat(t)|^2 dxi for the ten multi-indices
// |alpha| <= 2 plus the horizontal-gradient combinations, evaluated by
// applying the exact mode propagator under the quadrature rule.
struct NormSeries {
  std::vector<double> times;
  std::vector<std::string> order;  // emission order of the series keys
  std::map<std::string, std::vector<double>> series;
};

extern const std::array<const char*, 10> kMultiIndexNames;  // id d1 d2 d3 d1d1 ...

NormSeries propagate_linear(const PhysParams& par, const InitialDataSpec& spec,
                            const QuadratureGrid& q, const std::vector<double>& times);

struct DecayFit {
  std::string quantity;
  double t_lo = 0, t_hi = 0;
  int n_points = 0;
  double exponent = 0, intercept = 0, r2 = 0;
};

// Least-squares fit of log(value) against log(1 + t) inside [t_lo, t_hi].
DecayFit fit_decay(const std::string& quantity, const std::vector<double>& times,
                   const std::vector<double>& values, double t_lo, double t_hi);

std::vector<double> log_spaced_times(double lo, double hi, int n);

}  // namespace anisomhd
