#pragma once

#include "anisomhd/types.hpp"

#include <cstdint>
#include <random>

namespace anisomhd {

// Deterministic Gaussian source: mt19937_64 bits mapped through Box-Muller by
// hand, because std::normal_distribution is not bit-specified across standard
// library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  double uniform();   // [0, 1)
  double gaussian();  // N(0, 1)

 private:
  std::mt19937_64 eng_;
  bool have_cache_ = false;
  double cache_ = 0.0;
};

// Real band-limited field: independent complex-Gaussian coefficients on the
// modes 0 < |xi| <= band with Hermitian symmetry imposed by construction.
// Returned in spectral representation, zero mean.
ScalarField random_band_scalar(const SpectralGrid& g, double band, Rng& rng);
VectorField random_band_vector(const SpectralGrid& g, double band, Rng& rng, bool divfree);

// Pair of independent divergence-free fields, optionally normalized so the
// pair H^3 norm equals 1.
FieldPair random_band_pair(const SpectralGrid& g, double band, Rng& rng, bool unit_h3);

// f(x) - f(x reflected in x1): every x1-line of the result vanishes at
// x1 = 0 and x1 = pi*L. Physical representation in and out.
ScalarField antisymmetrize_x1(const ScalarField& f);

}  // namespace anisomhd
