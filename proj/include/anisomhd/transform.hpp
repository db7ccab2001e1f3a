#pragma once

#include "anisomhd/types.hpp"

namespace anisomhd {

// Requested FFT thread count for plans created afterwards; 0 = auto.
void set_fft_threads(int n);
int fft_threads();

// c2c transforms between physical and spectral representations on a fixed grid.
// Forward applies the 1/(n1*n2*n3) normalization so coefficients are the
// amplitudes in f(x) = sum_xi fhat(xi) exp(i xi . x); inverse is unnormalized.
// Plans use FFTW_ESTIMATE so results are reproducible run to run.
class FourierTransformer {
 public:
  explicit FourierTransformer(const SpectralGrid& g);
  ~FourierTransformer();
  FourierTransformer(const FourierTransformer&) = delete;
  FourierTransformer& operator=(const FourierTransformer&) = delete;

  const SpectralGrid& grid() const { return grid_; }

  ScalarField forward(const ScalarField& f) const;
  ScalarField inverse(const ScalarField& f) const;
  VectorField forward(const VectorField& f) const;
  VectorField inverse(const VectorField& f) const;
  FieldPair forward(const FieldPair& p) const;
  FieldPair inverse(const FieldPair& p) const;

  // In-place raw transforms on bare coefficient arrays (hot paths).
  void forward_inplace(CArray& a) const;
  void inverse_inplace(CArray& a) const;

 private:
  SpectralGrid grid_;
  void* fwd_ = nullptr;
  void* bwd_ = nullptr;
};

}  // namespace anisomhd
