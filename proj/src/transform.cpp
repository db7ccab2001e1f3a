#include "anisomhd/transform.hpp"

#include <fftw3.h>

#include <mutex>
#include <stdexcept>
#include <thread>

namespace anisomhd {

namespace {

int g_threads = 1;
std::once_flag g_threads_init;

void ensure_thread_support() {
#ifdef ANISOMHD_FFTW_THREADS
  std::call_once(g_threads_init, [] { fftw_init_threads(); });
#endif
}

}  // namespace

void set_fft_threads(int n) {
  if (n < 0) throw std::invalid_argument("set_fft_threads: negative thread count");
  if (n == 0) n = int(std::thread::hardware_concurrency());
  if (n < 1) n = 1;
  g_threads = n;
}

int fft_threads() { return g_threads; }

FourierTransformer::FourierTransformer(const SpectralGrid& g) : grid_(g) {
  ensure_thread_support();
#ifdef ANISOMHD_FFTW_THREADS
  fftw_plan_with_nthreads(g_threads);
#endif
  CArray dummy = CArray::Zero(g.size());
  auto* p = reinterpret_cast<fftw_complex*>(dummy.data());
  // Dimensions ordered slowest-first to match the x3-major layout.
  fwd_ = fftw_plan_dft_3d(g.n3, g.n2, g.n1, p, p, FFTW_FORWARD,
                          FFTW_ESTIMATE | FFTW_UNALIGNED);
  bwd_ = fftw_plan_dft_3d(g.n3, g.n2, g.n1, p, p, FFTW_BACKWARD,
                          FFTW_ESTIMATE | FFTW_UNALIGNED);
  if (!fwd_ || !bwd_) throw std::runtime_error("FourierTransformer: plan creation failed");
}

FourierTransformer::~FourierTransformer() {
  if (fwd_) fftw_destroy_plan(static_cast<fftw_plan>(fwd_));
  if (bwd_) fftw_destroy_plan(static_cast<fftw_plan>(bwd_));
}

void FourierTransformer::forward_inplace(CArray& a) const {
  if (std::size_t(a.size()) != grid_.size())
    throw std::invalid_argument("forward_inplace: size mismatch");
  auto* p = reinterpret_cast<fftw_complex*>(a.data());
  fftw_execute_dft(static_cast<fftw_plan>(fwd_), p, p);
  a *= 1.0 / double(grid_.size());
}

void FourierTransformer::inverse_inplace(CArray& a) const {
  if (std::size_t(a.size()) != grid_.size())
    throw std::invalid_argument("inverse_inplace: size mismatch");
  auto* p = reinterpret_cast<fftw_complex*>(a.data());
  fftw_execute_dft(static_cast<fftw_plan>(bwd_), p, p);
}

ScalarField FourierTransformer::forward(const ScalarField& f) const {
  if (f.rep != Rep::Physical) throw std::invalid_argument("forward: field is already spectral");
  if (!f.grid.same_shape(grid_)) throw std::invalid_argument("forward: grid mismatch");
  ScalarField out = f;
  out.rep = Rep::Spectral;
  forward_inplace(out.v);
  return out;
}

ScalarField FourierTransformer::inverse(const ScalarField& f) const {
  if (f.rep != Rep::Spectral) throw std::invalid_argument("inverse: field is already physical");
  if (!f.grid.same_shape(grid_)) throw std::invalid_argument("inverse: grid mismatch");
  ScalarField out = f;
  out.rep = Rep::Physical;
  inverse_inplace(out.v);
  return out;
}

VectorField FourierTransformer::forward(const VectorField& f) const {
  if (f.rep != Rep::Physical) throw std::invalid_argument("forward: field is already spectral");
  VectorField out = f;
  out.rep = Rep::Spectral;
  for (auto& comp : out.c) forward_inplace(comp);
  return out;
}

VectorField FourierTransformer::inverse(const VectorField& f) const {
  if (f.rep != Rep::Spectral) throw std::invalid_argument("inverse: field is already physical");
  VectorField out = f;
  out.rep = Rep::Physical;
  for (auto& comp : out.c) inverse_inplace(comp);
  return out;
}

FieldPair FourierTransformer::forward(const FieldPair& p) const {
  FieldPair out;
  out.u = forward(p.u);
  out.b = forward(p.b);
  out.time = p.time;
  return out;
}

FieldPair FourierTransformer::inverse(const FieldPair& p) const {
  FieldPair out;
  out.u = inverse(p.u);
  out.b = inverse(p.b);
  out.time = p.time;
  return out;
}

}  // namespace anisomhd
