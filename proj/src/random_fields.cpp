#include "anisomhd/random_fields.hpp"

#include "anisomhd/operators.hpp"

#include <cmath>
#include <stdexcept>

namespace anisomhd {

double Rng::uniform() {
  return double(eng_() >> 11) * 0x1.0p-53;
}

double Rng::gaussian() {
  if (have_cache_) {
    have_cache_ = false;
    return cache_;
  }
  double u1 = uniform();
  while (u1 == 0.0) u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double a = kTau * u2;
  cache_ = r * std::sin(a);
  have_cache_ = true;
  return r * std::cos(a);
}

namespace {

int wrap_index(int k, int n) { return k >= 0 ? k : k + n; }

// Conjugate-symmetric assignment over integer modes; the iteration order is
// part of the reproducibility contract.
template <typename Assign>
void for_band_modes(const SpectralGrid& g, double band, Assign&& assign) {
  const int b1 = int(band * g.L), b2 = b1, b3 = b1;
  for (int k3 = -b3; k3 <= b3; ++k3)
    for (int k2 = -b2; k2 <= b2; ++k2)
      for (int k1 = -b1; k1 <= b1; ++k1) {
        const bool upper = k1 > 0 || (k1 == 0 && k2 > 0) || (k1 == 0 && k2 == 0 && k3 > 0);
        if (!upper) continue;
        const double r = std::sqrt(double(k1 * k1 + k2 * k2 + k3 * k3)) / g.L;
        if (r > band) continue;
        assign(k1, k2, k3);
      }
}

}  // namespace

ScalarField random_band_scalar(const SpectralGrid& g, double band, Rng& rng) {
  if (!(band > 0)) throw std::invalid_argument("random_band_scalar: band must be positive");
  if (band >= g.n1 / (2.0 * g.L) || band >= g.n2 / (2.0 * g.L) || band >= g.n3 / (2.0 * g.L))
    throw std::invalid_argument("random_band_scalar: band reaches the Nyquist modes");
  ScalarField f = make_scalar(g, Rep::Spectral);
  for_band_modes(g, band, [&](int k1, int k2, int k3) {
    const Cplx c(rng.gaussian() * 0.5, rng.gaussian() * 0.5);
    f.v[g.idx(wrap_index(k1, g.n1), wrap_index(k2, g.n2), wrap_index(k3, g.n3))] = c;
    f.v[g.idx(wrap_index(-k1, g.n1), wrap_index(-k2, g.n2), wrap_index(-k3, g.n3))] =
        std::conj(c);
  });
  return f;
}

VectorField random_band_vector(const SpectralGrid& g, double band, Rng& rng, bool divfree) {
  VectorField f = make_vector(g, Rep::Spectral);
  for (int c = 0; c < 3; ++c) f.c[c] = random_band_scalar(g, band, rng).v;
  if (divfree) f = leray_project(f);
  return f;
}

FieldPair random_band_pair(const SpectralGrid& g, double band, Rng& rng, bool unit_h3) {
  FieldPair p;
  p.u = random_band_vector(g, band, rng, true);
  p.b = random_band_vector(g, band, rng, true);
  if (unit_h3) {
    const double n = sobolev_norm(p, 3);
    if (n == 0) throw std::runtime_error("random_band_pair: degenerate sample");
    for (int c = 0; c < 3; ++c) {
      p.u.c[c] /= n;
      p.b.c[c] /= n;
    }
  }
  return p;
}

ScalarField antisymmetrize_x1(const ScalarField& f) {
  if (f.rep != Rep::Physical)
    throw std::invalid_argument("antisymmetrize_x1: field must be physical");
  const SpectralGrid& g = f.grid;
  ScalarField out = make_scalar(g, Rep::Physical);
  for (int i3 = 0; i3 < g.n3; ++i3)
    for (int i2 = 0; i2 < g.n2; ++i2)
      for (int i1 = 0; i1 < g.n1; ++i1) {
        const int j1 = i1 == 0 ? 0 : g.n1 - i1;
        out.v[g.idx(i1, i2, i3)] = f.v[g.idx(i1, i2, i3)] - f.v[g.idx(j1, i2, i3)];
      }
  return out;
}

}  // namespace anisomhd
