#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Core>

namespace anisomhd {

using Cplx = std::complex<double>;
using CArray = Eigen::ArrayXcd;
using RArray = Eigen::ArrayXd;

inline constexpr double kTau = 6.283185307179586476925286766559;  // 2*pi

enum class Rep { Physical, Spectral };

// Periodic box [0, 2*pi*L)^3, storage x3-major (i1 fastest).
// Spectral storage uses the same index layout; wavenumber along each axis runs
// over {-n/2+1, ..., n/2}/L with the Nyquist mode carrying +n/2.
struct SpectralGrid {
  int n1 = 0, n2 = 0, n3 = 0;
  double L = 1.0;
  std::vector<double> k1, k2, k3;

  std::size_t size() const { return std::size_t(n1) * n2 * n3; }
  std::size_t idx(int i1, int i2, int i3) const {
    return (std::size_t(i3) * n2 + i2) * n1 + i1;
  }
  double box_volume() const { return kTau * L * kTau * L * kTau * L; }
  double cell_volume() const { return box_volume() / double(size()); }
  double spacing(int axis) const {
    const int n = axis == 1 ? n1 : axis == 2 ? n2 : n3;
    return kTau * L / n;
  }
  bool same_shape(const SpectralGrid& o) const {
    return n1 == o.n1 && n2 == o.n2 && n3 == o.n3 && L == o.L;
  }
};

SpectralGrid make_grid(int n1, int n2, int n3, double L);

struct ScalarField {
  SpectralGrid grid;
  Rep rep = Rep::Physical;
  CArray v;
};

ScalarField make_scalar(const SpectralGrid& g, Rep rep);

struct VectorField {
  SpectralGrid grid;
  Rep rep = Rep::Physical;
  std::array<CArray, 3> c;
};

VectorField make_vector(const SpectralGrid& g, Rep rep);

struct FieldPair {
  VectorField u, b;
  double time = 0.0;
};

FieldPair make_pair(const SpectralGrid& g, Rep rep);

struct PhysParams {
  double mu = 1.0;
  double eta = 1.0;
};

}  // namespace anisomhd
