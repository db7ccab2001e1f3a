#include "anisomhd/types.hpp"

#include <stdexcept>
#include <string>

namespace anisomhd {

namespace {

std::vector<double> axis_wavenumbers(int n, double L) {
  std::vector<double> k(n);
  for (int i = 0; i < n; ++i) {
    const int ki = (i <= n / 2) ? i : i - n;
    k[i] = double(ki) / L;
  }
  return k;
}

void check_axis(int n, const char* name) {
  if (n < 4) throw std::invalid_argument(std::string("make_grid: ") + name + " must be at least 4");
  if (n % 2 != 0) throw std::invalid_argument(std::string("make_grid: ") + name + " must be even");
}

}  // namespace

SpectralGrid make_grid(int n1, int n2, int n3, double L) {
  check_axis(n1, "n1");
  check_axis(n2, "n2");
  check_axis(n3, "n3");
  if (!(L > 0.0)) throw std::invalid_argument("make_grid: L must be positive");
  SpectralGrid g;
  g.n1 = n1;
  g.n2 = n2;
  g.n3 = n3;
  g.L = L;
  g.k1 = axis_wavenumbers(n1, L);
  g.k2 = axis_wavenumbers(n2, L);
  g.k3 = axis_wavenumbers(n3, L);
  return g;
}

ScalarField make_scalar(const SpectralGrid& g, Rep rep) {
  ScalarField f;
  f.grid = g;
  f.rep = rep;
  f.v = CArray::Zero(g.size());
  return f;
}

VectorField make_vector(const SpectralGrid& g, Rep rep) {
  VectorField f;
  f.grid = g;
  f.rep = rep;
  for (auto& comp : f.c) comp = CArray::Zero(g.size());
  return f;
}

FieldPair make_pair(const SpectralGrid& g, Rep rep) {
  FieldPair p;
  p.u = make_vector(g, rep);
  p.b = make_vector(g, rep);
  return p;
}

}  // namespace anisomhd
