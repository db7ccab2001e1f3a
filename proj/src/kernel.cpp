#include "anisomhd/kernel.hpp"

#include <cmath>
#include <stdexcept>

namespace anisomhd {

ModeSymbol mode_symbol(const PhysParams& par, const std::array<double, 3>& xi) {
  if (!(par.mu > 0) || !(par.eta > 0))
    throw std::invalid_argument("mode_symbol: mu and eta must be positive");
  ModeSymbol s;
  s.xi = xi;
  s.mu = par.mu;
  s.eta = par.eta;
  const double x1s = xi[0] * xi[0], x2s = xi[1] * xi[1];
  const double hh = x1s + x2s;
  s.S = par.mu * x1s + par.eta * hh;
  s.P = par.mu * par.eta * x1s * hh + x2s;
  s.Gamma = s.S * s.S - 4.0 * s.P;
  const Cplx sq = std::sqrt(Cplx(s.Gamma, 0.0));
  s.lambda1 = (-s.S - sq) / 2.0;
  s.lambda2 = (-s.S + sq) / 2.0;
  if (s.lambda1.real() > s.lambda2.real()) std::swap(s.lambda1, s.lambda2);
  return s;
}

namespace {

// phi-function power series; converge fast for |z| < 0.5.
Cplx phi1_series(Cplx z) {
  Cplx sum = 0, term = 1;
  for (int k = 0; k <= 16; ++k) {
    sum += term / double(k + 1);
    term *= z / double(k + 1);
  }
  return sum;
}

Cplx phi2_series(Cplx z) {
  Cplx sum = 0, term = 1;
  for (int k = 0; k <= 16; ++k) {
    sum += term / double((k + 1) * (k + 2));
    term *= z / double(k + 1);
  }
  return sum;
}

Cplx phi1_prime(Cplx z) {
  if (std::abs(z) < 0.5) {
    // sum_{k>=1} k z^{k-1}/(k+1)!
    Cplx sum = 0, zp = 1;
    double fact = 1.0;
    for (int k = 1; k <= 17; ++k) {
      fact *= double(k + 1);
      sum += double(k) * zp / fact;
      zp *= z;
    }
    return sum;
  }
  return ((z - 1.0) * std::exp(z) + 1.0) / (z * z);
}

Cplx phi2_prime(Cplx z) {
  if (std::abs(z) < 0.5) {
    // sum_{k>=1} k z^{k-1}/(k+2)!
    Cplx sum = 0, zp = 1;
    double fact = 2.0;
    for (int k = 1; k <= 17; ++k) {
      fact *= double(k + 2);
      sum += double(k) * zp / fact;
      zp *= z;
    }
    return sum;
  }
  return (phi1(z) - 2.0 * phi2(z)) / z;
}

constexpr double kDiffTol = 1e-5;

}  // namespace

Cplx phi1(Cplx z) {
  if (std::abs(z) < 0.5) return phi1_series(z);
  return (std::exp(z) - 1.0) / z;
}

Cplx phi2(Cplx z) {
  if (std::abs(z) < 0.5) return phi2_series(z);
  return (std::exp(z) - 1.0 - z) / (z * z);
}

Cplx exp_dd(Cplx z1, Cplx z2) {
  const Cplx dz = z2 - z1;
  if (std::abs(dz) < kDiffTol) return std::exp(z1) * phi1_series(dz);
  return (std::exp(z2) - std::exp(z1)) / dz;
}

Cplx phi1_dd(Cplx z1, Cplx z2) {
  const Cplx dz = z2 - z1;
  if (std::abs(dz) < kDiffTol) return phi1_prime(0.5 * (z1 + z2));
  return (phi1(z2) - phi1(z1)) / dz;
}

Cplx phi2_dd(Cplx z1, Cplx z2) {
  const Cplx dz = z2 - z1;
  if (std::abs(dz) < kDiffTol) return phi2_prime(0.5 * (z1 + z2));
  return (phi2(z2) - phi2(z1)) / dz;
}

KernelMatrix kernel_matrix(const ModeSymbol& sym, double t, double degeneracy_tol) {
  if (t < 0) throw std::invalid_argument("kernel_matrix: t must be nonnegative");
  if (!(degeneracy_tol > 0)) throw std::invalid_argument("kernel_matrix: tolerance must be positive");
  KernelMatrix k;
  k.t = t;
  const Cplx l1 = sym.lambda1, l2 = sym.lambda2;
  const double scale = std::max(1.0, std::abs(l1));
  k.degenerate = std::abs(l2 - l1) <= degeneracy_tol * scale;

  const Cplx z1 = l1 * t, z2 = l2 * t;
  const Cplx e1 = std::exp(z1);
  k.G1 = t * exp_dd(z1, z2);
  k.G3 = e1 - l1 * k.G1;
  k.G2 = std::exp(z2) + l1 * k.G1;

  const double hh = sym.xi[0] * sym.xi[0] + sym.xi[1] * sym.xi[1];
  const Cplx ehh = sym.eta * hh * k.G1;
  k.Q1 = ehh + k.G2;
  k.Q2 = Cplx(0.0, sym.xi[1]) * k.G1;
  k.Q3 = -ehh + k.G3;
  return k;
}

const char* subdomain_name(Subdomain s) {
  switch (s) {
    case Subdomain::A1: return "A1";
    case Subdomain::A21: return "A21";
    case Subdomain::A22: return "A22";
    default: return "A23";
  }
}

Subdomain classify_subdomain(const ModeSymbol& sym, double r) {
  if (!(r > 1.0)) throw std::invalid_argument("classify_subdomain: r must exceed 1");
  if (3.0 * sym.S * sym.S <= 16.0 * sym.P) return Subdomain::A1;
  const double a1 = std::abs(sym.xi[0]), a2 = std::abs(sym.xi[1]);
  // ratio |xi1|/|xi2| with |xi1|/0 = infinity
  if (a1 > r * a2) return Subdomain::A22;
  if (a2 > r * a1) return Subdomain::A23;
  return Subdomain::A21;
}

}  // namespace anisomhd
