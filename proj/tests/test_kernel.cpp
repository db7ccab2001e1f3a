#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "anisomhd/kernel.hpp"
#include "anisomhd/random_fields.hpp"

#include <array>
#include <cmath>
#include <complex>

using namespace anisomhd;

namespace {

using Mat2 = std::array<Cplx, 4>;  // row major 2x2

Mat2 symbol_matrix(const ModeSymbol& s) {
  const double hh = s.xi[0] * s.xi[0] + s.xi[1] * s.xi[1];
  return {Cplx(-s.mu * s.xi[0] * s.xi[0], 0), Cplx(0, s.xi[1]),
          Cplx(0, s.xi[1]), Cplx(-s.eta * hh, 0)};
}

Mat2 propagator_matrix(const ModeSymbol& s, double t) {
  const KernelMatrix k = kernel_matrix(s, t);
  const Mat2 a = symbol_matrix(s);
  return {k.G3 + k.G1 * a[0], k.G1 * a[1], k.G1 * a[2], k.G3 + k.G1 * a[3]};
}

Mat2 mul(const Mat2& x, const Mat2& y) {
  return {x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3],
          x[2] * y[0] + x[3] * y[2], x[2] * y[1] + x[3] * y[3]};
}

double max_entry_diff(const Mat2& x, const Mat2& y) {
  double worst = 0;
  for (int i = 0; i < 4; ++i) worst = std::max(worst, std::abs(x[i] - y[i]));
  return worst;
}

std::array<double, 3> random_xi(Rng& rng, double lo_exp, double hi_exp) {
  std::array<double, 3> xi{};
  for (auto& x : xi) {
    const double mag = std::pow(10.0, lo_exp + (hi_exp - lo_exp) * rng.uniform());
    x = (rng.uniform() < 0.5 ? -1.0 : 1.0) * mag;
  }
  return xi;
}

}  // namespace

TEST_CASE("eigenvalues satisfy the characteristic polynomial") {
  Rng rng(17);
  for (int trial = 0; trial < 500; ++trial) {
    const PhysParams par{0.1 + 5 * rng.uniform(), 0.1 + 5 * rng.uniform()};
    const ModeSymbol s = mode_symbol(par, random_xi(rng, -2.0, 2.0));
    const double scale = std::max(1.0, std::abs(s.S));
    CHECK(std::abs(s.lambda1 + s.lambda2 + s.S) <= 1e-10 * scale);
    CHECK(std::abs(s.lambda1 * s.lambda2 - s.P) <= 1e-10 * std::max(1.0, std::abs(s.P)));
    CHECK(s.lambda1.real() <= s.lambda2.real() + 1e-14 * scale);
    CHECK(s.lambda1.real() <= 1e-12 * scale);  // the system is dissipative
    CHECK(s.lambda2.real() <= 1e-12 * scale);
  }
}

TEST_CASE("semigroup property K(t) K(s) = K(t+s)") {
  Rng rng(23);
  double worst = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const PhysParams par{0.2 + 3 * rng.uniform(), 0.2 + 3 * rng.uniform()};
    const ModeSymbol s = mode_symbol(par, random_xi(rng, -2.0, 2.0));
    const double t = 5 * rng.uniform() + 1e-3, u = 5 * rng.uniform() + 1e-3;
    const Mat2 prod = mul(propagator_matrix(s, t), propagator_matrix(s, u));
    worst = std::max(worst, max_entry_diff(prod, propagator_matrix(s, t + u)));
  }
  CHECK(worst <= 1e-8);
}

TEST_CASE("Richardson quotient recovers the generator") {
  Rng rng(31);
  const double h = 1e-3;
  double worst = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const PhysParams par{0.2 + 2 * rng.uniform(), 0.2 + 2 * rng.uniform()};
    const ModeSymbol s = mode_symbol(par, random_xi(rng, -1.3, -0.3));
    const Mat2 a = symbol_matrix(s);
    const Mat2 mh = propagator_matrix(s, h), mh2 = propagator_matrix(s, 0.5 * h);
    Mat2 rich;
    const Mat2 eye = {Cplx(1, 0), 0, 0, Cplx(1, 0)};
    for (int i = 0; i < 4; ++i)
      rich[i] = 2.0 * (mh2[i] - eye[i]) / (0.5 * h) - (mh[i] - eye[i]) / h;
    worst = std::max(worst, max_entry_diff(rich, a));
  }
  CHECK(worst <= 1e-6);
}

TEST_CASE("double root at xi = (1,0,0) with mu = eta") {
  const ModeSymbol s = mode_symbol(PhysParams{1.0, 1.0}, {1.0, 0.0, 0.0});
  CHECK(s.Gamma == doctest::Approx(0.0));
  const KernelMatrix k = kernel_matrix(s, 1.0);
  CHECK(k.degenerate);
  // G1 -> t e^{lambda t} with lambda = -1.
  CHECK(k.G1.real() == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
  CHECK(std::abs(k.G1.imag()) < 1e-14);

  const ModeSymbol s2 = mode_symbol(PhysParams{1.0, 2.0}, {1.0, 0.0, 0.0});
  CHECK(!kernel_matrix(s2, 1.0).degenerate);
}

TEST_CASE("kernels are continuous across the degeneracy") {
  const double t = 1.0;
  const Mat2 at = propagator_matrix(mode_symbol(PhysParams{1.0, 1.0}, {1.0, 0.0, 0.0}), t);
  for (double de : {1e-7, -1e-7}) {
    const Mat2 near =
        propagator_matrix(mode_symbol(PhysParams{1.0, 1.0 + de}, {1.0, 0.0, 0.0}), t);
    CHECK(max_entry_diff(at, near) <= 1e-6);
  }
}

TEST_CASE("Q components have the stated reality structure") {
  Rng rng(41);
  for (int trial = 0; trial < 300; ++trial) {
    const PhysParams par{0.2 + 2 * rng.uniform(), 0.2 + 2 * rng.uniform()};
    const ModeSymbol s = mode_symbol(par, random_xi(rng, -2.0, 1.5));
    const KernelMatrix k = kernel_matrix(s, 3 * rng.uniform());
    const double scale = std::abs(k.Q1) + std::abs(k.Q2) + std::abs(k.Q3) + 1e-30;
    CHECK(std::abs(k.Q1.imag()) <= 1e-13 * scale);
    CHECK(std::abs(k.Q3.imag()) <= 1e-13 * scale);
    CHECK(std::abs(k.Q2.real()) <= 1e-13 * scale);
    CHECK(std::abs(k.G1.imag()) <= 1e-13 * scale);
    // exp(tA) = G3 I + G1 A reproduces Q via the application identities.
    const double hh = s.xi[0] * s.xi[0] + s.xi[1] * s.xi[1];
    CHECK(std::abs((k.Q1 - (s.eta * hh * k.G1 + k.G2))) <= 1e-13 * scale);
    CHECK(std::abs((k.Q3 - (-s.eta * hh * k.G1 + k.G3))) <= 1e-13 * scale);
  }
}

TEST_CASE("propagator at t = 0 is the identity") {
  const ModeSymbol s = mode_symbol(PhysParams{1.0, 0.5}, {2.0, -3.0, 1.0});
  const KernelMatrix k = kernel_matrix(s, 0.0);
  CHECK(std::abs(k.Q1 - 1.0) < 1e-14);
  CHECK(std::abs(k.Q3 - 1.0) < 1e-14);
  CHECK(std::abs(k.Q2) < 1e-14);
}

TEST_CASE("subdomain classification") {
  const PhysParams unit{1.0, 1.0};
  CHECK(classify_subdomain(mode_symbol(unit, {1.0, 0.0, 0.0})) == Subdomain::A1);
  CHECK(classify_subdomain(mode_symbol(unit, {1.0, 1.0, 0.0})) == Subdomain::A1);
  // pure-xi2 modes are strongly non-normal: A2 with ratio 0.
  CHECK(classify_subdomain(mode_symbol(unit, {0.0, 5.0, 0.0})) == Subdomain::A23);

  const PhysParams skew{100.0, 1.0};
  CHECK(classify_subdomain(mode_symbol(skew, {1.0, 1.0, 0.0})) == Subdomain::A21);
  CHECK(classify_subdomain(mode_symbol(skew, {1.0, 0.0, 0.0})) == Subdomain::A22);
  const PhysParams four{4.0, 1.0};
  CHECK(classify_subdomain(mode_symbol(four, {10.0, 0.5, 0.0})) == Subdomain::A22);
  CHECK(classify_subdomain(mode_symbol(four, {0.5, 10.0, 0.0})) == Subdomain::A23);
  CHECK_THROWS_AS(classify_subdomain(mode_symbol(unit, {1.0, 1.0, 0.0}), 1.0),
                  std::invalid_argument);
  CHECK(std::string(subdomain_name(Subdomain::A21)) == "A21");
}

TEST_CASE("stable scalar kernels match their closed forms") {
  auto closed_phi1 = [](Cplx z) { return (std::exp(z) - 1.0) / z; };
  auto closed_phi2 = [](Cplx z) { return (std::exp(z) - 1.0 - z) / (z * z); };
  for (Cplx z : {Cplx(-0.3, 0.1), Cplx(0.2, -0.4), Cplx(-2.0, 1.0), Cplx(-40.0, 3.0)}) {
    CHECK(std::abs(phi1(z) - closed_phi1(z)) <= 1e-13 * std::abs(closed_phi1(z)));
    CHECK(std::abs(phi2(z) - closed_phi2(z)) <= 1e-12 * std::abs(closed_phi2(z)));
  }
  CHECK(std::abs(phi1(Cplx(0, 0)) - 1.0) < 1e-15);
  CHECK(std::abs(phi2(Cplx(0, 0)) - 0.5) < 1e-15);

  // Divided differences: the small-separation branch must agree with the
  // expm1-based reference and with the far branch at the switch point.
  for (double dz : {1e-7, 5e-6, 9.9e-6, 1.1e-5, 1e-4}) {
    const double z1 = -1.0;
    const double ref = std::exp(z1) * std::expm1(dz) / dz;
    const Cplx got = exp_dd(Cplx(z1, 0), Cplx(z1 + dz, 0));
    // the far branch loses ~1e-16/dz to cancellation in e^{z2} - e^{z1}
    const double tol = 1e-13 + 5e-16 / dz;
    CHECK(std::abs(got.real() - ref) <= tol * std::abs(ref));
    CHECK(std::abs(got.imag()) <= 1e-16);
  }
  CHECK(std::abs(exp_dd(Cplx(-2, 0), Cplx(-2, 0)) - std::exp(Cplx(-2, 0))) < 1e-15);

  // phi1_dd(z, z) equals the derivative of phi1.
  const Cplx z0(-2.0, 0.0);
  const double h = 1e-5;
  const Cplx num = (phi1(z0 + h) - phi1(z0 - h)) / (2 * h);
  CHECK(std::abs(phi1_dd(z0, z0) - num) <= 1e-9);
  const Cplx num2 = (phi2(z0 + h) - phi2(z0 - h)) / (2 * h);
  CHECK(std::abs(phi2_dd(z0, z0) - num2) <= 1e-9);
}

TEST_CASE("argument validation") {
  CHECK_THROWS_AS(mode_symbol(PhysParams{0.0, 1.0}, {1.0, 0.0, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(mode_symbol(PhysParams{1.0, -1.0}, {1.0, 0.0, 0.0}), std::invalid_argument);
  const ModeSymbol s = mode_symbol(PhysParams{1.0, 1.0}, {1.0, 0.0, 0.0});
  CHECK_THROWS_AS(kernel_matrix(s, -1.0), std::invalid_argument);
  CHECK_THROWS_AS(kernel_matrix(s, 1.0, 0.0), std::invalid_argument);
}
