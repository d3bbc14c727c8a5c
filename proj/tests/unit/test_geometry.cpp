#include <cmath>
#include <random>

#include "doctest.h"
#include "lagdpw/error.hpp"
#include "lagdpw/geometry.hpp"

using namespace lagdpw;

namespace {
const Complex I1{0.0, 1.0};

template <class F>
SampleGrid oracle_grid(F sample, Complex center, double h, int size = 7) {
  SampleGrid g;
  g.h = h;
  g.origin = center - h * Complex(size / 2, size / 2);
  g.samples = Grid<SurfaceSample>(size, size);
  for (int j = 0; j < size; ++j)
    for (int i = 0; i < size; ++i) g.samples.at(i, j) = sample(g.origin + h * Complex(i, j));
  return g;
}

template <class F>
Grid<double> real_grid(F f, double h, int size = 7) {
  Grid<double> g(size, size);
  for (int j = 0; j < size; ++j)
    for (int i = 0; i < size; ++i) g.at(i, j) = f(h * Complex(i - size / 2, j - size / 2) + Complex(0.3, 0.2));
  return g;
}

template <class F>
Grid<Complex> complex_grid(F f, double h, int size = 7) {
  Grid<Complex> g(size, size);
  for (int j = 0; j < size; ++j)
    for (int i = 0; i < size; ++i) g.at(i, j) = f(h * Complex(i - size / 2, j - size / 2) + Complex(0.3, 0.2));
  return g;
}
}  // namespace

TEST_CASE("structure_residuals on closed forms") {
  auto clif = oracle_grid([](Complex z) { return clifford_oracle(z, 1.0); }, Complex(0.4, -0.7), 1e-3);
  ResidualReport r = structure_residuals(clif);
  CHECK(r.horizontality < 1e-9);
  CHECK(r.conformality < 1e-9);
  CHECK(r.unitarity < 1e-14);
  CHECK(r.determinant < 1e-13);

  auto rp = oracle_grid([](Complex z) { return rp2_oracle(I1, z); }, Complex(0.9, 0.5), 1e-3);
  CHECK(structure_residuals(rp).conformality < 1e-6);

  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> noise(-1e-3, 1e-3);
  for (auto& s : clif.samples.values) s.lift += Vector3(noise(rng), noise(rng), noise(rng));
  CHECK(structure_residuals(clif).horizontality > 1e-4);
}

TEST_CASE("grids below 5x5 are rejected") {
  auto small = oracle_grid([](Complex z) { return clifford_oracle(z, 1.0); }, 0.0, 1e-3, 4);
  try {
    structure_residuals(small);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::GridTooCoarse);
  }
  CHECK_THROWS_AS(codazzi_residual(Grid<Complex>(3, 9), 1e-3), Error);
}

TEST_CASE("tzitzeica_residual examples") {
  const double h = 1e-3;
  auto zero = real_grid([](Complex) { return 0.0; }, h);
  auto minus1 = complex_grid([](Complex) { return Complex(-1.0); }, h);
  CHECK(tzitzeica_residual(zero, minus1, h) == 0.0);

  auto urp = real_grid([](Complex z) { return rp2_oracle(I1, z).u; }, h);
  auto psi0 = complex_grid([](Complex) { return Complex(0.0); }, h);
  CHECK(tzitzeica_residual(urp, psi0, h) < 1e-5);

  auto one = real_grid([](Complex) { return 1.0; }, h);
  CHECK(std::abs(tzitzeica_residual(one, psi0, h) - std::exp(1.0)) < 1e-14);
}

TEST_CASE("codazzi_residual examples") {
  const double h = 1e-3;
  CHECK(codazzi_residual(complex_grid([](Complex) { return Complex(-1.0); }, h), h) == 0.0);
  CHECK(codazzi_residual(complex_grid([](Complex z) { return -2.0 * z * z * z; }, h), h) < 1e-8);
  CHECK(std::abs(codazzi_residual(complex_grid([](Complex z) { return std::conj(z); }, h), h) - 1.0) <
        1e-8);
}

TEST_CASE("hopf coefficient from the lift") {
  for (Complex l : {Complex(1.0), std::polar(1.0, 0.5), std::polar(1.0, 2.1)}) {
    auto g = oracle_grid([&](Complex z) { return clifford_oracle(z, l); }, Complex(0.2, 0.3), 1e-3);
    CHECK(hopf_crosscheck(g) < 1e-6);
  }
}

TEST_CASE("certify bundled-style specs") {
  const std::vector<Complex> nodes{Complex(0.5, 0.0), Complex(-0.3, 0.6)};
  for (const auto& spec : {clifford_spec(), rp2_spec(0.0), normalized_spec({{1.0, 0.3}}, {{0.5, 0.2}})}) {
    ResidualReport r = certify(spec, nodes, 1.0, 1e-3);
    CHECK(r.horizontality < 1e-5);
    CHECK(r.conformality < 1e-5);
    CHECK(r.codazzi < 1e-5);
    CHECK(r.tzitzeica < 1e-4);
    CHECK(*r.hopf_crosscheck < 1e-6);
  }
}

TEST_CASE("tzitzeica residual is second order") {
  const auto spec = normalized_spec({{1.0, 0.3}}, {{0.5, 0.2}});
  const std::vector<Complex> nodes{Complex(0.7, -0.2)};
  const double coarse = certify(spec, nodes, 1.0, 1e-3).tzitzeica;
  const double fine = certify(spec, nodes, 1.0, 5e-4).tzitzeica;
  CHECK(coarse / fine > 3.0);
  CHECK(coarse / fine < 5.0);
}

TEST_CASE("symmetry_residual examples") {
  auto rot = rotational_potential(4, {{1.0}}, {{0.0, 1.0}});
  const std::vector<Complex> nodes{Complex(0.3, 0.1), Complex(-0.5, 0.4), Complex(0.8, -0.6)};
  CHECK(symmetry_residual(rot.spec, [](Complex z) { return I1 * z; }, rot.T, nodes, 1.0) < 1e-7);
  CHECK(symmetry_residual(rot.spec, [](Complex z) { return I1 * z; }, Matrix3::Identity(), nodes,
                          1.0) > 1e-3);
  CHECK(symmetry_residual(clifford_spec(), [](Complex z) { return z; }, Matrix3::Identity(), nodes,
                          1.0) < 1e-15);
}

TEST_CASE("holomorphic_restriction of known real-analytic functions") {
  // u(z, w) = 0.5 + (z^2 + w^2)/2 + log(1 + z w) + z w (z + w)/2, so
  // u(z, 0) = 0.5 + z^2/2.
  auto u = [](Complex z) {
    const double r2 = std::norm(z);
    return 0.5 + (z * z).real() + std::log(1.0 + r2) + r2 * z.real();
  };
  const Polynomial p = holomorphic_restriction(u);
  for (Complex z : {Complex(0.0, 0.0), Complex(0.7, -0.4), Complex(0.0, 1.0)})
    CHECK(std::abs(p(z) - (0.5 + z * z / 2.0)) < 1e-9);
  PolarizationOptions bad;
  bad.angles = 10;
  CHECK_THROWS(holomorphic_restriction(u, bad));
}

TEST_CASE("hopf_at matches the potential") {
  const auto spec = normalized_spec({{1.0, 0.3}}, {{0.5, 0.2}});
  for (Complex z : {Complex(0.3, 0.2), Complex(-0.6, 0.5)}) {
    const Complex a = spec.a(z), b = spec.b(z);
    CHECK(std::abs(hopf_at(spec, z, 1.0, 1e-3) + a * a * b) < 1e-7);
  }
}
