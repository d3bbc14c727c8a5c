#include <cmath>

#include "doctest.h"
#include "lagdpw/error.hpp"
#include "lagdpw/potentials.hpp"

using namespace lagdpw;

namespace {
const Complex I1{0.0, 1.0};
}

TEST_CASE("wu_potential examples") {
  auto clif = wu_potential([](Complex) { return Complex(0.0); }, 0.0,
                           [](Complex) { return Complex(-1.0); });
  CHECK(clif.a == clifford_spec().a);
  CHECK(clif.b == clifford_spec().b);
  CHECK(su3::maxabs(clif.eta(0.3)(1.0) - su3::clifford_A()) == 0.0);

  const double u0 = 0.7;
  auto flat = wu_potential([&](Complex) { return Complex(u0); }, u0,
                           [](Complex) { return Complex(0.0); });
  CHECK(flat.b.is_zero());
  REQUIRE(flat.a.c.size() == 1);
  CHECK(std::abs(I1 * flat.a.c[0] - I1 * std::exp(u0 / 2.0)) < 1e-14);

  // psi = -z with u = 0 gives b(z) = z under b = -psi e^{-2u+u00}.
  auto lin = wu_potential([](Complex) { return Complex(0.0); }, 0.0, [](Complex z) { return -z; });
  CHECK(lin.a == clifford_spec().a);
  REQUIRE(lin.b.c.size() == 2);
  CHECK(std::abs(lin.b.c[0]) < 1e-15);
  CHECK(std::abs(lin.b.c[1] - 1.0) < 1e-15);
}

TEST_CASE("every normalized spec sits in g_5 at degree -1") {
  for (const auto& s : {clifford_spec(), rp2_spec(0.4), radial_spec(1, 0, 2.0, Complex(0.3, 1.0)),
                        rotational_potential(4, {{1.0}}, {{0.0, 1.0}}).spec})
    for (Complex z : {Complex(0.0), Complex(0.4, -0.9), Complex(1.3, 0.2)}) {
      LoopMatrix e = s.eta(z);
      CHECK(e.min_degree() == -1);
      CHECK(su3::eigenspace_residual(e.coeff(-1), 5) < 1e-15);
    }
}

TEST_CASE("homogeneity_params examples") {
  auto h = homogeneity_params(0, 0, 3.0);
  CHECK(h.q0 == 3.0);
  CHECK(h.t0 == 0.0);
  h = homogeneity_params(1, 0, 3.0);
  CHECK(h.q0 == 5.0);
  CHECK(h.t0 == 1.0);
  h = homogeneity_params(0, 1, 3.0);
  CHECK(h.q0 == 4.0);
  CHECK(h.t0 == -1.0);
  for (int k = 0; k < 4; ++k)
    for (int n = 0; n < 4; ++n) {
      auto g = homogeneity_params(k, n, 3.0);
      CHECK(3.0 * g.q0 == (2 * k + n + 3) * 3.0);
      CHECK(3.0 * g.t0 == (k - n) * 3.0);
    }
}

TEST_CASE("vacuum_normalize examples") {
  auto v = vacuum_normalize(I1, I1);
  CHECK(v.gauge_delta == 0.0);
  CHECK(std::abs(v.coord_scale - 1.0) == 0.0);
  CHECK(v.spec.a == clifford_spec().a);
  CHECK(v.spec.b == clifford_spec().b);

  v = vacuum_normalize(I1 * std::polar(1.0, kPi / 3.0), I1);
  CHECK(std::abs(v.gauge_delta + kPi / 9.0) < 1e-15);
  CHECK(std::abs(v.coord_scale - std::polar(1.0, 2.0 * kPi / 9.0)) < 1e-15);

  v = vacuum_normalize(2.0 * I1, 2.0 * I1);
  CHECK(v.gauge_delta == 0.0);
  CHECK(std::abs(v.coord_scale - 2.0) < 1e-15);

  CHECK_THROWS_AS(vacuum_normalize(I1, 2.0 * I1), Error);
}

TEST_CASE("vacuum normalization turns the potential into the Clifford one") {
  // Independent check: gauge by diag(e^{i delta}, e^{-i delta}, 1) and
  // rescale dz = dw / c; the lambda^{-1} coefficient must become A_C.
  for (auto [a, b] : {std::pair{I1 * std::polar(1.3, 0.4), I1 * std::polar(1.3, -1.1)},
                      std::pair{I1 * std::polar(0.5, 2.0), I1 * std::polar(0.5, 0.2)}}) {
    auto v = vacuum_normalize(a, b);
    Matrix3 eta = Matrix3::Zero();
    eta(0, 2) = a;
    eta(2, 1) = a;
    eta(1, 0) = b;
    Matrix3 g = Matrix3::Identity();
    g(0, 0) = std::polar(1.0, v.gauge_delta);
    g(1, 1) = std::polar(1.0, -v.gauge_delta);
    Matrix3 out = g * eta * g.inverse() / v.coord_scale;
    CHECK(su3::maxabs(out - su3::clifford_A()) < 1e-14);
  }
}

TEST_CASE("rotational_potential examples") {
  auto r3 = rotational_potential(3, {{1.0}}, {{0.0, 1.0}});
  REQUIRE(r3.spec.b.c.size() == 1);
  CHECK(r3.spec.b.c[0] == Complex(1.0));

  auto r4 = rotational_potential(4, {{1.0}}, {{0.0, 1.0}});
  REQUIRE(r4.spec.b.c.size() == 2);
  CHECK(r4.spec.b.c[1] == Complex(1.0));
  const Complex p = std::polar(1.0, 2.0 * kPi / 4);
  CHECK(check_potential_symmetry(r4.spec, p, 1.0, r4.T) < 1e-14);

  auto r0 = rotational_potential(3, {{1.0}}, {});
  CHECK(r0.spec.b.is_zero());
  CHECK(check_potential_symmetry(r0.spec, std::polar(1.0, 2.0 * kPi / 3), 1.0, r0.T) < 1e-14);

  auto richer = rotational_potential(5, {{1.0, 0.3, Complex(0.0, 0.2)}}, {{0.0, 0.5, 1.0}});
  CHECK(check_potential_symmetry(richer.spec, std::polar(1.0, 2.0 * kPi / 5), 1.0, richer.T) <
        1e-13);

  try {
    rotational_potential(4, {{1.0}}, {{1.0}});
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::PoleAtOrigin);
  }
  CHECK_THROWS_AS(rotational_potential(2, {{1.0}}, {{0.0, 1.0}}), Error);
}

TEST_CASE("check_potential_symmetry examples") {
  const auto c = clifford_spec();
  for (double t : {0.3, 1.7})
    CHECK(check_potential_symmetry(c, std::polar(1.0, t), std::polar(1.0, t), Matrix3::Identity()) <
          1e-15);
  CHECK(check_potential_symmetry(c, 1.0, -1.0, Matrix3::Identity()) > 1.0);

  const auto r = radial_spec(1, 0, 1.0, 2.0);
  const auto h = homogeneity_params(1, 0, 1.0);
  for (double t : {0.2, 1.1, 2.9})
    CHECK(check_potential_symmetry(r, h.p(t), h.q(t), h.T(t)) < 1e-13);
}

TEST_CASE("radial normalization") {
  auto r = radial_spec(1, 2, Complex(0.3, 1.2), Complex(-0.7, 0.4));
  REQUIRE(r.a.c.size() == 2);
  CHECK(r.a.c[1].imag() == 0.0);
  CHECK(r.a.c[1].real() > 0.0);
  CHECK(r.psi0.real() < 0.0);
  CHECK(std::abs(std::abs(r.a.c[1]) - std::abs(Complex(0.3, 1.2))) < 1e-15);
  CHECK(r.normalization_applied);

  // Independent check: gauge and rotate the original coefficients.
  const Complex ak(0.3, 1.2), bn(-0.7, 0.4);
  const Complex c = r.coord_scale;
  const Complex ak2 = ak * std::polar(1.0, r.gauge_delta) * std::pow(c, -2);
  const Complex bn2 = bn * std::polar(1.0, -2.0 * r.gauge_delta) * std::pow(c, -3);
  CHECK(std::abs(ak2 - r.a.c[1]) < 1e-14);
  CHECK(std::abs(bn2 - r.b.c[2]) < 1e-14);
  CHECK(std::abs(r.psi0 + ak2 * ak2 * bn2) < 1e-14);

  auto plain = radial_spec(0, 0, 1.0, 2.0);
  CHECK_FALSE(plain.normalization_applied);
  CHECK(plain.psi0 == Complex(-2.0));
}

TEST_CASE("outer_symmetry_order examples") {
  auto o = outer_symmetry_order(0, 0, 1.0);
  CHECK(std::abs(o.p_order - 1.0) < 1e-15);
  CHECK(su3::maxabs(o.T - Matrix3::Identity()) < 1e-15);

  o = outer_symmetry_order(1, 0, 1.0);
  CHECK(std::abs(o.p_order - std::polar(1.0, 6.0 * kPi / 5.0)) < 1e-15);
  CHECK(std::abs(o.tau_order - std::polar(1.0, 2.0 * kPi / 5.0)) < 1e-15);

  o = outer_symmetry_order(0, 3, 1.0);
  CHECK(std::abs(o.p_order + 1.0) < 1e-15);

  for (auto [k, n] : {std::pair{0, 0}, std::pair{1, 0}, std::pair{0, 3}, std::pair{2, 1}}) {
    auto s = outer_symmetry_order(k, n, 2.0);
    auto h = homogeneity_params(k, n, 2.0);
    CHECK(std::abs(h.q(s.t_hat) - 1.0) < 1e-14);
    auto spec = radial_spec(k, n, 1.0, 1.5);
    CHECK(check_potential_symmetry(spec, s.p_order, 1.0, s.T) < 1e-13);
  }
}
