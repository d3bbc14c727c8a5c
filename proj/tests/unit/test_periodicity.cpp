#include <cmath>

#include "doctest.h"
#include "helpers.hpp"
#include "lagdpw/periodicity.hpp"

using namespace lagdpw;

TEST_CASE("monodromy values") {
  CHECK((monodromy(0.0, 1.0) - Matrix3::Identity()).norm() < 1e-15);
  const Matrix3 m = monodromy(2.0 * kPi / 3.0, 1.0);
  CHECK((m - std::polar(1.0, 4.0 * kPi / 3.0) * Matrix3::Identity()).norm() < 1e-10);
  std::mt19937_64 rng(3);
  std::normal_distribution<double> n(0.0, 2.0);
  for (int i = 0; i < 20; ++i) {
    const Complex d(n(rng), n(rng));
    const Complex l0 = std::polar(1.0, n(rng));
    CHECK(su3::unitarity_residual(monodromy(d, l0)) < 1e-12);
  }
}

TEST_CASE("monodromy is a homomorphism in delta") {
  std::mt19937_64 rng(4);
  std::normal_distribution<double> n(0.0, 1.0);
  for (int i = 0; i < 20; ++i) {
    const Complex d1(n(rng), n(rng)), d2(n(rng), n(rng));
    const Complex l0 = std::polar(1.0, n(rng));
    CHECK((monodromy(d1 + d2, l0) - monodromy(d1, l0) * monodromy(d2, l0)).norm() < 1e-10);
  }
}

TEST_CASE("closing delta closed form") {
  CHECK(closing_delta(1, 0, 0, 1.0) == Complex(2.0 * kPi / 3.0, 0.0));
  CHECK(closing_delta(0, 0, 0, 1.0) == Complex(0.0, 0.0));
  const Complex d = closing_delta(0, 0, 1, 1.0);
  CHECK(std::abs(d - Complex(-kPi / 3.0, kPi / std::sqrt(3.0))) < 1e-15);
}

TEST_CASE("closing check on examples") {
  const auto r = check_closing(closing_delta(1, 0, 0, 1.0), 1.0);
  CHECK(r.closed);
  CHECK(std::abs(r.c - std::polar(1.0, 4.0 * kPi / 3.0)) < 1e-12);
  CHECK(r.root_index == 2);
  CHECK_FALSE(check_closing(0.1, 1.0).closed);
  CHECK(check_closing(closing_delta(1, -1, 0, Complex(0.0, 1.0)), Complex(0.0, 1.0)).closed);
}

TEST_CASE("lattice closure for all small tuples") {
  for (Complex l0 : {Complex(1.0, 0.0), Complex(0.0, 1.0), std::polar(1.0, kPi / 7.0)})
    for (int a = -1; a <= 1; ++a)
      for (int b = -1; b <= 1; ++b)
        for (int c = -1; c <= 1; ++c) {
          const auto r = check_closing(closing_delta(a, b, c, l0), l0);
          CHECK(r.closed);
          CHECK(std::abs(r.c * r.c * r.c - 1.0) < 1e-12);
        }
}

TEST_CASE("closing delta rotates with lambda0") {
  for (Complex l0 : {Complex(0.0, 1.0), std::polar(1.0, kPi / 7.0), std::polar(1.0, 2.5)})
    for (int a = -1; a <= 1; ++a)
      for (int b = -1; b <= 1; ++b)
        CHECK(closing_delta(a, b, 1, l0) == closing_delta(a, b, 1, 1.0) * l0);
}

TEST_CASE("translational frame of the Clifford potential is the exponential") {
  LoopMatrix d(-1, {su3::clifford_A(), Matrix3::Zero(), su3::tau(su3::clifford_A())}, true);
  const double x = 0.7;
  const LoopMatrix f = translational_frame(d, x, 16);
  for (Complex l : circle_samples(12)) {
    const Matrix3 expected = su3::expm(x * (su3::clifford_A() / l + l * su3::tau(su3::clifford_A())));
    CHECK(su3::opnorm(f(l) - expected) < 1e-10);
  }
  const LoopMatrix f0 = translational_frame(d, 0.0, 16);
  CHECK(wiener_distance(f0, LoopMatrix::identity()) < 1e-12);
}

TEST_CASE("translational cocycle for generic twisted D") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 3; ++i) {
    const LoopMatrix d = testutil::random_twisted_algebra(rng, -1, 1, 1.5);
    CHECK(translational_cocycle_residual(d, 0.3, 0.5, 16) < 1e-7);
  }
  LoopMatrix bad(-2, {Matrix3::Identity()}, true);
  CHECK_THROWS(translational_frame(bad, 0.3, 16));
}
