#include <cmath>
#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "lagdpw/error.hpp"
#include "lagdpw/loop.hpp"

using namespace lagdpw;
using testutil::random_matrix;

namespace {
const Complex I1{0.0, 1.0};

Matrix3 E(int i, int j) {
  Matrix3 m = Matrix3::Zero();
  m(i, j) = 1.0;
  return m;
}
}  // namespace

TEST_CASE("sigma_alg examples") {
  Matrix3 d = Matrix3::Zero();
  d(0, 0) = 1.0;
  d(1, 1) = -1.0;
  CHECK(su3::maxabs(su3::sigma_alg(d) - d) < 1e-15);
  CHECK(su3::maxabs(su3::sigma_alg(Matrix3::Zero())) == 0.0);
  const Matrix3& a = su3::clifford_A();
  Complex e5 = std::pow(su3::epsilon(), 5);
  CHECK(su3::maxabs(su3::sigma_alg(a) - e5 * a) < 1e-14);
}

TEST_CASE("tau examples") {
  Matrix3 d = Matrix3::Zero();
  d(0, 0) = I1;
  d(1, 1) = I1;
  d(2, 2) = -2.0 * I1;
  CHECK(su3::maxabs(su3::tau(d) - d) == 0.0);
  Matrix3 expected = Matrix3::Zero();
  expected(0, 1) = I1;
  expected(1, 2) = I1;
  expected(2, 0) = I1;
  CHECK(su3::maxabs(su3::tau(su3::clifford_A()) - expected) == 0.0);
  CHECK(su3::maxabs(su3::tau(Matrix3::Zero())) == 0.0);
}

TEST_CASE("eigenspace_project examples") {
  CHECK(su3::maxabs(su3::eigenspace_project(E(0, 1), 1) - E(0, 1)) < 1e-14);
  CHECK(su3::maxabs(su3::eigenspace_project(E(0, 1), 2)) < 1e-15);
  Matrix3 d = Matrix3::Zero();
  d(0, 0) = 1.0;
  d(1, 1) = 1.0;
  d(2, 2) = -2.0;
  CHECK(su3::maxabs(su3::eigenspace_project(d, 3) - d) < 1e-14);
}

TEST_CASE("sigma has order six and projections decompose") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 100; ++t) {
    Matrix3 x = random_matrix(rng);
    Matrix3 y = x;
    for (int j = 0; j < 6; ++j) y = su3::sigma_alg(y);
    CHECK(su3::maxabs(y - x) < 1e-13);

    Matrix3 sum = Matrix3::Zero();
    for (int k = 0; k < 6; ++k) {
      Matrix3 pk = su3::eigenspace_project(x, k);
      sum += pk;
      CHECK(su3::maxabs(su3::eigenspace_project(pk, k) - pk) < 1e-14);
      CHECK(su3::maxabs(su3::eigenspace_project(pk, k + 1)) < 1e-14);
      CHECK(su3::grade_violation(pk, k) < 1e-14);
    }
    CHECK(su3::maxabs(sum - x) < 1e-14);
  }
}

TEST_CASE("tau is an involution swapping g_k and g_-k") {
  std::mt19937_64 rng(12);
  for (int k = 0; k < 6; ++k) {
    Matrix3 x = random_matrix(rng);
    x -= (x.trace() / 3.0) * Matrix3::Identity();
    Matrix3 pk = su3::eigenspace_project(x, k);
    CHECK(su3::maxabs(su3::tau(su3::tau(pk)) - pk) == 0.0);
    CHECK(su3::eigenspace_residual(su3::tau(pk), -k) < 1e-14);
  }
}

TEST_CASE("loop_product examples") {
  std::mt19937_64 rng(13);
  LoopMatrix g(-2, {random_matrix(rng), random_matrix(rng), random_matrix(rng)});
  CHECK(wiener_distance(loop_product(LoopMatrix::identity(), g, 16), g) == 0.0);

  Matrix3 a = random_matrix(rng), b = random_matrix(rng);
  LoopMatrix p = loop_product(LoopMatrix::monomial(-1, a), LoopMatrix::monomial(1, b), 4);
  CHECK(p.min_degree() == 0);
  CHECK(p.max_degree() == 0);
  CHECK(su3::maxabs(p.coeff(0) - a * b) == 0.0);

  LoopMatrix xa = LoopMatrix::monomial(-1, su3::clifford_A(), true);
  LoopMatrix e1 = loop_exp(xa, -16, 0);
  LoopMatrix e2 = loop_exp(Complex(-1.0) * xa, -16, 0);
  LoopMatrix prod = loop_product(e1, e2, 16);
  CHECK(wiener_distance(prod.truncated(-16, 16), LoopMatrix::identity()) < 1e-12);
}

TEST_CASE("loop_inverse examples") {
  LoopMatrix id = loop_inverse(LoopMatrix::identity(), 8);
  CHECK(wiener_distance(id, LoopMatrix::identity()) == 0.0);

  Matrix3 u = su3::expm(su3::clifford_A() + su3::tau(su3::clifford_A()));
  LoopMatrix inv = loop_inverse(LoopMatrix::constant(u), 4);
  CHECK(wiener_distance(inv, LoopMatrix::constant(u.adjoint())) < 1e-13);

  LoopMatrix xa = LoopMatrix::monomial(-1, su3::clifford_A(), true);
  LoopMatrix e1 = loop_exp(xa, -16, 0);
  LoopMatrix e2 = loop_exp(Complex(-1.0) * xa, -16, 0);
  CHECK(wiener_distance(loop_inverse(e1, 16), e2) < 1e-12);

  CHECK_THROWS_AS(loop_inverse(LoopMatrix::constant(Matrix3::Zero()), 4), Error);
  Matrix3 sing = Matrix3::Identity();
  sing(2, 2) = 0.0;
  try {
    loop_inverse(LoopMatrix::constant(sing), 4);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::SingularLoop);
  }
}

TEST_CASE("general Laurent inverse by sampling") {
  std::mt19937_64 rng(14);
  auto x = testutil::random_twisted_algebra(rng, -1, 1, 1.0);
  LoopMatrix g = loop_exp(x, -16, 16);
  LoopMatrix gi = loop_inverse(g, 16);
  CHECK(sup_distance(loop_product(g, gi, 40), LoopMatrix::identity()) < 1e-10);
}

TEST_CASE("twist_residual examples") {
  CHECK(twist_residual(LoopMatrix::identity()) < 1e-15);
  LoopMatrix x(-1, {su3::clifford_A(), Matrix3::Zero(), su3::tau(su3::clifford_A())}, true);
  CHECK(twist_residual(loop_exp(x, -20, 20)) < 1e-10);
  Matrix3 d = Matrix3::Zero();
  d(0, 0) = 2.0;
  d(1, 1) = 0.5;
  d(2, 2) = 1.0;
  // diag(t, 1/t, 1) is fixed by sigma_grp, so it is a twisted constant loop.
  CHECK(twist_residual(LoopMatrix::constant(d)) < 1e-15);
  d(1, 1) = 1.0;
  d(2, 2) = 0.5;
  CHECK(twist_residual(LoopMatrix::constant(d)) > 0.1);
}

TEST_CASE("twisted algebra loops respect the eigenspace grading") {
  std::mt19937_64 rng(15);
  auto x = testutil::random_twisted_algebra(rng, -4, 4, 2.0);
  CHECK(algebra_twist_residual(x) < 1e-12);
  CHECK(grade_violation(x) < 1e-15);
}

TEST_CASE("loop_product is associative on twisted loops") {
  std::mt19937_64 rng(16);
  auto a = testutil::random_twisted_algebra(rng, -3, 3, 1.0);
  auto b = testutil::random_twisted_algebra(rng, -3, 3, 1.0);
  auto c = testutil::random_twisted_algebra(rng, -3, 3, 1.0);
  LoopMatrix l = loop_product(loop_product(a, b, 16), c, 16);
  LoopMatrix r = loop_product(a, loop_product(b, c, 16), 16);
  CHECK(wiener_distance(l, r) < 1e-14);
  CHECK(l.twisted());
}

TEST_CASE("adjoint matches pointwise conjugate transpose on S^1") {
  std::mt19937_64 rng(17);
  auto a = testutil::random_twisted_algebra(rng, -3, 2, 1.0);
  for (Complex l : circle_samples(5)) CHECK(su3::maxabs(a.adjoint()(l) - a(l).adjoint()) < 1e-14);
}
