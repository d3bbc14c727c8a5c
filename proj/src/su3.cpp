#include "lagdpw/su3.hpp"

#include <cmath>

#include <unsupported/Eigen/MatrixFunctions>

#include "lagdpw/error.hpp"

namespace lagdpw {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::SingularLoop: return "SingularLoop";
    case ErrorKind::OutsideBigCell: return "OutsideBigCell";
    case ErrorKind::IllConditioned: return "IllConditioned";
    case ErrorKind::NotVacuum: return "NotVacuum";
    case ErrorKind::PoleAtOrigin: return "PoleAtOrigin";
    case ErrorKind::PoleOnPath: return "PoleOnPath";
    case ErrorKind::TruncationOverflow: return "TruncationOverflow";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::SeedTooLarge: return "SeedTooLarge";
    case ErrorKind::NotRadialPIII: return "NotRadialPIII";
    case ErrorKind::GridTooCoarse: return "GridTooCoarse";
    case ErrorKind::SchemaError: return "SchemaError";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

namespace su3 {

namespace {
const Complex I1{0.0, 1.0};

Matrix3 make_P() {
  Matrix3 p = Matrix3::Zero();
  p(0, 1) = std::polar(1.0, 2.0 * kPi / 3.0);  // epsilon^2
  p(1, 0) = std::polar(1.0, 4.0 * kPi / 3.0);  // epsilon^4
  p(2, 2) = 1.0;
  return p;
}

Matrix3 make_A() {
  Matrix3 a = Matrix3::Zero();
  a(0, 2) = I1;
  a(1, 0) = I1;
  a(2, 1) = I1;
  return a;
}
}  // namespace

Complex epsilon() { return std::polar(1.0, kPi / 3.0); }
Complex alpha() { return std::polar(1.0, 2.0 * kPi / 3.0); }

const Matrix3& P() {
  static const Matrix3 p = make_P();
  return p;
}

const Matrix3& clifford_A() {
  static const Matrix3 a = make_A();
  return a;
}

Matrix3 sigma_alg(const Matrix3& X) {
  // P is unitary, so P^{-1} = P^*.
  return -P() * X.transpose() * P().adjoint();
}

Matrix3 sigma_grp(const Matrix3& g) {
  return P() * g.transpose().inverse() * P().adjoint();
}

Matrix3 tau(const Matrix3& X) { return -X.adjoint(); }

Matrix3 tau_grp(const Matrix3& g) { return g.adjoint().inverse(); }

Matrix3 eigenspace_project(const Matrix3& X, int k) {
  // (1/6) sum_j epsilon^{-jk} sigma^j(X)
  Matrix3 acc = Matrix3::Zero();
  Matrix3 term = X;
  for (int j = 0; j < 6; ++j) {
    acc += std::polar(1.0, -kPi * j * k / 3.0) * term;
    term = sigma_alg(term);
  }
  return acc / 6.0;
}

double eigenspace_residual(const Matrix3& X, int k) {
  Matrix3 d = sigma_alg(X) - std::polar(1.0, kPi * mod(k, 6) / 3.0) * X;
  return maxabs(d) + std::abs(X.trace());
}

double su3_residual(const Matrix3& X) {
  return maxabs(X + X.adjoint()) + std::abs(X.trace());
}

double unitarity_residual(const Matrix3& g) {
  return opnorm(g.adjoint() * g - Matrix3::Identity());
}

double determinant_residual(const Matrix3& g) {
  return std::abs(g.determinant() - 1.0);
}

Matrix3 mask_to_grade(const Matrix3& X, int degree) {
  Matrix3 out = Matrix3::Zero();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (slot_allowed(i, j, degree)) out(i, j) = X(i, j);
  return out;
}

double grade_violation(const Matrix3& X, int degree) {
  double worst = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (!slot_allowed(i, j, degree)) worst = std::max(worst, std::abs(X(i, j)));
  return worst;
}

Matrix3 expm(const Matrix3& X) { return X.exp(); }

double opnorm(const Matrix3& X) {
  Eigen::JacobiSVD<Matrix3> svd(X);
  return svd.singularValues()(0);
}

double maxabs(const Matrix3& X) { return X.cwiseAbs().maxCoeff(); }

}  // namespace su3
}  // namespace lagdpw
