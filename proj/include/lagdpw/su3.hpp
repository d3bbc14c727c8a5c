#pragma once

#include <complex>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

namespace lagdpw {

using Complex = std::complex<double>;
using Matrix3 = Eigen::Matrix3cd;
using Vector3 = Eigen::Vector3cd;

inline constexpr double kPi = 3.14159265358979323846;

// Nonnegative residue of d modulo m.
constexpr int mod(int d, int m) { return ((d % m) + m) % m; }

namespace su3 {

// epsilon = e^{i pi/3} generates the order-6 twist; alpha = epsilon^2.
Complex epsilon();
Complex alpha();

// The intertwiner of the order-6 automorphism.
const Matrix3& P();

// Constant Clifford-torus potential coefficient [[0,0,i],[i,0,0],[0,i,0]].
const Matrix3& clifford_A();

// Algebra automorphism X -> -P X^t P^{-1}; order 6, eigenvalues epsilon^k.
Matrix3 sigma_alg(const Matrix3& X);

// Group automorphism g -> P (g^t)^{-1} P^{-1}.
Matrix3 sigma_grp(const Matrix3& g);

// Real-form involutions: X -> -conj(X)^t on the algebra, g -> (conj(g)^t)^{-1}.
Matrix3 tau(const Matrix3& X);
Matrix3 tau_grp(const Matrix3& g);

// Component of X in the epsilon^k eigenspace of sigma_alg. For traceless X
// the result lies in g_k and the six projections sum to X.
Matrix3 eigenspace_project(const Matrix3& X, int k);

// ||sigma_alg(X) - epsilon^k X|| + |tr X|.
double eigenspace_residual(const Matrix3& X, int k);

// ||X + X^*|| + |tr X|; zero exactly on su(3).
double su3_residual(const Matrix3& X);

double unitarity_residual(const Matrix3& g);
double determinant_residual(const Matrix3& g);

// Degree-d coefficients of a sigma-twisted loop only use entries (i, j) with
// j - i = d (mod 3). The grading is multiplicative, so it survives products
// and inverses of group loops as well as algebra loops.
constexpr bool slot_allowed(int row, int col, int degree) {
  return mod(col - row, 3) == mod(degree, 3);
}

// Zeroes the entries a degree-d twisted coefficient may not use.
Matrix3 mask_to_grade(const Matrix3& X, int degree);

// Max entry in the slots a degree-d twisted coefficient may not use.
double grade_violation(const Matrix3& X, int degree);

// Scaling-and-squaring Pade exponential.
Matrix3 expm(const Matrix3& X);

// Spectral norm.
double opnorm(const Matrix3& X);

// Largest entry modulus.
double maxabs(const Matrix3& X);

}  // namespace su3
}  // namespace lagdpw
