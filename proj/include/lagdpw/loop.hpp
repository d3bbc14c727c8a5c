#pragma once

#include <functional>
#include <vector>

#include "lagdpw/su3.hpp"

namespace lagdpw {

// Truncated Laurent series sum_d lambda^d g_d with 3x3 complex coefficients,
// stored densely over [min_degree, max_degree]. Degrees outside the stored
// window read as zero. The twisted flag records that the coefficients follow
// the sigma-twist grading (see su3::slot_allowed).
class LoopMatrix {
 public:
  LoopMatrix() = default;
  LoopMatrix(int min_degree, std::vector<Matrix3> coeffs, bool twisted = false);

  static LoopMatrix identity(bool twisted = true);
  static LoopMatrix constant(const Matrix3& m, bool twisted = false);
  static LoopMatrix monomial(int degree, const Matrix3& m, bool twisted = false);

  bool empty() const { return coeffs_.empty(); }
  int min_degree() const { return min_degree_; }
  int max_degree() const { return min_degree_ + static_cast<int>(coeffs_.size()) - 1; }
  bool twisted() const { return twisted_; }
  void set_twisted(bool t) { twisted_ = t; }

  Matrix3 coeff(int degree) const;
  void set_coeff(int degree, const Matrix3& m);
  const std::vector<Matrix3>& coeffs() const { return coeffs_; }

  Matrix3 operator()(Complex lambda) const;

  // Sum over degrees of the entrywise max norm.
  double wiener_norm() const;

  // max(|g_N|, |g_{-N}|) in the entrywise max norm; the truncation audit.
  double tail_norm(int n) const;

  // Restriction to degrees [lo, hi].
  LoopMatrix truncated(int lo, int hi) const;

  // The loop lambda -> g(1/conj(lambda))^*, which equals g(lambda)^* on S^1.
  LoopMatrix adjoint() const;

  LoopMatrix& operator+=(const LoopMatrix& other);
  LoopMatrix& operator-=(const LoopMatrix& other);
  LoopMatrix& operator*=(Complex s);

 private:
  int min_degree_ = 0;
  std::vector<Matrix3> coeffs_;
  bool twisted_ = false;
};

LoopMatrix operator+(LoopMatrix a, const LoopMatrix& b);
LoopMatrix operator-(LoopMatrix a, const LoopMatrix& b);
LoopMatrix operator*(Complex s, LoopMatrix a);

// Cauchy product; the bounded overload keeps degrees |d| <= trunc.
LoopMatrix loop_product(const LoopMatrix& g, const LoopMatrix& h);
LoopMatrix loop_product(const LoopMatrix& g, const LoopMatrix& h, int trunc);

// Inverse loop. Plus and minus loops are inverted as power series in lambda
// or lambda^{-1}; general Laurent loops are inverted pointwise on S^1.
// Throws SingularLoop if the leading coefficient (or a sample) has condition
// number above 1e12.
LoopMatrix loop_inverse(const LoopMatrix& g, int trunc);

// Equispaced points on S^1, rotated off the sixth roots of unity.
std::vector<Complex> circle_samples(int count);

// max over sampled lambda of ||g(epsilon lambda) - sigma_grp(g(lambda))||.
double twist_residual(const LoopMatrix& g, int samples = 24);

// max over degrees of eigenspace_residual(g_d, d); for algebra-valued loops.
double algebra_twist_residual(const LoopMatrix& x);

// max over degrees of entries outside the twisted grading.
double grade_violation(const LoopMatrix& g);

// max over sampled lambda of ||g(lambda) - h(lambda)||.
double sup_distance(const LoopMatrix& g, const LoopMatrix& h, int samples = 24);

// Wiener norm of g - h.
double wiener_distance(const LoopMatrix& g, const LoopMatrix& h);

// Fourier coefficients in [lo, hi] of a matrix function sampled at `samples`
// equispaced points of S^1.
LoopMatrix loop_from_samples(const std::function<Matrix3(Complex)>& fn, int lo, int hi,
                             int samples, bool twisted = false);

// Pointwise exponential of an algebra loop, resampled onto [lo, hi].
LoopMatrix loop_exp(const LoopMatrix& x, int lo, int hi, int samples = 128);

}  // namespace lagdpw
