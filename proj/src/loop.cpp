#include "lagdpw/loop.hpp"

#include <algorithm>
#include <cmath>

#include "lagdpw/error.hpp"

namespace lagdpw {

namespace {

constexpr double kMaxCondition = 1e12;

double condition(const Matrix3& m) {
  Eigen::JacobiSVD<Matrix3> svd(m);
  const auto& s = svd.singularValues();
  if (s(2) == 0.0) return INFINITY;
  return s(0) / s(2);
}

Matrix3 checked_inverse(const Matrix3& m, const char* what) {
  if (!(condition(m) <= kMaxCondition)) fail(ErrorKind::SingularLoop, what);
  return m.inverse();
}

}  // namespace

LoopMatrix::LoopMatrix(int min_degree, std::vector<Matrix3> coeffs, bool twisted)
    : min_degree_(min_degree), coeffs_(std::move(coeffs)), twisted_(twisted) {}

LoopMatrix LoopMatrix::identity(bool twisted) {
  return LoopMatrix(0, {Matrix3::Identity()}, twisted);
}

LoopMatrix LoopMatrix::constant(const Matrix3& m, bool twisted) {
  return LoopMatrix(0, {m}, twisted);
}

LoopMatrix LoopMatrix::monomial(int degree, const Matrix3& m, bool twisted) {
  return LoopMatrix(degree, {m}, twisted);
}

Matrix3 LoopMatrix::coeff(int degree) const {
  if (coeffs_.empty() || degree < min_degree_ || degree > max_degree()) return Matrix3::Zero();
  return coeffs_[degree - min_degree_];
}

void LoopMatrix::set_coeff(int degree, const Matrix3& m) {
  if (coeffs_.empty()) {
    min_degree_ = degree;
    coeffs_.push_back(m);
    return;
  }
  if (degree < min_degree_) {
    coeffs_.insert(coeffs_.begin(), min_degree_ - degree, Matrix3::Zero());
    min_degree_ = degree;
  } else if (degree > max_degree()) {
    coeffs_.resize(degree - min_degree_ + 1, Matrix3::Zero());
  }
  coeffs_[degree - min_degree_] = m;
}

Matrix3 LoopMatrix::operator()(Complex lambda) const {
  // Horner in lambda over the stored window, then shift by lambda^min.
  Matrix3 acc = Matrix3::Zero();
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * lambda + *it;
  return acc * std::pow(lambda, min_degree_);
}

double LoopMatrix::wiener_norm() const {
  double s = 0.0;
  for (const auto& c : coeffs_) s += su3::maxabs(c);
  return s;
}

double LoopMatrix::tail_norm(int n) const {
  return std::max(su3::maxabs(coeff(n)), su3::maxabs(coeff(-n)));
}

LoopMatrix LoopMatrix::truncated(int lo, int hi) const {
  LoopMatrix out;
  out.twisted_ = twisted_;
  if (empty()) return out;
  lo = std::max(lo, min_degree_);
  hi = std::min(hi, max_degree());
  if (lo > hi) return out;
  out.min_degree_ = lo;
  out.coeffs_.assign(coeffs_.begin() + (lo - min_degree_), coeffs_.begin() + (hi - min_degree_ + 1));
  return out;
}

LoopMatrix LoopMatrix::adjoint() const {
  LoopMatrix out;
  out.twisted_ = twisted_;
  if (empty()) return out;
  out.min_degree_ = -max_degree();
  out.coeffs_.reserve(coeffs_.size());
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) out.coeffs_.push_back(it->adjoint());
  return out;
}

LoopMatrix& LoopMatrix::operator+=(const LoopMatrix& other) {
  for (int d = other.min_degree(); d <= other.max_degree(); ++d)
    set_coeff(d, coeff(d) + other.coeff(d));
  twisted_ = twisted_ && other.twisted_;
  return *this;
}

LoopMatrix& LoopMatrix::operator-=(const LoopMatrix& other) {
  for (int d = other.min_degree(); d <= other.max_degree(); ++d)
    set_coeff(d, coeff(d) - other.coeff(d));
  twisted_ = twisted_ && other.twisted_;
  return *this;
}

LoopMatrix& LoopMatrix::operator*=(Complex s) {
  for (auto& c : coeffs_) c *= s;
  return *this;
}

LoopMatrix operator+(LoopMatrix a, const LoopMatrix& b) { return a += b; }
LoopMatrix operator-(LoopMatrix a, const LoopMatrix& b) { return a -= b; }
LoopMatrix operator*(Complex s, LoopMatrix a) { return a *= s; }

LoopMatrix loop_product(const LoopMatrix& g, const LoopMatrix& h) {
  if (g.empty() || h.empty()) return LoopMatrix({}, {}, g.twisted() && h.twisted());
  return loop_product(g, h, std::max({std::abs(g.min_degree() + h.min_degree()),
                                      std::abs(g.max_degree() + h.max_degree())}));
}

LoopMatrix loop_product(const LoopMatrix& g, const LoopMatrix& h, int trunc) {
  const bool tw = g.twisted() && h.twisted();
  if (g.empty() || h.empty()) return LoopMatrix(0, {}, tw);
  const int lo = std::max(-trunc, g.min_degree() + h.min_degree());
  const int hi = std::min(trunc, g.max_degree() + h.max_degree());
  if (lo > hi) return LoopMatrix(0, {}, tw);
  std::vector<Matrix3> out(hi - lo + 1, Matrix3::Zero());
  for (int i = g.min_degree(); i <= g.max_degree(); ++i) {
    const Matrix3& gi = g.coeffs()[i - g.min_degree()];
    const int jlo = std::max(h.min_degree(), lo - i);
    const int jhi = std::min(h.max_degree(), hi - i);
    for (int j = jlo; j <= jhi; ++j) out[i + j - lo].noalias() += gi * h.coeffs()[j - h.min_degree()];
  }
  return LoopMatrix(lo, std::move(out), tw);
}

LoopMatrix loop_inverse(const LoopMatrix& g, int trunc) {
  if (g.empty()) fail(ErrorKind::SingularLoop, "empty loop");
  const bool tw = g.twisted();
  if (g.min_degree() >= 0 || g.max_degree() <= 0) {
    // Power series in mu = lambda or 1/lambda; the leading coefficient is the
    // constant term (zero if the loop starts at a positive degree).
    const bool plus = g.min_degree() >= 0;
    const int s = plus ? 1 : -1;
    const Matrix3 g0inv = checked_inverse(g.coeff(0), "leading coefficient not invertible");
    const int span = plus ? g.max_degree() : -g.min_degree();
    std::vector<Matrix3> w(trunc + 1, Matrix3::Zero());
    w[0] = g0inv;
    for (int m = 1; m <= trunc; ++m) {
      Matrix3 acc = Matrix3::Zero();
      for (int j = 1; j <= std::min(m, span); ++j) acc.noalias() += g.coeff(s * j) * w[m - j];
      w[m] = -g0inv * acc;
    }
    if (plus) return LoopMatrix(0, std::move(w), tw);
    std::reverse(w.begin(), w.end());
    return LoopMatrix(-trunc, std::move(w), tw);
  }
  const int span = std::max(std::abs(g.min_degree()), std::abs(g.max_degree()));
  const int n = std::max(64, 4 * (trunc + span));
  LoopMatrix out = loop_from_samples(
      [&](Complex l) { return checked_inverse(g(l), "loop not invertible on S^1"); }, -trunc,
      trunc, n, tw);
  return out;
}

std::vector<Complex> circle_samples(int count) {
  std::vector<Complex> out(count);
  for (int j = 0; j < count; ++j) out[j] = std::polar(1.0, 2.0 * kPi * j / count + 0.1234567);
  return out;
}

double twist_residual(const LoopMatrix& g, int samples) {
  double worst = 0.0;
  const Complex eps = su3::epsilon();
  for (Complex l : circle_samples(samples)) {
    const Matrix3 gl = g(l);
    if (!(condition(gl) <= kMaxCondition)) fail(ErrorKind::SingularLoop, "loop not invertible");
    worst = std::max(worst, su3::opnorm(g(eps * l) - su3::sigma_grp(gl)));
  }
  return worst;
}

double algebra_twist_residual(const LoopMatrix& x) {
  double worst = 0.0;
  for (int d = x.min_degree(); d <= x.max_degree(); ++d)
    worst = std::max(worst, su3::eigenspace_residual(x.coeff(d), d));
  return worst;
}

double grade_violation(const LoopMatrix& g) {
  double worst = 0.0;
  for (int d = g.min_degree(); d <= g.max_degree(); ++d)
    worst = std::max(worst, su3::grade_violation(g.coeff(d), d));
  return worst;
}

double sup_distance(const LoopMatrix& g, const LoopMatrix& h, int samples) {
  double worst = 0.0;
  for (Complex l : circle_samples(samples)) worst = std::max(worst, su3::opnorm(g(l) - h(l)));
  return worst;
}

double wiener_distance(const LoopMatrix& g, const LoopMatrix& h) { return (g - h).wiener_norm(); }

LoopMatrix loop_from_samples(const std::function<Matrix3(Complex)>& fn, int lo, int hi,
                             int samples, bool twisted) {
  if (samples < hi - lo + 1) fail(ErrorKind::InvalidArgument, "too few samples for window");
  std::vector<Matrix3> vals(samples);
  for (int j = 0; j < samples; ++j) vals[j] = fn(std::polar(1.0, 2.0 * kPi * j / samples));
  std::vector<Matrix3> out(hi - lo + 1, Matrix3::Zero());
  for (int d = lo; d <= hi; ++d) {
    Matrix3 acc = Matrix3::Zero();
    for (int j = 0; j < samples; ++j)
      acc += vals[j] * std::polar(1.0, -2.0 * kPi * mod(d * j, samples) / samples);
    out[d - lo] = acc / static_cast<double>(samples);
  }
  LoopMatrix res(lo, std::move(out), twisted);
  if (twisted)
    for (int d = lo; d <= hi; ++d) res.set_coeff(d, su3::mask_to_grade(res.coeff(d), d));
  return res;
}

LoopMatrix loop_exp(const LoopMatrix& x, int lo, int hi, int samples) {
  return loop_from_samples([&](Complex l) { return su3::expm(x(l)); }, lo, hi,
                           std::max(samples, hi - lo + 1), x.twisted());
}

}  // namespace lagdpw
