#include "lagdpw/factorization.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/QR>
#include <Eigen/SVD>

#include "lagdpw/error.hpp"

namespace lagdpw {

namespace {

constexpr double kMaxCondition = 1e12;
constexpr int kResidualSamples = 24;

using MatrixX = Eigen::MatrixXcd;
using VectorX = Eigen::VectorXcd;

double svd_condition(const MatrixX& m) {
  Eigen::JacobiSVD<MatrixX> svd(m);
  const auto& s = svd.singularValues();
  const double lo = s(s.size() - 1);
  return lo > 0.0 ? s(0) / lo : INFINITY;
}

VectorX solve_checked(const MatrixX& m, const VectorX& rhs) {
  Eigen::JacobiSVD<MatrixX> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& s = svd.singularValues();
  const double lo = s(s.size() - 1);
  if (!(lo > 0.0 && s(0) / lo <= kMaxCondition))
    fail(ErrorKind::OutsideBigCell, "mode-matching system is singular");
  return svd.solve(rhs);
}

}  // namespace

BirkhoffFactors birkhoff(const LoopMatrix& g, int trunc) {
  if (trunc < 1) fail(ErrorKind::InvalidArgument, "trunc must be positive");
  const bool tw = g.twisted();
  const int n = trunc;
  // Unknown B_k for k = -n..-1, indexed kk = k + n. Equations: the
  // lambda^m coefficient of f_minus^{-1} g vanishes for m = -n..-1.
  std::vector<Matrix3> b(n, Matrix3::Zero());

  if (tw) {
    // Row i of B_k has its only allowed slot at column (i + k) mod 3, and for
    // each m only the column c with c - i = m (mod 3) carries an equation.
    for (int i = 0; i < 3; ++i) {
      MatrixX m(n, n);
      VectorX rhs(n);
      for (int mm = -n; mm <= -1; ++mm) {
        const int c = mod(i + mm, 3);
        rhs(mm + n) = -g.coeff(mm)(i, c);
        for (int k = -n; k <= -1; ++k) {
          const int j = mod(i + k, 3);
          m(mm + n, k + n) = g.coeff(mm - k)(j, c);
        }
      }
      VectorX x = solve_checked(m, rhs);
      for (int k = -n; k <= -1; ++k) b[k + n](i, mod(i + k, 3)) = x(k + n);
    }
  } else {
    MatrixX m(3 * n, 3 * n);
    MatrixX rhs(3 * n, 3);
    for (int mm = -n; mm <= -1; ++mm)
      for (int c = 0; c < 3; ++c) {
        const int row = 3 * (mm + n) + c;
        for (int i = 0; i < 3; ++i) rhs(row, i) = -g.coeff(mm)(i, c);
        for (int k = -n; k <= -1; ++k) {
          const Matrix3 gk = g.coeff(mm - k);
          for (int j = 0; j < 3; ++j) m(row, 3 * (k + n) + j) = gk(j, c);
        }
      }
    if (!(svd_condition(m) <= kMaxCondition))
      fail(ErrorKind::OutsideBigCell, "mode-matching system is singular");
    Eigen::FullPivLU<MatrixX> lu(m);
    MatrixX x = lu.solve(rhs);
    for (int k = -n; k <= -1; ++k)
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) b[k + n](i, j) = x(3 * (k + n) + j, i);
  }

  std::vector<Matrix3> coeffs(b);
  coeffs.push_back(Matrix3::Identity());
  LoopMatrix fminus_inv(-n, std::move(coeffs), tw);

  BirkhoffFactors out;
  out.f_minus = loop_inverse(fminus_inv, n);
  out.f_minus.set_coeff(0, Matrix3::Identity());
  const LoopMatrix prod = loop_product(fminus_inv, g);
  out.f_plus = prod.truncated(0, std::max(0, prod.max_degree()));
  out.f_plus.set_twisted(tw);
  out.residual = sup_distance(g, loop_product(out.f_minus, out.f_plus), kResidualSamples);
  return out;
}

namespace {

// One orthonormalization problem. Columns are g lambda^j e_c; `cols` lists
// (j, c) in sweep order with the j = 0 columns last. Rows are the (mode, row)
// pairs listed in `rows`.
struct QrBlock {
  std::vector<std::pair<int, int>> cols;
  std::vector<std::pair<int, int>> rows;
};

}  // namespace

IwasawaFactors iwasawa(const LoopMatrix& g, int trunc) {
  if (trunc < 1) fail(ErrorKind::InvalidArgument, "trunc must be positive");
  if (g.empty()) fail(ErrorKind::SingularLoop, "empty loop");
  const bool tw = g.twisted();
  const int big = 2 * trunc;
  const int lo = g.min_degree();
  const int hi = g.max_degree() + big;

  std::vector<QrBlock> blocks;
  if (tw) {
    // g lambda^j e_c has entries only at (mode m, row r) with m + r = j + c
    // (mod 3), so the problem splits into three orthogonal classes and the
    // j = 0 part of each class is the single column c = class.
    blocks.resize(3);
    for (int cls = 0; cls < 3; ++cls) {
      for (int j = big; j >= 1; --j)
        for (int c = 0; c < 3; ++c)
          if (mod(j + c, 3) == cls) blocks[cls].cols.emplace_back(j, c);
      blocks[cls].cols.emplace_back(0, cls);
      for (int m = lo; m <= hi; ++m)
        for (int r = 0; r < 3; ++r)
          if (mod(m + r, 3) == cls) blocks[cls].rows.emplace_back(m, r);
    }
  } else {
    blocks.resize(1);
    for (int j = big; j >= 1; --j)
      for (int c = 0; c < 3; ++c) blocks[0].cols.emplace_back(j, c);
    for (int c = 0; c < 3; ++c) blocks[0].cols.emplace_back(0, c);
    for (int m = lo; m <= hi; ++m)
      for (int r = 0; r < 3; ++r) blocks[0].rows.emplace_back(m, r);
  }

  std::vector<Matrix3> fcoef(hi - lo + 1, Matrix3::Zero());
  Matrix3 v0 = Matrix3::Zero();
  double rmax = 0.0, rmin = INFINITY;

  for (const QrBlock& blk : blocks) {
    const int nr = static_cast<int>(blk.rows.size());
    const int nc = static_cast<int>(blk.cols.size());
    MatrixX a = MatrixX::Zero(nr, nc);
    for (int ri = 0; ri < nr; ++ri) {
      const auto [m, r] = blk.rows[ri];
      for (int ci = 0; ci < nc; ++ci) {
        const auto [j, c] = blk.cols[ci];
        a(ri, ci) = g.coeff(m - j)(r, c);
      }
    }
    Eigen::HouseholderQR<MatrixX> qr(a);
    const MatrixX& packed = qr.matrixQR();
    for (int d = 0; d < nc; ++d) {
      const double rd = std::abs(packed(d, d));
      rmax = std::max(rmax, rd);
      rmin = std::min(rmin, rd);
    }
    // The trailing columns (j = 0) span g C^3 modulo lambda g H_+, whose
    // orthonormal basis is F e_c.
    const int nlast = tw ? 1 : 3;
    MatrixX sel = MatrixX::Zero(nr, nlast);
    for (int t = 0; t < nlast; ++t) sel(nc - nlast + t, t) = 1.0;
    MatrixX q = qr.householderQ() * sel;
    Eigen::VectorXcd phase(nlast);
    for (int t = 0; t < nlast; ++t) {
      const Complex rd = packed(nc - nlast + t, nc - nlast + t);
      phase(t) = std::abs(rd) > 0.0 ? rd / std::abs(rd) : Complex(1.0);
      q.col(t) *= phase(t);
    }
    for (int t = 0; t < nlast; ++t) {
      const int c = blk.cols[nc - nlast + t].second;
      for (int s = t; s < nlast; ++s) {
        const int cs = blk.cols[nc - nlast + s].second;
        v0(c, cs) = std::conj(phase(t)) * packed(nc - nlast + t, nc - nlast + s);
      }
      for (int ri = 0; ri < nr; ++ri) {
        const auto [m, r] = blk.rows[ri];
        fcoef[m - lo](r, c) = q(ri, t);
      }
    }
  }

  IwasawaFactors out;
  out.condition = (rmin > 0.0) ? (rmax / rmin) * (rmax / rmin) : INFINITY;
  if (!(out.condition <= kMaxCondition))
    fail(ErrorKind::IllConditioned,
         "Gram condition estimate " + std::to_string(out.condition) + " exceeds 1e12");
  out.unitary = LoopMatrix(lo, std::move(fcoef), tw);
  for (int c = 0; c < 3; ++c) v0(c, c) = std::abs(v0(c, c));

  const LoopMatrix vfull = loop_product(out.unitary.adjoint(), g);
  out.v_plus = vfull.truncated(0, g.max_degree() + big);
  out.v_plus.set_coeff(0, v0);
  out.v_plus.set_twisted(tw);

  double res = sup_distance(g, loop_product(out.unitary, out.v_plus), kResidualSamples);
  for (Complex l : circle_samples(kResidualSamples))
    res = std::max(res, su3::unitarity_residual(out.unitary(l)));
  if (tw) res = std::max(res, twist_residual(out.unitary, kResidualSamples));
  out.residual = res;
  return out;
}

}  // namespace lagdpw
