#include "lagdpw/periodicity.hpp"

#include <cmath>

#include "lagdpw/error.hpp"
#include "lagdpw/factorization.hpp"

namespace lagdpw {

namespace {

void require_degree_one(const LoopMatrix& d) {
  if (d.empty() || d.min_degree() < -1 || d.max_degree() > 1)
    fail(ErrorKind::InvalidArgument, "D must have degrees in {-1, 0, 1}");
  if (algebra_twist_residual(d) > 1e-10) fail(ErrorKind::InvalidArgument, "D is not twisted");
}

}  // namespace

Matrix3 monodromy(Complex delta, Complex lambda0) {
  const Matrix3& a = su3::clifford_A();
  return su3::expm(delta / lambda0 * a + std::conj(delta) * lambda0 * su3::tau(a));
}

Complex closing_delta(int l1, int l2, int l3, Complex lambda0) {
  const Complex base((2 * l1 - l2 - l3) / 3.0, (l3 - l2) / std::sqrt(3.0));
  return base * kPi * lambda0;
}

ClosingResult check_closing(Complex delta, Complex lambda0, double tol) {
  const Matrix3 m = monodromy(delta, lambda0);
  ClosingResult best;
  best.residual = INFINITY;
  for (int r = 0; r < 3; ++r) {
    const Complex c = std::polar(1.0, 2.0 * kPi * r / 3.0);
    const double res = (m - c * Matrix3::Identity()).norm();
    if (res < best.residual) {
      best.residual = res;
      best.c = c;
      best.root_index = r;
    }
  }
  best.closed = best.residual < tol;
  return best;
}

LoopMatrix translational_frame(const LoopMatrix& d_matrix, double x, int trunc) {
  require_degree_one(d_matrix);
  LoopMatrix xd = d_matrix;
  xd *= Complex(x, 0.0);
  xd.set_twisted(true);
  const int samples = std::max(128, 4 * trunc);
  return iwasawa(loop_exp(xd, -trunc, trunc, samples), trunc).unitary;
}

double translational_cocycle_residual(const LoopMatrix& d_matrix, double x, double y, int trunc) {
  require_degree_one(d_matrix);
  const LoopMatrix fxy = translational_frame(d_matrix, x + y, trunc);
  const LoopMatrix fy = translational_frame(d_matrix, y, trunc);
  LoopMatrix xd = d_matrix;
  xd *= Complex(x, 0.0);
  xd.set_twisted(true);
  const int samples = std::max(128, 4 * trunc);
  const LoopMatrix chi = loop_exp(xd, -trunc, trunc, samples);
  const LoopMatrix moved = iwasawa(loop_product(chi, fy, 2 * trunc), trunc).unitary;
  return wiener_distance(fxy, moved);
}

}  // namespace lagdpw
