#pragma once

#include "lagdpw/loop.hpp"

namespace lagdpw {

struct ClosingResult {
  bool closed = false;
  Complex c{1.0, 0.0};  // nearest cube root of unity
  int root_index = 0;   // c = exp(2 pi i root_index / 3)
  double residual = 0.0;  // ||M - c I||_F
};

// M(delta, lambda0) = exp(delta lambda0^{-1} A + conj(delta) lambda0 tau(A)).
Matrix3 monodromy(Complex delta, Complex lambda0);

// Lattice translation ((2 l1 - l2 - l3)/3 + i (l3 - l2)/sqrt(3)) pi lambda0.
// lambda0 is applied last so the rotation covariance is exact in floating point.
Complex closing_delta(int l1, int l2, int l3, Complex lambda0);

// Closed iff ||M - c I||_F < tol for the nearest cube root of unity c.
ClosingResult check_closing(Complex delta, Complex lambda0, double tol = 1e-9);

// Unitary Iwasawa factor of exp(x D(lambda)) for a twisted degree-one D.
LoopMatrix translational_frame(const LoopMatrix& d_matrix, double x, int trunc);

// Wiener distance between F(x + y) and the unitary factor of exp(x D) F(y).
double translational_cocycle_residual(const LoopMatrix& d_matrix, double x, double y, int trunc);

}  // namespace lagdpw
