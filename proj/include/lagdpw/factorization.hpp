#pragma once

#include "lagdpw/loop.hpp"

namespace lagdpw {

struct BirkhoffFactors {
  LoopMatrix f_minus;  // degrees <= 0, degree-0 coefficient exactly I
  LoopMatrix f_plus;   // degrees >= 0
  double residual = 0.0;
};

struct IwasawaFactors {
  LoopMatrix unitary;  // unitary on S^1
  LoopMatrix v_plus;   // degrees >= 0, v_plus(0) upper triangular with positive diagonal
  double residual = 0.0;
  double condition = 1.0;  // Gram condition estimate of the truncated column space
};

// g = f_minus * f_plus with f_minus^{-1} = I + sum_{k=-trunc}^{-1} lambda^k B_k
// found by a linear mode-matching solve. Throws OutsideBigCell when that
// system has condition number above 1e12.
BirkhoffFactors birkhoff(const LoopMatrix& g, int trunc);

// g = F * V_plus by orthonormalizing g lambda^j e_c, j = 0..2 trunc, in the
// truncated L^2 space. The positive diagonal of the triangular factor fixes
// the splitting uniquely. Throws IllConditioned when the Gram condition
// estimate exceeds 1e12.
IwasawaFactors iwasawa(const LoopMatrix& g, int trunc);

}  // namespace lagdpw
