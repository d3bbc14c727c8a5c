#pragma once

#include <random>

#include "lagdpw/loop.hpp"

namespace testutil {

using lagdpw::Complex;
using lagdpw::LoopMatrix;
using lagdpw::Matrix3;

inline Matrix3 random_matrix(std::mt19937_64& rng, double scale = 1.0) {
  std::normal_distribution<double> n(0.0, scale);
  Matrix3 m;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m(i, j) = Complex(n(rng), n(rng));
  return m;
}

// Twisted algebra loop on degrees [lo, hi], rescaled to the given Wiener norm.
inline LoopMatrix random_twisted_algebra(std::mt19937_64& rng, int lo, int hi, double wiener) {
  LoopMatrix x(lo, {}, true);
  for (int d = lo; d <= hi; ++d) {
    Matrix3 m = random_matrix(rng);
    m -= (m.trace() / 3.0) * Matrix3::Identity();
    x.set_coeff(d, lagdpw::su3::eigenspace_project(m, d));
  }
  x *= wiener / x.wiener_norm();
  return x;
}

}  // namespace testutil
