#include "lagdpw/geometry.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "lagdpw/error.hpp"

namespace lagdpw {

namespace {

const Complex I1{0.0, 1.0};

template <class T>
void require_size(const Grid<T>& g) {
  if (g.nx < 5 || g.ny < 5) fail(ErrorKind::GridTooCoarse, "need at least 5 nodes per direction");
}

bool patch_regular(const Grid<SurfaceSample>& s, int i, int j, int r) {
  for (int dj = -r; dj <= r; ++dj)
    for (int di = -r; di <= r; ++di)
      if (s.at(i + di, j + dj).singular) return false;
  return true;
}

// Fourth-order central difference weights for the first derivative.
template <class F>
Vector3 d1(const F& f, double h) {
  const Vector3 m2 = f(-2), m1 = f(-1), p1 = f(1), p2 = f(2);
  return (m2 - 8.0 * m1 + 8.0 * p1 - p2) / (12.0 * h);
}

Vector3 lift_dx(const Grid<SurfaceSample>& s, int i, int j, double h) {
  return d1([&](int k) -> Vector3 { return s.at(i + k, j).lift; }, h);
}

Vector3 lift_dy(const Grid<SurfaceSample>& s, int i, int j, double h) {
  return d1([&](int k) -> Vector3 { return s.at(i, j + k).lift; }, h);
}

// Wirtinger derivatives (d_x -+ i d_y)/2 of the lift at (i, j).
void lift_derivs(const Grid<SurfaceSample>& s, int i, int j, double h, Vector3& fz, Vector3& fzb) {
  const Vector3 fx = lift_dx(s, i, j, h);
  const Vector3 fy = lift_dy(s, i, j, h);
  fz = (fx - I1 * fy) / 2.0;
  fzb = (fx + I1 * fy) / 2.0;
}

}  // namespace

void ResidualReport::merge(const ResidualReport& o) {
  horizontality = std::max(horizontality, o.horizontality);
  conformality = std::max(conformality, o.conformality);
  unitarity = std::max(unitarity, o.unitarity);
  determinant = std::max(determinant, o.determinant);
  tzitzeica = std::max(tzitzeica, o.tzitzeica);
  codazzi = std::max(codazzi, o.codazzi);
  if (o.symmetry) symmetry = std::max(symmetry.value_or(0.0), *o.symmetry);
  if (o.hopf_crosscheck) hopf_crosscheck = std::max(hopf_crosscheck.value_or(0.0), *o.hopf_crosscheck);
  stencil_h = std::max(stencil_h, o.stencil_h);
  nodes += o.nodes;
  singular_nodes += o.singular_nodes;
  skipped_patches += o.skipped_patches;
}

ResidualReport structure_residuals(const SampleGrid& grid) {
  const auto& s = grid.samples;
  require_size(s);
  ResidualReport r;
  r.stencil_h = grid.h;
  for (const auto& smp : s.values) {
    ++r.nodes;
    if (smp.singular) {
      ++r.singular_nodes;
      continue;
    }
    r.unitarity = std::max(r.unitarity, su3::unitarity_residual(smp.frame));
    r.determinant = std::max(r.determinant, su3::determinant_residual(smp.frame));
  }
  for (int j = 2; j + 2 < s.ny; ++j)
    for (int i = 2; i + 2 < s.nx; ++i) {
      if (!patch_regular(s, i, j, 2)) continue;
      Vector3 fz, fzb;
      lift_derivs(s, i, j, grid.h, fz, fzb);
      const Vector3& f = s.at(i, j).lift;
      // x . conj(y) is y.dot(x) in Eigen's convention.
      r.horizontality = std::max(r.horizontality, std::abs(f.dot(fz)) + std::abs(f.dot(fzb)));
      const double eu = std::exp(s.at(i, j).u);
      r.conformality =
          std::max({r.conformality, std::abs(fz.dot(fz) - eu), std::abs(fzb.dot(fz))});
    }
  return r;
}

double tzitzeica_residual(const Grid<double>& u, const Grid<Complex>& psi, double h) {
  require_size(u);
  double worst = 0.0;
  for (int j = 1; j + 1 < u.ny; ++j)
    for (int i = 1; i + 1 < u.nx; ++i) {
      const double lap =
          (u.at(i + 1, j) + u.at(i - 1, j) + u.at(i, j + 1) + u.at(i, j - 1) - 4.0 * u.at(i, j)) /
          (h * h);
      if (!std::isfinite(lap)) continue;
      const double uc = u.at(i, j);
      worst = std::max(worst, std::abs(lap / 4.0 + std::exp(uc) -
                                       std::exp(-2.0 * uc) * std::norm(psi.at(i, j))));
    }
  return worst;
}

double codazzi_residual(const Grid<Complex>& psi, double h) {
  require_size(psi);
  auto d = [h](Complex m2, Complex m1, Complex p1, Complex p2) {
    return (m2 - 8.0 * m1 + 8.0 * p1 - p2) / (12.0 * h);
  };
  double worst = 0.0;
  for (int j = 2; j + 2 < psi.ny; ++j)
    for (int i = 2; i + 2 < psi.nx; ++i) {
      const Complex px = d(psi.at(i - 2, j), psi.at(i - 1, j), psi.at(i + 1, j), psi.at(i + 2, j));
      const Complex py = d(psi.at(i, j - 2), psi.at(i, j - 1), psi.at(i, j + 1), psi.at(i, j + 2));
      worst = std::max(worst, std::abs((px + I1 * py) / 2.0));
    }
  return worst;
}

Complex hopf_from_lift(const Vector3& f_zz, const Vector3& f_zbar, Complex lambda0) {
  return I1 * std::pow(lambda0, 3) * f_zbar.dot(f_zz);
}

namespace {

Complex lift_hopf(const Grid<SurfaceSample>& s, int i, int j, double h) {
  auto f = [&](int di, int dj) -> Vector3 { return s.at(i + di, j + dj).lift; };
  const Vector3 fxx =
      (-f(-2, 0) + 16.0 * f(-1, 0) - 30.0 * f(0, 0) + 16.0 * f(1, 0) - f(2, 0)) / (12.0 * h * h);
  const Vector3 fyy =
      (-f(0, -2) + 16.0 * f(0, -1) - 30.0 * f(0, 0) + 16.0 * f(0, 1) - f(0, 2)) / (12.0 * h * h);
  const Vector3 fxy = d1([&](int k) -> Vector3 { return lift_dx(s, i, j + k, h); }, h);
  const Vector3 fzz = (fxx - 2.0 * I1 * fxy - fyy) / 4.0;
  Vector3 fz, fzb;
  lift_derivs(s, i, j, h, fz, fzb);
  return hopf_from_lift(fzz, fzb, s.at(i, j).lambda0);
}

}  // namespace

double hopf_crosscheck(const SampleGrid& grid) {
  const auto& s = grid.samples;
  require_size(s);
  double worst = 0.0;
  for (int j = 2; j + 2 < s.ny; ++j)
    for (int i = 2; i + 2 < s.nx; ++i) {
      if (!patch_regular(s, i, j, 2)) continue;
      worst = std::max(worst, std::abs(lift_hopf(s, i, j, grid.h) - s.at(i, j).psi));
    }
  return worst;
}

Complex hopf_at(const PotentialSpec& spec, Complex z, Complex lambda0, double h,
                const DpwOptions& opt) {
  const SampleGrid g = sample_patch(spec, z, lambda0, h, opt);
  if (!patch_regular(g.samples, 2, 2, 2))
    fail(ErrorKind::DomainError, "Hopf stencil touches a singular sample");
  return lift_hopf(g.samples, 2, 2, h);
}

Polynomial holomorphic_restriction(const std::function<double(Complex)>& u,
                                   const PolarizationOptions& o) {
  if (o.angles < 2 * o.modes + 1 || o.radii <= o.degree)
    fail(ErrorKind::InvalidArgument, "polarization grid too small for the requested modes");
  const double R = o.radius;
  // Radii at Chebyshev-Lobatto nodes of x = r^2 on [0, R^2]; the r = 0 sample
  // pins the constant term.
  std::vector<double> rad(o.radii);
  for (int i = 0; i < o.radii; ++i)
    rad[i] = R * std::sqrt(0.5 * (1.0 - std::cos(kPi * i / (o.radii - 1))));
  Eigen::MatrixXcd modes(o.radii, o.modes + 1);
  for (int i = 0; i < o.radii; ++i) {
    std::vector<double> v(o.angles);
    for (int t = 0; t < o.angles; ++t) v[t] = u(std::polar(rad[i], 2.0 * kPi * t / o.angles));
    for (int m = 0; m <= o.modes; ++m) {
      Complex acc = 0.0;
      for (int t = 0; t < o.angles; ++t) acc += v[t] * std::polar(1.0, -2.0 * kPi * mod(m * t, o.angles) / o.angles);
      modes(i, m) = acc / static_cast<double>(o.angles);
    }
  }
  // Mode m of u on the circle of radius r is r^m sum_k c_{m+k,k} r^{2k}; the
  // k = 0 term is the z^m coefficient of u(z, 0).
  Polynomial out;
  out.c.resize(o.modes + 1);
  for (int m = 0; m <= o.modes; ++m) {
    Eigen::MatrixXcd A(o.radii, o.degree + 1);
    for (int i = 0; i < o.radii; ++i) {
      const double x = rad[i] * rad[i] / (R * R);
      const double scale = std::pow(rad[i] / R, m);
      for (int k = 0; k <= o.degree; ++k) A(i, k) = scale * std::pow(x, k);
    }
    const Eigen::VectorXcd q = A.colPivHouseholderQr().solve(modes.col(m));
    out.c[m] = q(0) / std::pow(R, m);
  }
  return out;
}

void frame_residuals(const FrameField& field, double& unitarity, double& determinant,
                     int samples) {
  unitarity = 0.0;
  determinant = 0.0;
  const auto lambdas = circle_samples(samples);
  for (const auto& node : field.nodes)
    for (Complex l : lambdas) {
      const Matrix3 f = node.frame.F(l);
      unitarity = std::max(unitarity, su3::unitarity_residual(f));
      determinant = std::max(determinant, su3::determinant_residual(f));
    }
}

SampleGrid sample_patch(const PotentialSpec& spec, Complex z, Complex lambda0, double h,
                        const DpwOptions& opt, int size) {
  SampleGrid g;
  g.h = h;
  const int half = size / 2;
  g.origin = z - h * Complex(half, half);
  g.samples = Grid<SurfaceSample>(size, size);
  for (int j = 0; j < size; ++j)
    for (int i = 0; i < size; ++i)
      g.samples.at(i, j) = surface_sample(spec, g.origin + h * Complex(i, j), lambda0, opt);
  return g;
}

ResidualReport certify(const PotentialSpec& spec, const std::vector<Complex>& nodes,
                       Complex lambda0, double h, const DpwOptions& opt) {
  ResidualReport total;
  total.stencil_h = h;
  total.hopf_crosscheck = 0.0;
  for (Complex z : nodes) {
    SampleGrid g = sample_patch(spec, z, lambda0, h, opt);
    const bool touches_singular = std::any_of(g.samples.values.begin(), g.samples.values.end(),
                                              [](const SurfaceSample& x) { return x.singular; });
    if (touches_singular) {
      ResidualReport r;
      r.skipped_patches = 1;
      for (const auto& x : g.samples.values) {
        ++r.nodes;
        if (x.singular) ++r.singular_nodes;
      }
      total.merge(r);
      continue;
    }
    ResidualReport r = structure_residuals(g);
    Grid<double> u(g.samples.nx, g.samples.ny);
    Grid<Complex> psi(g.samples.nx, g.samples.ny);
    for (std::size_t k = 0; k < g.samples.values.size(); ++k) {
      u.values[k] = g.samples.values[k].u;
      psi.values[k] = g.samples.values[k].psi;
    }
    r.tzitzeica = tzitzeica_residual(u, psi, h);
    r.codazzi = codazzi_residual(psi, h);
    r.hopf_crosscheck = hopf_crosscheck(g);
    // Frames on S^1 at the patch center.
    const ExtendedFrame ext = extended_frame(spec, z, opt);
    for (Complex l : circle_samples(24)) {
      const Matrix3 f = ext.F(l);
      r.unitarity = std::max(r.unitarity, su3::unitarity_residual(f));
      r.determinant = std::max(r.determinant, su3::determinant_residual(f));
    }
    total.merge(r);
  }
  return total;
}

double symmetry_residual(const PotentialSpec& spec, const std::function<Complex(Complex)>& gamma,
                         const Matrix3& T, const std::vector<Complex>& nodes, Complex lambda0,
                         const DpwOptions& opt) {
  double worst = 0.0;
  for (Complex z : nodes) {
    const Vector3 f = surface_sample(spec, z, lambda0, opt).lift;
    const Vector3 g = surface_sample(spec, gamma(z), lambda0, opt).lift;
    worst = std::max(worst, fubini_study(g, T * f));
  }
  return worst;
}

double homogeneity_residual(const PotentialSpec& spec, const std::vector<Complex>& nodes,
                            const std::vector<double>& ts, const DpwOptions& opt, double p0) {
  if (spec.kind != PotentialKind::RadialMonomial)
    fail(ErrorKind::InvalidArgument, "homogeneity transport needs a radial spec");
  const HomogeneityData hd = homogeneity_params(spec.k, spec.n, p0);
  double worst = 0.0;
  for (Complex z : nodes) {
    const ExtendedFrame base = extended_frame(spec, z, opt);
    for (double t : ts) {
      const ExtendedFrame moved = extended_frame(spec, hd.p(t) * z, opt);
      const Matrix3 T = hd.T(t);
      const Matrix3 Tinv = T.adjoint();
      for (Complex l : circle_samples(12))
        worst = std::max(worst, su3::opnorm(moved.F(hd.q(t) * l) - T * base.F(l) * Tinv));
    }
  }
  return worst;
}

}  // namespace lagdpw
