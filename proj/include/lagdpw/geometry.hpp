#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "lagdpw/dpw.hpp"

namespace lagdpw {

template <class T>
struct Grid {
  int nx = 0;
  int ny = 0;
  std::vector<T> values;  // row-major, y outer

  Grid() = default;
  Grid(int x, int y, T fill = T()) : nx(x), ny(y), values(static_cast<std::size_t>(x) * y, fill) {}
  T& at(int i, int j) { return values[static_cast<std::size_t>(j) * nx + i]; }
  const T& at(int i, int j) const { return values[static_cast<std::size_t>(j) * nx + i]; }
};

// Regular cartesian patch of samples with spacing h; node (i, j) sits at
// origin + h (i + i j).
struct SampleGrid {
  Grid<SurfaceSample> samples;
  double h = 1e-3;
  Complex origin;
};

struct ResidualReport {
  double horizontality = 0.0;
  double conformality = 0.0;
  double unitarity = 0.0;
  double determinant = 0.0;
  double tzitzeica = 0.0;
  double codazzi = 0.0;
  std::optional<double> symmetry;
  std::optional<double> hopf_crosscheck;  // |psi from the lift - psi from the potential|
  double stencil_h = 0.0;
  int nodes = 0;
  int singular_nodes = 0;
  int skipped_patches = 0;

  void merge(const ResidualReport& other);
};

// Wirtinger derivatives of the lift by fourth-order central differences on
// nodes two steps inside the grid: horizontality, conformality, and the frame
// checks at lambda0. Stencils touching singular samples are skipped. Throws
// GridTooCoarse below 5x5.
ResidualReport structure_residuals(const SampleGrid& grid);

// max |u_{z zbar} + e^u - e^{-2u}|psi|^2| with u_{z zbar} = Laplacian/4.
double tzitzeica_residual(const Grid<double>& u, const Grid<Complex>& psi, double h);

// max |psi_{zbar}| by fourth-order central differences.
double codazzi_residual(const Grid<Complex>& psi, double h);

// max |i lambda0^3 <f_zz, f_zbar> - psi| on nodes two steps inside the grid,
// fourth-order stencils; compares the lift's Hopf coefficient with the sample.
double hopf_crosscheck(const SampleGrid& grid);

// Hopf coefficient from the lift on a 5x5 patch of spacing h centered at z.
Complex hopf_at(const PotentialSpec& spec, Complex z, Complex lambda0, double h,
                const DpwOptions& opt = {});

struct PolarizationOptions {
  double radius = 1.5;  // sampling disc; u must be regular on it
  int modes = 28;
  int degree = 24;  // per-mode radial polynomial degree in r^2
  int radii = 32;
  int angles = 64;
};

// Coefficients of z -> u(z, 0) for a real-analytic u(z, zbar) known on a
// disc: Fourier modes on circles, then a least-squares fit of each mode in r^2.
Polynomial holomorphic_restriction(const std::function<double(Complex)>& u,
                                   const PolarizationOptions& opt = {});

// Hopf coefficient at lambda0 from lift derivatives, i lambda0^3 <f_zz, f_zbar>.
Complex hopf_from_lift(const Vector3& f_zz, const Vector3& f_zbar, Complex lambda0);

// max over S^1 samples and frames of ||F^* F - I|| and |det F - 1|.
void frame_residuals(const FrameField& field, double& unitarity, double& determinant,
                     int samples = 24);

// Samples a 5x5 patch of spacing h centered at z through the pipeline.
SampleGrid sample_patch(const PotentialSpec& spec, Complex z, Complex lambda0, double h,
                        const DpwOptions& opt, int size = 5);

// Full certification: a 5x5 patch around each node, every residual. Patches
// containing a singular sample are skipped whole, since differences next to a
// zero of e^{u/2} measure the logarithmic singularity of u.
ResidualReport certify(const PotentialSpec& spec, const std::vector<Complex>& nodes,
                       Complex lambda0, double h, const DpwOptions& opt = {});

// max over nodes of the Fubini-Study distance between f(gamma z) and T f(z).
double symmetry_residual(const PotentialSpec& spec, const std::function<Complex(Complex)>& gamma,
                         const Matrix3& T, const std::vector<Complex>& nodes, Complex lambda0,
                         const DpwOptions& opt = {});

// Radial specs: max over nodes, t and sampled lambda of
// ||F(p_t z, q_t lambda) - T_t F(z, lambda) T_t^{-1}||.
double homogeneity_residual(const PotentialSpec& spec, const std::vector<Complex>& nodes,
                            const std::vector<double>& ts, const DpwOptions& opt = {},
                            double p0 = 1.0);

}  // namespace lagdpw
