#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lagdpw/factorization.hpp"
#include "lagdpw/potentials.hpp"

namespace lagdpw {

struct SurfaceSample {
  Complex z;
  Vector3 lift = Vector3::Zero();
  double u = 0.0;  // NaN at singular samples
  Complex psi;
  double v0 = 1.0;
  Complex lambda0{1.0, 0.0};
  bool singular = false;
  double residual = 0.0;   // Iwasawa residual of the frame at z
  double tail_norm = 0.0;  // |C_{-trunc}| audit of the holomorphic frame
  Matrix3 frame = Matrix3::Identity();  // F(z, lambda0)
};

struct ExtendedFrame {
  LoopMatrix C;
  LoopMatrix F;
  LoopMatrix V_plus;
  double residual = 0.0;
  double tail_norm = 0.0;
};

struct DpwOptions {
  int trunc = 16;
  double tol = 1e-10;
};

// C(z, .) solving dC = C eta, C(base_point) = I along the straight segment
// from the base point, or along the polygon base -> waypoints -> z.
// Throws PoleOnPath if eta is not finite on the path and TruncationOverflow
// if a boundary coefficient exceeds 1e-6 of the largest one.
LoopMatrix integrate_frame(const PotentialSpec& spec, Complex z, int trunc, double tol = 1e-10,
                           const std::vector<Complex>& waypoints = {});

// Continue a holomorphic frame known at z0 to z1 along a segment.
LoopMatrix continue_frame(const PotentialSpec& spec, const LoopMatrix& c0, Complex z0, Complex z1,
                          int trunc, double tol);

ExtendedFrame extended_frame(const PotentialSpec& spec, Complex z, const DpwOptions& opt = {});

// Surface data from an already computed extended frame.
SurfaceSample extract_sample(const PotentialSpec& spec, Complex z, const ExtendedFrame& ext,
                             Complex lambda0);

SurfaceSample surface_sample(const PotentialSpec& spec, Complex z, Complex lambda0,
                             const DpwOptions& opt = {});

struct GridDescriptor {
  enum class Kind { Polar, Cartesian, Ray };
  Kind kind = Kind::Polar;
  double extent = 1.0;  // radius, half-width or ray length
  int n1 = 0;           // radial / x / ray count
  int n2 = 0;           // angular / y count
  double angle = 0.0;   // ray direction
  Complex center{0.0, 0.0};

  // Node list in row-major order: polar rows are radii, cartesian rows are y.
  std::vector<Complex> nodes() const;
  std::string describe() const;
};

// "polar:R:nr:nt", "cartesian:E:nx:ny", "ray:R:n[:angle]".
GridDescriptor parse_grid(const std::string& text);

struct NodeError {
  std::size_t index = 0;
  Complex z;
  std::string kind;
  std::string message;
};

struct FrameNode {
  Complex z;
  ExtendedFrame frame;
};

struct FrameField {
  std::vector<FrameNode> nodes;
  int trunc = 16;
  double max_residual = 0.0;
  double max_tail_norm = 0.0;
};

struct GridResult {
  std::vector<SurfaceSample> samples;  // node-major, then lambda order
  FrameField field;
  std::vector<NodeError> errors;
};

// Worker count from LAGDPW_THREADS, else the hardware concurrency.
int worker_count();

GridResult grid_sample(const PotentialSpec& spec, const GridDescriptor& grid,
                       const std::vector<Complex>& lambdas, const DpwOptions& opt = {},
                       bool keep_frames = true);

// Closed-form Clifford frame exp(z lambda^{-1} A + conj(z) lambda tau(A)).
Matrix3 clifford_frame(Complex z, Complex lambda0);
SurfaceSample clifford_oracle(Complex z, Complex lambda0);

// a = i e^{u0/2}; lift (az, a conj(z), 1 - |az|^2/2)/(1 + |az|^2/2).
SurfaceSample rp2_oracle(Complex a, Complex z);

// Fubini-Study distance arccos |<f, g>| of unit vectors.
double fubini_study(const Vector3& f, const Vector3& g);

}  // namespace lagdpw
