#include "lagdpw/dpw.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <thread>

#include <boost/numeric/odeint.hpp>

#include "lagdpw/error.hpp"

namespace lagdpw {

namespace {

const Complex I1{0.0, 1.0};
using State = std::vector<Complex>;

// Coefficient stack of C over degrees [lo, hi]; dC/dt = C eta(z(t)) dz.
struct FrameOde {
  const PotentialSpec& spec;
  Complex z0;
  Complex dz;
  int lo;
  int hi;

  void operator()(const State& x, State& dxdt, double t) const {
    const LoopMatrix eta = spec.eta(z0 + t * dz);
    Matrix3 e[3];
    for (int k = 0; k < 3; ++k) {
      e[k] = eta.coeff(k - 1) * dz;
      if (!e[k].allFinite()) fail(ErrorKind::PoleOnPath, "potential not finite on path");
    }
    const int width = hi - lo + 1;
    for (int d = 0; d < width; ++d) {
      Eigen::Map<Matrix3> out(const_cast<Complex*>(dxdt.data()) + 9 * d);
      out.setZero();
      for (int k = 0; k < 3; ++k) {
        const int src = d - (k - 1);
        if (src < 0 || src >= width) continue;
        if (e[k].isZero(0.0)) continue;
        Eigen::Map<const Matrix3> c(x.data() + 9 * src);
        out.noalias() += c * e[k];
      }
    }
  }
};

State pack(const LoopMatrix& c, int lo, int hi) {
  State x(9 * (hi - lo + 1), Complex(0.0));
  for (int d = lo; d <= hi; ++d) {
    Eigen::Map<Matrix3> m(x.data() + 9 * (d - lo));
    m = c.coeff(d);
  }
  return x;
}

LoopMatrix unpack(const State& x, int lo, int hi) {
  std::vector<Matrix3> coeffs(hi - lo + 1);
  for (int d = lo; d <= hi; ++d) coeffs[d - lo] = Eigen::Map<const Matrix3>(x.data() + 9 * (d - lo));
  return LoopMatrix(lo, std::move(coeffs), true);
}

void window(const PotentialSpec& spec, int trunc, int& lo, int& hi) {
  lo = -trunc;
  hi = spec.is_normalized() ? 0 : trunc;
}

void check_overflow(const PotentialSpec& spec, const LoopMatrix& c, int trunc) {
  double biggest = 0.0;
  for (const auto& m : c.coeffs()) biggest = std::max(biggest, su3::maxabs(m));
  double edge = su3::maxabs(c.coeff(-trunc));
  if (!spec.is_normalized()) edge = std::max(edge, su3::maxabs(c.coeff(trunc)));
  if (edge > 1e-6 * biggest) {
    std::ostringstream os;
    os << "boundary coefficient " << edge << " exceeds 1e-6 of max " << biggest
       << " at trunc " << trunc;
    fail(ErrorKind::TruncationOverflow, os.str());
  }
}

}  // namespace

LoopMatrix continue_frame(const PotentialSpec& spec, const LoopMatrix& c0, Complex z0, Complex z1,
                          int trunc, double tol) {
  if (trunc < 1) fail(ErrorKind::InvalidArgument, "trunc must be positive");
  int lo, hi;
  window(spec, trunc, lo, hi);
  State x = pack(c0, lo, hi);
  if (z1 != z0) {
    namespace ode = boost::numeric::odeint;
    FrameOde sys{spec, z0, z1 - z0, lo, hi};
    auto stepper = ode::make_controlled(tol, tol, ode::runge_kutta_dopri5<State>());
    ode::integrate_adaptive(stepper, sys, x, 0.0, 1.0, 0.05);
  }
  return unpack(x, lo, hi);
}

LoopMatrix integrate_frame(const PotentialSpec& spec, Complex z, int trunc, double tol,
                           const std::vector<Complex>& waypoints) {
  LoopMatrix c = LoopMatrix::identity(true);
  Complex from = spec.base_point;
  for (Complex w : waypoints) {
    c = continue_frame(spec, c, from, w, trunc, tol);
    from = w;
  }
  c = continue_frame(spec, c, from, z, trunc, tol);
  check_overflow(spec, c, trunc);
  return c;
}

ExtendedFrame extended_frame(const PotentialSpec& spec, Complex z, const DpwOptions& opt) {
  ExtendedFrame ext;
  ext.C = integrate_frame(spec, z, opt.trunc, opt.tol);
  ext.tail_norm = ext.C.tail_norm(opt.trunc);
  IwasawaFactors f = iwasawa(ext.C, opt.trunc);
  ext.F = std::move(f.unitary);
  ext.V_plus = std::move(f.v_plus);
  ext.residual = f.residual;
  return ext;
}

SurfaceSample extract_sample(const PotentialSpec& spec, Complex z, const ExtendedFrame& ext,
                             Complex lambda0) {
  SurfaceSample s;
  s.z = z;
  s.lambda0 = lambda0;
  s.frame = ext.F(lambda0);
  s.lift = s.frame.col(2);
  s.v0 = ext.V_plus.coeff(0)(0, 0).real();
  s.residual = ext.residual;
  s.tail_norm = ext.tail_norm;
  // The lambda^{-1} part of F^{-1} dF is V0 eta_{-1} V0^{-1} with
  // V0 = diag(v0, 1/v0, 1); its (1,3) entry has modulus e^{u/2}.
  const Matrix3 e = spec.eta(z).coeff(-1);
  const double half = std::abs(s.v0 * e(0, 2));
  s.singular = !(half >= 1e-10);
  s.u = s.singular ? std::nan("") : 2.0 * std::log(half);
  s.psi = -I1 * e(1, 0) * e(0, 2) * e(0, 2);
  return s;
}

SurfaceSample surface_sample(const PotentialSpec& spec, Complex z, Complex lambda0,
                             const DpwOptions& opt) {
  return extract_sample(spec, z, extended_frame(spec, z, opt), lambda0);
}

std::vector<Complex> GridDescriptor::nodes() const {
  std::vector<Complex> out;
  auto frac = [](int i, int count) { return count > 1 ? static_cast<double>(i) / (count - 1) : 1.0; };
  switch (kind) {
    case Kind::Polar:
      for (int i = 0; i < n1; ++i)
        for (int j = 0; j < n2; ++j)
          out.push_back(center + std::polar(extent * frac(i, n1), 2.0 * kPi * j / n2));
      break;
    case Kind::Cartesian:
      for (int j = 0; j < n2; ++j)
        for (int i = 0; i < n1; ++i) {
          const double x = n1 > 1 ? -extent + 2.0 * extent * frac(i, n1) : 0.0;
          const double y = n2 > 1 ? -extent + 2.0 * extent * frac(j, n2) : 0.0;
          out.push_back(center + Complex(x, y));
        }
      break;
    case Kind::Ray:
      for (int i = 0; i < n1; ++i) out.push_back(center + std::polar(extent * frac(i, n1), angle));
      break;
  }
  return out;
}

std::string GridDescriptor::describe() const {
  std::ostringstream os;
  os.precision(17);
  switch (kind) {
    case Kind::Polar: os << "polar:" << extent << ":" << n1 << ":" << n2; break;
    case Kind::Cartesian: os << "cartesian:" << extent << ":" << n1 << ":" << n2; break;
    case Kind::Ray: os << "ray:" << extent << ":" << n1 << ":" << angle; break;
  }
  return os.str();
}

GridDescriptor parse_grid(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
  auto bad = [&]() { fail(ErrorKind::InvalidArgument, "bad grid descriptor '" + text + "'"); };
  if (parts.size() < 3) bad();
  GridDescriptor g;
  try {
    g.extent = std::stod(parts[1]);
    g.n1 = std::stoi(parts[2]);
    if (parts[0] == "polar" || parts[0] == "cartesian") {
      if (parts.size() != 4) bad();
      g.kind = parts[0] == "polar" ? GridDescriptor::Kind::Polar : GridDescriptor::Kind::Cartesian;
      g.n2 = std::stoi(parts[3]);
    } else if (parts[0] == "ray") {
      if (parts.size() > 4) bad();
      g.kind = GridDescriptor::Kind::Ray;
      g.n2 = 1;
      if (parts.size() == 4) g.angle = std::stod(parts[3]);
    } else {
      bad();
    }
  } catch (const std::logic_error&) {
    bad();
  }
  if (g.n1 < 0 || g.n2 < 0 || !(g.extent >= 0.0)) bad();
  return g;
}

int worker_count() {
  if (const char* env = std::getenv("LAGDPW_THREADS")) {
    const int n = std::atoi(env);
    if (n >= 1) return n;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

GridResult grid_sample(const PotentialSpec& spec, const GridDescriptor& grid,
                       const std::vector<Complex>& lambdas, const DpwOptions& opt,
                       bool keep_frames) {
  const std::vector<Complex> zs = grid.nodes();
  const std::size_t count = zs.size();
  std::vector<std::optional<ExtendedFrame>> frames(count);
  std::vector<std::optional<NodeError>> errs(count);

  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      try {
        frames[i] = extended_frame(spec, zs[i], opt);
      } catch (const Error& e) {
        errs[i] = NodeError{i, zs[i], to_string(e.kind()), e.what()};
      }
    }
  };
  const std::size_t workers = std::min<std::size_t>(worker_count(), std::max<std::size_t>(count, 1));
  if (workers <= 1) {
    work(0, count);
  } else {
    std::vector<std::thread> pool;
    const std::size_t chunk = (count + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
      const std::size_t b = w * chunk, e = std::min(count, b + chunk);
      if (b < e) pool.emplace_back(work, b, e);
    }
    for (auto& t : pool) t.join();
  }

  GridResult out;
  out.field.trunc = opt.trunc;
  for (std::size_t i = 0; i < count; ++i) {
    if (errs[i]) {
      out.errors.push_back(*errs[i]);
      continue;
    }
    const ExtendedFrame& f = *frames[i];
    for (Complex l : lambdas) out.samples.push_back(extract_sample(spec, zs[i], f, l));
    out.field.max_residual = std::max(out.field.max_residual, f.residual);
    out.field.max_tail_norm = std::max(out.field.max_tail_norm, f.tail_norm);
    if (keep_frames) out.field.nodes.push_back(FrameNode{zs[i], f});
  }
  return out;
}

Matrix3 clifford_frame(Complex z, Complex lambda0) {
  const Matrix3& a = su3::clifford_A();
  return su3::expm(z / lambda0 * a + std::conj(z) * lambda0 * su3::tau(a));
}

SurfaceSample clifford_oracle(Complex z, Complex lambda0) {
  SurfaceSample s;
  s.z = z;
  s.lambda0 = lambda0;
  s.frame = clifford_frame(z, lambda0);
  s.lift = s.frame.col(2);
  s.u = 0.0;
  s.psi = -1.0;
  return s;
}

SurfaceSample rp2_oracle(Complex a, Complex z) {
  SurfaceSample s;
  s.z = z;
  const double q = std::norm(a * z) / 2.0;
  s.lift = Vector3(a * z, a * std::conj(z), 1.0 - q) / (1.0 + q);
  s.u = std::log(std::norm(a) / ((1.0 + q) * (1.0 + q)));
  s.psi = 0.0;
  s.frame = Matrix3::Identity();
  return s;
}

double fubini_study(const Vector3& f, const Vector3& g) {
  // atan2 of the orthogonal and parallel parts stays accurate near 0.
  const Vector3 a = f / f.norm(), b = g / g.norm();
  const Complex ip = a.dot(b);
  return std::atan2((b - ip * a).norm(), std::abs(ip));
}

}  // namespace lagdpw
