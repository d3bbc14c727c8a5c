#include "lagdpw/potentials.hpp"

#include <algorithm>
#include <cmath>

#include "lagdpw/error.hpp"

namespace lagdpw {

namespace {
const Complex I1{0.0, 1.0};

Polynomial compose_power(const Polynomial& f, int m) {
  Polynomial out;
  if (f.c.empty()) return out;
  out.c.assign((f.c.size() - 1) * m + 1, Complex(0.0));
  for (std::size_t j = 0; j < f.c.size(); ++j) out.c[j * m] = f.c[j];
  return out;
}

Polynomial monomial(Complex c, int power) {
  Polynomial p;
  p.c.assign(power + 1, Complex(0.0));
  p.c[power] = c;
  return p;
}

// Taylor coefficients of a function holomorphic on |z| <= radius.
int cauchy_count(int degree) { return std::max(64, 4 * (degree + 1)); }

// Taylor coefficients up to `degree` from values at cauchy_count(degree)
// equispaced points of |z| = radius; coefficients below 1e-13 of the largest
// are dropped.
Polynomial cauchy_expand(const std::vector<Complex>& vals, int degree, double radius) {
  const int count = static_cast<int>(vals.size());
  Polynomial p;
  p.c.resize(degree + 1);
  double biggest = 0.0;
  for (int nn = 0; nn <= degree; ++nn) {
    Complex acc = 0.0;
    for (int j = 0; j < count; ++j)
      acc += vals[j] * std::polar(1.0, -2.0 * kPi * mod(j * nn, count) / count);
    p.c[nn] = acc / (static_cast<double>(count) * std::pow(radius, nn));
    biggest = std::max(biggest, std::abs(p.c[nn]));
  }
  for (auto& c : p.c)
    if (std::abs(c) < 1e-13 * biggest) c = 0.0;
  while (!p.c.empty() && p.c.back() == Complex(0.0)) p.c.pop_back();
  return p;
}
}  // namespace

Complex Polynomial::operator()(Complex z) const {
  Complex acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
  return acc;
}

Polynomial Polynomial::derivative() const {
  Polynomial d;
  for (std::size_t j = 1; j < c.size(); ++j) d.c.push_back(static_cast<double>(j) * c[j]);
  return d;
}

int Polynomial::order() const {
  for (std::size_t j = 0; j < c.size(); ++j)
    if (c[j] != Complex(0.0)) return static_cast<int>(j);
  return -1;
}

const char* to_string(PotentialKind kind) {
  switch (kind) {
    case PotentialKind::Normalized: return "normalized";
    case PotentialKind::ConstantDegreeOne: return "constant_degree_one";
    case PotentialKind::RadialMonomial: return "radial_monomial";
    case PotentialKind::Rotational: return "rotational";
    case PotentialKind::Vacuum: return "vacuum";
  }
  return "unknown";
}

Matrix3 normalized_eta_coefficient(Complex a, Complex b) {
  Matrix3 m = Matrix3::Zero();
  m(0, 2) = I1 * a;
  m(1, 0) = I1 * b;
  m(2, 1) = I1 * a;
  return m;
}

LoopMatrix PotentialSpec::eta(Complex z) const {
  if (kind == PotentialKind::ConstantDegreeOne) return d_matrix;
  return LoopMatrix::monomial(-1, normalized_eta_coefficient(a(z), b(z)), true);
}

Matrix3 PotentialSpec::eta_at(Complex z, Complex lambda) const { return eta(z)(lambda); }

PotentialSpec normalized_spec(Polynomial a, Polynomial b, std::string name) {
  PotentialSpec s;
  s.kind = PotentialKind::Normalized;
  s.name = std::move(name);
  s.a = std::move(a);
  s.b = std::move(b);
  return s;
}

PotentialSpec clifford_spec() { return normalized_spec({{1.0}}, {{1.0}}, "clifford"); }

PotentialSpec rp2_spec(double u0) {
  return normalized_spec({{std::exp(u0 / 2.0)}}, {}, "rp2");
}

PotentialSpec constant_degree_one_spec(const LoopMatrix& d, std::string name) {
  if (d.empty() || d.min_degree() < -1 || d.max_degree() > 1)
    fail(ErrorKind::InvalidArgument, "constant potential must have degrees in {-1, 0, 1}");
  if (algebra_twist_residual(d) > 1e-12)
    fail(ErrorKind::InvalidArgument, "constant potential is not twisted");
  PotentialSpec s;
  s.kind = PotentialKind::ConstantDegreeOne;
  s.name = std::move(name);
  s.d_matrix = d;
  s.d_matrix.set_twisted(true);
  return s;
}

PotentialSpec radial_spec(int k, int n, Complex ak, Complex bn) {
  if (k < 0 || n < 0) fail(ErrorKind::InvalidArgument, "radial exponents must be nonnegative");
  if (ak == Complex(0.0)) fail(ErrorKind::InvalidArgument, "a_k must be nonzero");
  const double ta = std::arg(ak);
  double gamma = 0.0, delta = -ta;
  if (bn != Complex(0.0)) {
    gamma = (std::arg(bn) + 2.0 * ta) / (2 * k + n + 3);
    delta = (k + 1) * gamma - ta;
  }
  const Complex c = std::polar(1.0, gamma);
  const Complex ak_new = ak * std::polar(1.0, delta) * std::pow(c, -(k + 1));
  const Complex bn_new = bn * std::polar(1.0, -2.0 * delta) * std::pow(c, -(n + 1));

  PotentialSpec s;
  s.kind = PotentialKind::RadialMonomial;
  s.name = "radial_k" + std::to_string(k) + "_n" + std::to_string(n);
  s.k = k;
  s.n = n;
  // Clean rounding so the normalized coefficients are real.
  const double a_real = std::abs(ak_new);
  const double b_real = std::abs(bn_new);
  s.a = monomial(a_real, k);
  s.b = bn == Complex(0.0) ? Polynomial{} : monomial(b_real, n);
  s.psi0 = -a_real * a_real * b_real;
  s.normalization_applied = std::abs(delta) > 0.0 || std::abs(gamma) > 0.0;
  s.gauge_delta = delta;
  s.coord_scale = c;
  return s;
}

PotentialSpec radial_spec_from_psi(int k, int n, double ak, double psi0) {
  if (!(ak > 0.0)) fail(ErrorKind::InvalidArgument, "a_k must be positive");
  if (psi0 > 0.0) fail(ErrorKind::InvalidArgument, "psi0 must be nonpositive");
  return radial_spec(k, n, ak, -psi0 / (ak * ak));
}

WuSlots wu_slots(Complex u_on_axis, double u00, Complex psi) {
  WuSlots w;
  w.a = std::exp(u_on_axis - u00 / 2.0);
  w.b = -psi * std::exp(-2.0 * u_on_axis + u00);
  return w;
}

PotentialSpec wu_potential(const std::function<Complex(Complex)>& u_on_axis, double u00,
                           const std::function<Complex(Complex)>& psi, int degree,
                           double radius) {
  const int count = cauchy_count(degree);
  std::vector<Complex> av(count), bv(count);
  for (int j = 0; j < count; ++j) {
    const Complex z = std::polar(radius, 2.0 * kPi * j / count);
    const WuSlots w = wu_slots(u_on_axis(z), u00, psi(z));
    av[j] = w.a;
    bv[j] = w.b;
  }
  return normalized_spec(cauchy_expand(av, degree, radius), cauchy_expand(bv, degree, radius), "wu");
}

Matrix3 HomogeneityData::T(double t) const {
  Matrix3 m = Matrix3::Identity();
  m(0, 0) = twist_entry(t);
  m(1, 1) = std::conj(twist_entry(t));
  return m;
}

HomogeneityData homogeneity_params(int k, int n, double p0) {
  HomogeneityData h;
  h.p0 = p0;
  h.q0 = (2 * k + n + 3) * p0 / 3.0;
  h.t0 = (k - n) * p0 / 3.0;
  return h;
}

VacuumNormalization vacuum_normalize(Complex a, Complex b) {
  const double r = std::abs(a);
  if (std::abs(r - std::abs(b)) > 1e-12 || r == 0.0)
    fail(ErrorKind::NotVacuum, "|a| != |b|: [A, tau(A)] != 0");
  const double theta = std::arg(a / I1);
  const double beta = std::arg(b / I1);
  VacuumNormalization v;
  v.gauge_delta = (beta - theta) / 3.0;
  v.coord_scale = std::polar(r, (2.0 * theta + beta) / 3.0);
  v.spec = clifford_spec();
  return v;
}

RotationalPotential rotational_potential(int m, const Polynomial& a_fn, const Polynomial& b_fn) {
  if (m < 3) fail(ErrorKind::InvalidArgument, "rotation order must be at least 3");
  Polynomial bm = compose_power(b_fn, m);
  const int ord = bm.order();
  if (ord >= 0 && ord < 3) fail(ErrorKind::PoleAtOrigin, "z^{-3} b(z^m) has a pole at 0");
  Polynomial bslot;
  if (ord >= 0) bslot.c.assign(bm.c.begin() + 3, bm.c.end());

  RotationalPotential out;
  out.spec = normalized_spec(compose_power(a_fn, m), std::move(bslot),
                             "rotational_m" + std::to_string(m));
  out.spec.kind = PotentialKind::Rotational;
  out.spec.m = m;
  out.T = Matrix3::Identity();
  out.T(0, 0) = std::polar(1.0, 2.0 * kPi / m);
  out.T(1, 1) = std::polar(1.0, -2.0 * kPi / m);
  return out;
}

double check_potential_symmetry(const PotentialSpec& spec, Complex p, Complex q, const Matrix3& T,
                                int samples, double radius) {
  const Matrix3 tinv = T.inverse();
  const auto lambdas = circle_samples(samples);
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double r = radius * (0.1 + 0.9 * i / std::max(1, samples - 1));
    const Complex z = std::polar(r, 2.39996322972865332 * i);
    const LoopMatrix e = spec.eta(z);
    const LoopMatrix ep = spec.eta(p * z);
    for (Complex l : lambdas)
      worst = std::max(worst, su3::opnorm(ep(q * l) * p - T * e(l) * tinv));
  }
  return worst;
}

OuterSymmetry outer_symmetry_order(int k, int n, double p0) {
  const int len = 2 * k + n + 3;
  if (len == 0 || p0 == 0.0) fail(ErrorKind::InvalidArgument, "degenerate rotation rate");
  OuterSymmetry o;
  o.t_hat = 6.0 * kPi / (len * p0);
  o.p_order = std::polar(1.0, 6.0 * kPi / len);
  o.tau_order = std::polar(1.0, 2.0 * kPi * (k - n) / len);
  o.T = Matrix3::Identity();
  o.T(0, 0) = o.tau_order;
  o.T(1, 1) = std::conj(o.tau_order);
  return o;
}

}  // namespace lagdpw
