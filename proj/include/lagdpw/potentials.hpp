#pragma once

#include <functional>
#include <string>
#include <vector>

#include "lagdpw/loop.hpp"

namespace lagdpw {

// Polynomial in z with ascending complex coefficients.
struct Polynomial {
  std::vector<Complex> c;

  Complex operator()(Complex z) const;
  Polynomial derivative() const;
  // Lowest power with a nonzero coefficient; -1 for the zero polynomial.
  int order() const;
  bool is_zero() const { return order() < 0; }
  bool operator==(const Polynomial&) const = default;
};

enum class PotentialKind { Normalized, ConstantDegreeOne, RadialMonomial, Rotational, Vacuum };

const char* to_string(PotentialKind kind);

// Slot convention for the normalized kinds: the lambda^{-1} coefficient is
//   [[0, 0, i a(z)], [i b(z), 0, 0], [0, i a(z), 0]],
// so "a" and "b" always name the slot functions, not the matrix entries.
struct PotentialSpec {
  PotentialKind kind = PotentialKind::Normalized;
  std::string name;
  Polynomial a;
  Polynomial b;
  int k = 0;
  int n = 0;
  Complex psi0{0.0, 0.0};
  int m = 0;
  LoopMatrix d_matrix;  // constant_degree_one only
  Complex base_point{0.0, 0.0};
  int trunc = 16;

  // Provenance of automatic normalizations.
  bool normalization_applied = false;
  double gauge_delta = 0.0;
  Complex coord_scale{1.0, 0.0};

  bool is_normalized() const { return kind != PotentialKind::ConstantDegreeOne; }

  // Coefficient loop of eta at z (degrees -1..1, twisted).
  LoopMatrix eta(Complex z) const;
  // eta(z) evaluated at lambda.
  Matrix3 eta_at(Complex z, Complex lambda) const;
};

// Lambda^{-1} coefficient with the given slot values.
Matrix3 normalized_eta_coefficient(Complex a, Complex b);

PotentialSpec clifford_spec();
PotentialSpec rp2_spec(double u0);
PotentialSpec normalized_spec(Polynomial a, Polynomial b, std::string name = "normalized");
PotentialSpec constant_degree_one_spec(const LoopMatrix& d, std::string name = "constant");

// Radial spec from a_k z^k, b_n z^n. The coefficients are brought to a_k > 0,
// psi0 = -a_k^2 b_n < 0 by a diagonal unitary gauge and a unimodular
// coordinate rotation; both are recorded on the spec.
PotentialSpec radial_spec(int k, int n, Complex ak, Complex bn);
// Radial spec from |a_k| > 0 and psi0 <= 0 directly.
PotentialSpec radial_spec_from_psi(int k, int n, double ak, double psi0);

// Wu's formula: slots a(z) = e^{u(z,0) - u(0,0)/2}, b(z) = -psi(z) e^{-2u(z,0) + u(0,0)}.
struct WuSlots {
  Complex a;
  Complex b;
};
WuSlots wu_slots(Complex u_on_axis, double u00, Complex psi);

// Normalized spec from Wu's formula. The holomorphic slot functions are
// sampled on |z| = radius and expanded by Cauchy's formula up to `degree`;
// coefficients below 1e-13 of the largest are dropped.
PotentialSpec wu_potential(const std::function<Complex(Complex)>& u_on_axis, double u00,
                           const std::function<Complex(Complex)>& psi, int degree = 24,
                           double radius = 1.0);

struct HomogeneityData {
  double p0 = 0.0;
  double q0 = 0.0;
  double t0 = 0.0;

  Complex p(double t) const { return std::polar(1.0, p0 * t); }
  Complex q(double t) const { return std::polar(1.0, q0 * t); }
  Complex twist_entry(double t) const { return std::polar(1.0, t0 * t); }
  Matrix3 T(double t) const;
};

HomogeneityData homogeneity_params(int k, int n, double p0);

struct VacuumNormalization {
  double gauge_delta = 0.0;
  Complex coord_scale{1.0, 0.0};
  PotentialSpec spec;
};

// a, b are the matrix entries (a = i r e^{i theta}, b = i r e^{i beta}).
// Throws NotVacuum unless |a| = |b| within 1e-12.
VacuumNormalization vacuum_normalize(Complex a, Complex b);

struct RotationalPotential {
  PotentialSpec spec;
  Matrix3 T;
};

// Slots a(z^m) and z^{-3} b(z^m). Throws InvalidArgument for m < 3 and
// PoleAtOrigin when z^{-3} b(z^m) is not a polynomial.
RotationalPotential rotational_potential(int m, const Polynomial& a_fn, const Polynomial& b_fn);

// max over sampled z (|z| <= radius) and lambda in S^1 of
// ||eta(pz, q lambda) p - T eta(z, lambda) T^{-1}||.
double check_potential_symmetry(const PotentialSpec& spec, Complex p, Complex q, const Matrix3& T,
                                int samples = 12, double radius = 1.0);

struct OuterSymmetry {
  double t_hat = 0.0;
  Complex p_order;
  Complex tau_order;
  Matrix3 T;
};

OuterSymmetry outer_symmetry_order(int k, int n, double p0 = 1.0);

}  // namespace lagdpw
