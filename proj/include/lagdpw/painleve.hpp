#pragma once

#include <optional>
#include <vector>

#include "lagdpw/dpw.hpp"

namespace lagdpw {

struct PainleveParams {
  int k = 0;
  int n = 0;
  double psi0_abs = 1.0;
  double ak_abs = 1.0;

  double l() const { return (2 * k + n + 3) / 2.0; }
  double j() const { return static_cast<double>(1 - 2 * k - n) / (2 * k + n + 3); }
  // Slope of log h against log s at s -> 0.
  double c() const { return static_cast<double>(2 * k - n + 1) / (2 * k + n + 3); }
};

struct PainleveSolution {
  std::vector<double> s;
  std::vector<double> h;
  std::vector<double> h_dot;
  std::vector<double> residual;  // per-sample relative ODE residual
  double max_residual = 0.0;
  std::optional<double> blowup_at;
};

// h'' = h'^2/h - h'/s - (16/L^2) h^2/s + (16 |psi0|^2 / L^2)/h with
// L = 2k + n + 3. Throws DomainError for s <= 0 or h <= 0.
double piii_rhs(double s, double h, double h_dot, const PainleveParams& p);

// Leading-order asymptotics h0 = |a_k|^2 s0^c, h_dot0 = c h0 / s0.
std::pair<double, double> asymptotic_seed(const PainleveParams& p, double s0);

// Seed from the convergent expansion of the radial metric at r = 0:
// e^u = |a_k|^2 r^{2k} e^{w(r^2)} with w a power series in r^2.
std::pair<double, double> series_seed(const PainleveParams& p, double s0, int terms = 40);

struct PiiiOptions {
  double s0 = 1e-3;
  int samples = 200;              // log-spaced output on [s0, s_max] if `times` is empty
  std::vector<double> times;      // explicit output abscissae (ascending, >= s0)
  bool check_seed = true;         // dual-seed agreement check
  bool leading_order_seed = false;
  std::optional<std::pair<double, double>> seed;  // explicit (h, h_dot) at s0
};

// Adaptive RK45 (dopri5 dense output) from the seed at s0 up to s_max.
// Stops early with blowup_at set when h < 1e-8 or h > 1e8. Throws
// SeedTooLarge when runs seeded at s0 and s0/2 disagree by more than
// 100 tol on the common range.
PainleveSolution solve_piii(const PainleveParams& p, double s_max, double tol = 1e-10,
                            const PiiiOptions& opt = {});

struct HSamples {
  std::vector<double> s;
  std::vector<double> h;
};

// s = r^l, h = e^{u(r)} s^j.
HSamples metric_to_h(const std::vector<double>& r, const std::vector<double>& u,
                     const PainleveParams& p);

// Inverse map u(r) = log(h s^{-j}) at r = s^{1/l}.
std::vector<double> h_to_metric(const std::vector<double>& s, const std::vector<double>& h,
                                const PainleveParams& p);

struct RadialData {
  PotentialSpec spec;  // normalized a_k > 0, psi0 < 0
  PainleveParams params;
};

// Recognizes radial potentials (monomial slots) and normalizes them. Throws
// NotRadialPIII for non-monomial slots or psi0 = 0.
RadialData radial_data(const PotentialSpec& spec);

struct CrosscheckResult {
  std::vector<double> s;
  std::vector<double> h_dpw;
  std::vector<double> h_piii;
  double max_gap = 0.0;
};

// DPW along the positive real ray versus the integrated PIII solution at
// `count` log-spaced s in [s_min, s_max].
CrosscheckResult crosscheck(const PotentialSpec& spec, double s_min, double s_max, double tol,
                            const DpwOptions& opt, int count = 40);

}  // namespace lagdpw
