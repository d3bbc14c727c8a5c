#include "lagdpw/painleve.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include <boost/numeric/odeint.hpp>

#include "lagdpw/error.hpp"

namespace lagdpw {

namespace {

using State = std::array<double, 2>;
namespace ode = boost::numeric::odeint;

constexpr double kBlowLow = 1e-8;
constexpr double kBlowHigh = 1e8;

// Coefficients w_m of w(x) = sum_{m>=1} w_m x^m, x = r^2, solving
// 4 m^2 w_m = -4 |a_k|^2 E_{m-1-k} + 4 |psi0|^2 |a_k|^{-4} G_{m-1-n}
// with E = exp(w), G = exp(-2w).
std::vector<double> metric_series(const PainleveParams& p, int terms) {
  std::vector<double> w(terms + 1, 0.0), e(terms + 1, 0.0), g(terms + 1, 0.0);
  e[0] = g[0] = 1.0;
  const double a2 = p.ak_abs * p.ak_abs;
  const double q = p.psi0_abs * p.psi0_abs / (a2 * a2);
  for (int m = 1; m <= terms; ++m) {
    double rhs = 0.0;
    if (m - 1 - p.k >= 0) rhs -= a2 * e[m - 1 - p.k];
    if (m - 1 - p.n >= 0) rhs += q * g[m - 1 - p.n];
    w[m] = rhs / (static_cast<double>(m) * m);
    double se = 0.0, sg = 0.0;
    for (int i = 1; i <= m; ++i) {
      se += i * w[i] * e[m - i];
      sg += -2.0 * i * w[i] * g[m - i];
    }
    e[m] = se / m;
    g[m] = sg / m;
  }
  return w;
}

struct RunResult {
  std::vector<double> s, h, hd;
  std::optional<double> blowup_at;
};

RunResult integrate(const PainleveParams& p, State y, double s0, double s_max, double tol,
                    const std::vector<double>& times) {
  auto rhs = [&](const State& x, State& dx, double s) {
    dx[0] = x[1];
    dx[1] = piii_rhs(s, x[0], x[1], p);
  };
  auto stepper = ode::make_dense_output(tol, tol, ode::runge_kutta_dopri5<State>());
  stepper.initialize(y, s0, std::min(1e-3 * s0, (s_max - s0) / 16.0));
  RunResult out;
  std::size_t next = 0;
  while (next < times.size() && times[next] < s0) ++next;
  while (next < times.size()) {
    const auto [t0, t1] = stepper.do_step(rhs);
    const State& cur = stepper.current_state();
    while (next < times.size() && times[next] <= t1) {
      State x;
      stepper.calc_state(times[next], x);
      out.s.push_back(times[next]);
      out.h.push_back(x[0]);
      out.hd.push_back(x[1]);
      ++next;
    }
    (void)t0;
    if (!(cur[0] > kBlowLow && cur[0] < kBlowHigh) || !std::isfinite(cur[1])) {
      out.blowup_at = t1;
      // Samples past the last accepted healthy step are dropped.
      while (!out.s.empty() && !(out.h.back() > kBlowLow && out.h.back() < kBlowHigh)) {
        out.s.pop_back();
        out.h.pop_back();
        out.hd.pop_back();
      }
      break;
    }
    if (t1 >= s_max) break;
  }
  return out;
}

State seed_state(const PainleveParams& p, double s0, bool leading) {
  const auto [h, hd] = leading ? asymptotic_seed(p, s0) : series_seed(p, s0);
  return {h, hd};
}

}  // namespace

double piii_rhs(double s, double h, double h_dot, const PainleveParams& p) {
  if (!(s > 0.0)) fail(ErrorKind::DomainError, "s must be positive");
  if (!(h > 0.0)) fail(ErrorKind::DomainError, "h must be positive");
  const double L = 2 * p.k + p.n + 3;
  const double c = 16.0 / (L * L);
  return h_dot * h_dot / h - h_dot / s - c * h * h / s + c * p.psi0_abs * p.psi0_abs / h;
}

std::pair<double, double> asymptotic_seed(const PainleveParams& p, double s0) {
  if (!(s0 > 0.0)) fail(ErrorKind::DomainError, "seed abscissa must be positive");
  const double h0 = p.ak_abs * p.ak_abs * std::pow(s0, p.c());
  return {h0, p.c() * h0 / s0};
}

std::pair<double, double> series_seed(const PainleveParams& p, double s0, int terms) {
  if (!(s0 > 0.0)) fail(ErrorKind::DomainError, "seed abscissa must be positive");
  const auto w = metric_series(p, terms);
  const double r = std::pow(s0, 1.0 / p.l());
  const double x = r * r;
  double W = 0.0, dW = 0.0;
  for (int m = terms; m >= 1; --m) {
    W = W * x + w[m];
    dW = dW * x + m * w[m];
  }
  W *= x;  // W = sum w_m x^m, dW = sum m w_m x^{m-1}
  const double u = 2.0 * std::log(p.ak_abs) + 2 * p.k * std::log(r) + W;
  const double du_dr = 2 * p.k / r + 2.0 * r * dW;
  const double h = std::exp(u) * std::pow(s0, p.j());
  const double dr_ds = r / (p.l() * s0);
  return {h, h * (du_dr * dr_ds + p.j() / s0)};
}

PainleveSolution solve_piii(const PainleveParams& p, double s_max, double tol,
                            const PiiiOptions& opt) {
  if (!(opt.s0 > 0.0) || !(s_max > opt.s0)) fail(ErrorKind::DomainError, "need 0 < s0 < s_max");
  if (!(p.ak_abs > 0.0)) fail(ErrorKind::DomainError, "|a_k| must be positive");
  std::vector<double> times = opt.times;
  if (times.empty()) {
    const int n = std::max(2, opt.samples);
    for (int i = 0; i < n; ++i)
      times.push_back(opt.s0 * std::pow(s_max / opt.s0, static_cast<double>(i) / (n - 1)));
    times.back() = s_max;
  }
  std::sort(times.begin(), times.end());

  const State y0 = opt.seed ? State{opt.seed->first, opt.seed->second}
                           : seed_state(p, opt.s0, opt.leading_order_seed);
  RunResult run = integrate(p, y0, opt.s0, s_max, tol, times);
  if (opt.check_seed && !opt.seed) {
    const double s_half = opt.s0 / 2.0;
    RunResult half = integrate(p, seed_state(p, s_half, opt.leading_order_seed), s_half, s_max,
                               tol, run.s);
    const std::size_t m = std::min(run.s.size(), half.s.size());
    double gap = 0.0;
    for (std::size_t i = 0; i < m; ++i)
      gap = std::max(gap, std::abs(run.h[i] - half.h[i]) / std::max(1.0, std::abs(run.h[i])));
    if (gap > 100.0 * tol)
      fail(ErrorKind::SeedTooLarge, "seeds at s0 and s0/2 disagree by " + std::to_string(gap));
  }

  PainleveSolution sol;
  sol.s = run.s;
  sol.h = run.h;
  sol.h_dot = run.hd;
  sol.blowup_at = run.blowup_at;
  // Residual of the sampled solution: h'' from a central difference of the
  // dense-output h' against the right-hand side, relative to |rhs| + 1.
  auto rhs = [&](const State& x, State& dx, double s) {
    dx[0] = x[1];
    dx[1] = piii_rhs(s, x[0], x[1], p);
  };
  sol.residual.assign(sol.s.size(), 0.0);
  for (std::size_t i = 0; i < sol.s.size(); ++i) {
    const double s = sol.s[i];
    const double d = 1e-4 * s;
    State x{sol.h[i], sol.h_dot[i]}, xp = x, xm = x;
    ode::integrate_adaptive(ode::make_controlled(tol * 1e-2, tol * 1e-2,
                                                 ode::runge_kutta_dopri5<State>()),
                            rhs, xp, s, s + d, d / 4);
    ode::integrate_adaptive(ode::make_controlled(tol * 1e-2, tol * 1e-2,
                                                 ode::runge_kutta_dopri5<State>()),
                            rhs, xm, s, s - d, -d / 4);
    const double hdd = (xp[1] - xm[1]) / (2.0 * d);
    const double f = piii_rhs(s, x[0], x[1], p);
    sol.residual[i] = std::abs(hdd - f) / (std::abs(f) + 1.0);
    sol.max_residual = std::max(sol.max_residual, sol.residual[i]);
  }
  return sol;
}

HSamples metric_to_h(const std::vector<double>& r, const std::vector<double>& u,
                     const PainleveParams& p) {
  if (r.size() != u.size()) fail(ErrorKind::InvalidArgument, "r and u sizes differ");
  HSamples out;
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (!(r[i] > 0.0)) fail(ErrorKind::DomainError, "radius must be positive");
    const double s = std::pow(r[i], p.l());
    out.s.push_back(s);
    out.h.push_back(std::exp(u[i]) * std::pow(s, p.j()));
  }
  return out;
}

std::vector<double> h_to_metric(const std::vector<double>& s, const std::vector<double>& h,
                                const PainleveParams& p) {
  std::vector<double> u;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (!(s[i] > 0.0) || !(h[i] > 0.0)) fail(ErrorKind::DomainError, "s and h must be positive");
    u.push_back(std::log(h[i]) - p.j() * std::log(s[i]));
  }
  return u;
}

RadialData radial_data(const PotentialSpec& spec) {
  if (!spec.is_normalized()) fail(ErrorKind::NotRadialPIII, "potential is not normalized");
  auto single_term = [](const Polynomial& q, int& deg, Complex& coef) {
    int count = 0;
    for (std::size_t i = 0; i < q.c.size(); ++i)
      if (std::abs(q.c[i]) > 1e-14) {
        deg = static_cast<int>(i);
        coef = q.c[i];
        ++count;
      }
    return count == 1;
  };
  int k = 0, n = 0;
  Complex ak, bn;
  if (!single_term(spec.a, k, ak)) fail(ErrorKind::NotRadialPIII, "slot a is not a monomial");
  if (spec.b.is_zero()) fail(ErrorKind::NotRadialPIII, "psi0 = 0 gives no Painleve reduction");
  if (!single_term(spec.b, n, bn)) fail(ErrorKind::NotRadialPIII, "slot b is not a monomial");
  RadialData out;
  out.spec = radial_spec(k, n, ak, bn);
  out.spec.trunc = spec.trunc;
  out.params.k = k;
  out.params.n = n;
  out.params.ak_abs = std::abs(ak);
  out.params.psi0_abs = std::abs(out.spec.psi0);
  return out;
}

CrosscheckResult crosscheck(const PotentialSpec& spec, double s_min, double s_max, double tol,
                            const DpwOptions& opt, int count) {
  if (!(s_min > 0.0) || !(s_max > s_min) || count < 2)
    fail(ErrorKind::DomainError, "need 0 < s_min < s_max and count >= 2");
  const RadialData rd = radial_data(spec);
  const PainleveParams& p = rd.params;
  CrosscheckResult out;
  std::vector<double> r, u;
  for (int i = 0; i < count; ++i) {
    const double s = s_min * std::pow(s_max / s_min, static_cast<double>(i) / (count - 1));
    out.s.push_back(s);
    r.push_back(std::pow(s, 1.0 / p.l()));
  }
  for (double ri : r) u.push_back(surface_sample(rd.spec, Complex(ri, 0.0), 1.0, opt).u);
  out.h_dpw = metric_to_h(r, u, p).h;

  PiiiOptions po;
  po.s0 = std::min(1e-3, s_min / 2.0);
  po.times = out.s;
  const PainleveSolution sol = solve_piii(p, s_max, tol, po);
  if (sol.s.size() != out.s.size())
    fail(ErrorKind::DomainError, "PIII solution blew up inside the crosscheck range");
  out.h_piii = sol.h;
  for (std::size_t i = 0; i < out.s.size(); ++i)
    out.max_gap = std::max(out.max_gap, std::abs(out.h_dpw[i] - out.h_piii[i]));
  return out;
}

}  // namespace lagdpw
