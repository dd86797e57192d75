// Dynamic survival analysis of epidemics on Poisson-type networks: the
// reduced susceptible-decay ODE, final-size equation, Lambert-W closed form
// for the Poisson network, and the binomial random-measure UQ layer.
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "rmuq/errors.hpp"
#include "rmuq/laplace.hpp"
#include "rmuq/measure.hpp"
#include "rmuq/special.hpp"
#include "rmuq/stc.hpp"

namespace rmuq {

struct DsaParams {
  double beta = 0.0;        // infection rate
  double gamma = 0.0;       // recovery rate
  double rho = 0.0;         // initial fraction of infected
  double kappa_net = 1.0;   // average network density mu_ex / mu
  double mu_deg = 0.0;      // mean degree
  double delta_drop = 0.0;  // quarantine / social-distancing rate

  double a() const { return beta + gamma + delta_drop; }
  double b() const { return beta * mu_deg; }
  double c() const { return beta * mu_deg * rho; }
  double r0() const { return kappa_net * b() / a(); }

  void validate() const {
    if (!(beta > 0.0 && gamma > 0.0 && mu_deg > 0.0))
      throw DomainError("dsa: beta, gamma, mu must be positive");
    if (!(rho > 0.0 && rho < 1.0)) throw DomainError("dsa: rho must lie in (0,1)");
    if (!(kappa_net > 0.0)) throw DomainError("dsa: kappa must be positive");
    if (delta_drop < 0.0) throw DomainError("dsa: delta must be non-negative");
    if (!(r0() > 0.0)) throw DomainError("dsa: R0 must be positive");
  }
};

namespace detail {

// right-hand side of the reduced susceptible equation (-dS/dt)
inline double dsa_decay(const DsaParams& p, double s) {
  s = std::clamp(s, 1e-300, 1.0);
  const double k = p.kappa_net;
  const double sk = std::pow(s, k);
  if (std::fabs(k - 1.0) < 1e-12)
    return p.a() * s * std::log(s) + p.b() * (s - s * s) + p.c() * s;
  return p.a() / (1.0 - k) * s * (1.0 - std::pow(s, k - 1.0)) + p.b() * (1.0 - sk) * sk +
         p.c() * sk;
}

}  // namespace detail

struct DsaSolution {
  DsaParams params;
  double dt = 0.0;
  std::vector<double> t;
  std::vector<double> s;        // reduced equation path
  std::vector<double> s_full;   // full-system cross-check path
  std::vector<double> i_full;   // infectious fraction from the full system
  std::vector<double> d_full;   // average density of infection
  double tau_inf = 0.0;         // final-size root
  double s_inf_lambert = -1.0;  // kappa = 1 closed form (negative when n/a)
  double richardson_error = 0.0;

  double s_at(double T) const {
    if (T <= 0.0) return 1.0;
    if (T >= t.back()) return s.back();
    const double pos = T / dt;
    const std::size_t i = static_cast<std::size_t>(pos);
    const double frac = pos - static_cast<double>(i);
    return s[i] * (1.0 - frac) + s[std::min(i + 1, s.size() - 1)] * frac;
  }
  double tau(double T) const { return 1.0 - s_at(T); }

  /// -dS/dt at time T: the improper infection-time density.
  double decay_at(double T) const { return detail::dsa_decay(params, s_at(T)); }

  /// Proper infection-time law on (0, t_max]: density -dS/tau_inf.
  Measure infection_time_measure() const {
    const DsaParams p = params;
    const auto self = *this;
    return Measure::product_axes(
        {Axis::density(1e-9, t.back(),
                       [self](double x) { return self.decay_at(x); }, 1024, 8)},
        "dsa_infection_time");
  }
};

/// tau_inf from the final-size equation. The kappa = 1 branch solves
/// tau = 1 - exp(-R0 (tau + rho)); the kappa != 1 branch solves the
/// stationarity of the reduced decay equation,
///   kappa/(1-kappa) ((1-tau)^{1-kappa} - 1) = R0 ((1-tau)^kappa - (1+rho)),
/// taking the first root above zero (the long-time ODE limit).
inline double dsa_tau_inf(const DsaParams& p) {
  p.validate();
  const double k = p.kappa_net;
  const double r0 = p.r0();
  auto g = [&](double tau) {
    const double s = 1.0 - tau;
    if (std::fabs(k - 1.0) < 1e-12) return tau - 1.0 + std::exp(-r0 * (tau + p.rho));
    return k / (1.0 - k) * (std::pow(s, 1.0 - k) - 1.0) -
           r0 * (std::pow(s, k) - (1.0 + p.rho));
  };
  // scan for the first sign change, then bisect to 1e-14
  const int grid = 4000;
  double lo = 1e-9, hi = -1.0;
  double glo = g(lo);
  for (int i = 1; i <= grid; ++i) {
    const double tau = static_cast<double>(i) / (grid + 1);
    const double gv = g(tau);
    if (glo * gv <= 0.0) {
      hi = tau;
      break;
    }
    lo = tau;
    glo = gv;
  }
  if (hi < 0.0) throw SolverError("dsa_tau_inf: no sign change found in (0,1)");
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (g(lo) * g(mid) <= 0.0)
      hi = mid;
    else
      lo = mid;
    if (hi - lo < 1e-15) break;
  }
  return 0.5 * (lo + hi);
}

/// kappa = 1 closed form S_inf = -(1/R0) W(-R0 e^{-R0(1+rho)}).
inline double dsa_s_inf_lambert(const DsaParams& p) {
  if (std::fabs(p.kappa_net - 1.0) > 1e-12)
    throw ContractError("dsa_s_inf_lambert: kappa must equal 1");
  const double r0 = p.r0();
  return -lambert_w0(-r0 * std::exp(-r0 * (1.0 + p.rho))) / r0;
}

/// RK4 integration of the reduced equation plus the full (S, I, D) system;
/// a Richardson step-halving error estimate guards the step size.
inline DsaSolution dsa_solve(const DsaParams& p, double t_max, double dt = 1e-3) {
  p.validate();
  if (!(t_max > 0.0 && dt > 0.0)) throw DomainError("dsa_solve: bad time grid");
  DsaSolution sol;
  sol.params = p;
  sol.dt = dt;
  const std::size_t steps = static_cast<std::size_t>(std::ceil(t_max / dt));

  auto integrate_reduced = [&](double step, std::vector<double>* out) {
    double s = 1.0;
    if (out) out->push_back(s);
    const std::size_t n = static_cast<std::size_t>(std::ceil(t_max / step));
    for (std::size_t i = 0; i < n; ++i) {
      const double k1 = -detail::dsa_decay(p, s);
      const double k2 = -detail::dsa_decay(p, s + 0.5 * step * k1);
      const double k3 = -detail::dsa_decay(p, s + 0.5 * step * k2);
      const double k4 = -detail::dsa_decay(p, s + step * k3);
      s += step / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      s = std::clamp(s, 0.0, 1.0);
      if (out) out->push_back(s);
    }
    return s;
  };

  sol.t.reserve(steps + 1);
  for (std::size_t i = 0; i <= steps; ++i) sol.t.push_back(i * dt);
  integrate_reduced(dt, &sol.s);
  const double end_half = integrate_reduced(0.5 * dt, nullptr);
  sol.richardson_error = std::fabs(end_half - sol.s.back());

  // full system (S, I, D)
  const double k = p.kappa_net;
  auto rhs = [&](const std::array<double, 3>& y, std::array<double, 3>& dy) {
    const double S = std::clamp(y[0], 1e-300, 1.0);
    const double I = y[1];
    const double D = y[2];
    dy[0] = -p.beta * D * S;
    dy[1] = p.beta * D * S - p.gamma * I;
    dy[2] = p.beta * (1.0 - k) * D * D +
            (k * p.mu_deg * p.beta * std::pow(S, 2.0 * k - 1.0) - p.beta - p.gamma -
             p.delta_drop) *
                D;
  };
  std::array<double, 3> y = {1.0, p.rho, p.mu_deg * p.rho};
  sol.s_full.push_back(y[0]);
  sol.i_full.push_back(y[1]);
  sol.d_full.push_back(y[2]);
  std::array<double, 3> k1, k2, k3, k4, tmp;
  for (std::size_t i = 0; i < steps; ++i) {
    rhs(y, k1);
    for (int j = 0; j < 3; ++j) tmp[j] = y[j] + 0.5 * dt * k1[j];
    rhs(tmp, k2);
    for (int j = 0; j < 3; ++j) tmp[j] = y[j] + 0.5 * dt * k2[j];
    rhs(tmp, k3);
    for (int j = 0; j < 3; ++j) tmp[j] = y[j] + dt * k3[j];
    rhs(tmp, k4);
    for (int j = 0; j < 3; ++j) y[j] += dt / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
    y[0] = std::clamp(y[0], 0.0, 1.0);
    sol.s_full.push_back(y[0]);
    sol.i_full.push_back(y[1]);
    sol.d_full.push_back(y[2]);
  }

  sol.tau_inf = dsa_tau_inf(p);
  if (std::fabs(p.kappa_net - 1.0) < 1e-12) sol.s_inf_lambert = dsa_s_inf_lambert(p);
  return sol;
}

/// Random-measure UQ of the epidemic: N = (Binomial(n, tau_inf), nu) with
/// nu the proper infection-time law; partition A = (0,T], B = (T, inf).
struct DsaUq {
  double n = 0.0;
  double tau_T = 0.0;
  double tau_inf = 0.0;
  // counts
  double mean_total = 0.0, var_total = 0.0;
  double mean_A = 0.0, var_A = 0.0;
  double mean_B = 0.0, var_B = 0.0;
  double cov_AB = 0.0;
  // indices
  double s_a_a = 0.0, s_b_a = 0.0, s_ab_b = 0.0;
  // population quantities
  double k_T = 0.0, s_T = 0.0, k_inf = 0.0, s_inf = 0.0;

  double identity_residual() const { return s_a_a + s_b_a + 2.0 * s_ab_b - 1.0; }
};

inline DsaUq dsa_uq(const DsaSolution& sol, double T, double n_population) {
  if (!(n_population > 0.0)) throw DomainError("dsa_uq: population must be positive");
  DsaUq uq;
  uq.n = n_population;
  uq.tau_T = sol.tau(T);
  uq.tau_inf = sol.tau_inf;
  const double ti = uq.tau_inf, tT = uq.tau_T;
  if (!(ti > 0.0 && ti < 1.0)) throw DegenerateError("dsa_uq: tau_inf degenerate");
  const double n = uq.n;
  uq.mean_total = n * ti;
  uq.var_total = n * ti * (1.0 - ti);
  uq.mean_A = n * tT;
  uq.var_A = n * tT * (1.0 - tT);
  uq.mean_B = n * (ti - tT);
  uq.var_B = n * (ti - tT) * (1.0 + tT - ti);
  uq.cov_AB = -n * tT * (ti - tT);
  uq.s_a_a = tT * (1.0 - tT) / (ti * (1.0 - ti));
  uq.s_b_a = (ti - tT) * (1.0 + tT - ti) / (ti * (1.0 - ti));
  uq.s_ab_b = -tT * (ti - tT) / (ti * (1.0 - ti));
  uq.k_T = n * tT;
  uq.s_T = n - uq.k_T;
  uq.k_inf = ti * n;
  uq.s_inf = (1.0 - ti) * n;
  return uq;
}

/// Same quantities parameterized by the observed count k_T (n = k_T / tau_T).
inline DsaUq dsa_uq_from_count(const DsaSolution& sol, double T, double k_T) {
  const double tau_T = sol.tau(T);
  if (!(tau_T > 0.0)) throw DegenerateError("dsa_uq_from_count: tau_T is zero");
  return dsa_uq(sol, T, k_T / tau_T);
}

/// Time-series functional statistics of the epidemic random measure
/// N = (Binomial(n, tau_inf), nu): E Nf = n tau_inf nu f and
/// Var Nf = n tau_inf (nu f^2 - tau_inf (nu f)^2); restricted to
/// A = (T, U] the counting law is Binomial(n, tau_U - tau_T).
struct DsaSeriesStats {
  double mean = 0.0;
  double variance = 0.0;
};

inline DsaSeriesStats dsa_series(const DsaSolution& sol, double n, const Fn& f) {
  auto nu = sol.infection_time_measure();
  const double m1 = nu.integrate(f);
  const double m2 = nu.integrate([&f](const Point& x) {
    const double v = f(x);
    return v * v;
  });
  const double p = sol.tau_inf;
  return {n * p * m1, n * p * (m2 - p * m1 * m1)};
}

inline DsaSeriesStats dsa_series_restricted(const DsaSolution& sol, double n, const Fn& f,
                                            double T, double U) {
  auto nu = sol.infection_time_measure();
  auto [nuA, mass] = nu.restrict_box({T}, {U});
  const double p = sol.tau(U) - sol.tau(T);  // restricted binomial parameter
  const double m1 = nuA.integrate(f);
  const double m2 = nuA.integrate([&f](const Point& x) {
    const double v = f(x);
    return v * v;
  });
  return {n * p * m1, n * p * (m2 - p * m1 * m1)};
}

}  // namespace rmuq
