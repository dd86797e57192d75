// Closed-form first and second order statistics of Nf and the Laplace
// functional / transform machinery, including restricted functionals.
//
// E Nf    = c nu(f)
// Var Nf  = c nu(f^2) + (delta^2 - c) (nu f)^2
// Cov     = c nu(fg)  + (delta^2 - c) nu(f) nu(g)
// L(f)    = psi(nu e^{-f}),  F(alpha) = L(alpha f)
// L_A(f)  = psi(a nu_A e^{-f} + 1 - a)
#pragma once

#include <cmath>
#include <utility>
#include <vector>

#include "rmuq/counting.hpp"
#include "rmuq/errors.hpp"
#include "rmuq/measure.hpp"
#include "rmuq/stc.hpp"

namespace rmuq {

inline double mean_nf(const RandomMeasure& N, const Fn& f) {
  return N.kappa.mean() * N.nu.integrate(f);
}

/// PT shortcut variance in terms of a = nu f and b = nu f^2:
/// Binomial np(b - p a^2); Poisson cb; NegativeBinomial
/// (rp/(1-p))(b + (p/(1-p)) a^2).
inline double var_nf_pt(const CountingDistribution& kappa, double a, double b) {
  switch (kappa.kind()) {
    case CountingKind::Binomial: {
      const double n = static_cast<double>(kappa.size_param());
      const double p = kappa.success_param();
      return n * p * (b - p * a * a);
    }
    case CountingKind::Poisson:
      return kappa.mean() * b;
    case CountingKind::NegativeBinomial: {
      const double r = kappa.rate_param();
      const double p = kappa.success_param();
      const double q = p / (1.0 - p);
      return r * q * (b + q * a * a);
    }
    default:
      throw ContractError("var_nf_pt: kappa is not a PT member");
  }
}

/// PT shortcut covariance in terms of a = nu f, b = nu g, d = nu(fg).
inline double cov_nf_pt(const CountingDistribution& kappa, double a, double b, double d) {
  switch (kappa.kind()) {
    case CountingKind::Binomial: {
      const double n = static_cast<double>(kappa.size_param());
      const double p = kappa.success_param();
      return n * p * (d - p * a * b);
    }
    case CountingKind::Poisson:
      return kappa.mean() * d;
    case CountingKind::NegativeBinomial: {
      const double r = kappa.rate_param();
      const double p = kappa.success_param();
      const double q = p / (1.0 - p);
      return r * q * (d + q * a * b);
    }
    default:
      throw ContractError("cov_nf_pt: kappa is not a PT member");
  }
}

inline double var_nf_from_moments(const CountingDistribution& kappa, double a, double b) {
  const double c = kappa.mean();
  const double generic = c * b + (kappa.variance() - c) * a * a;
  if (kappa.is_poisson_type()) {
    const double shortcut = var_nf_pt(kappa, a, b);
    if (std::fabs(shortcut - generic) > 1e-9 * std::max(1.0, std::fabs(generic)))
      throw Error("var_nf: PT shortcut disagrees with the generic form");
    return shortcut;
  }
  return generic;
}

inline double var_nf(const RandomMeasure& N, const Fn& f) {
  const double a = N.nu.integrate(f);
  Fn f2 = [&f](const Point& x) {
    const double v = f(x);
    return v * v;
  };
  const double b = N.nu.integrate(f2);
  return var_nf_from_moments(N.kappa, a, b);
}

inline double cov_nf(const RandomMeasure& N, const Fn& f, const Fn& g) {
  const double a = N.nu.integrate(f);
  const double b = N.nu.integrate(g);
  Fn fg = [&f, &g](const Point& x) { return f(x) * g(x); };
  const double d = N.nu.integrate(fg);
  const double c = N.kappa.mean();
  return c * d + (N.kappa.variance() - c) * a * b;
}

/// nu e^{-f} computed with an exponent shift at the node minimum of f, so
/// large f never underflows the whole integrand; returns (value, log value).
inline std::pair<double, double> integral_exp_neg(const Measure& nu, const Fn& f) {
  double shift = nu.min_on_nodes(f);
  if (!std::isfinite(shift)) shift = 0.0;
  Fn shifted = [&f, shift](const Point& x) { return std::exp(-(f(x) - shift)); };
  const double v = nu.integrate(shifted);
  if (!(v > 0.0)) throw Error("integral_exp_neg: integral vanished; rescale f");
  return {v * std::exp(-shift), std::log(v) - shift};
}

/// L(f) = psi(nu e^{-f}) for f >= 0.
inline double laplace_functional(const RandomMeasure& N, const Fn& f) {
  const double t = integral_exp_neg(N.nu, f).first;
  return N.kappa.pgf(std::min(1.0, t));
}

struct LaplaceEval {
  double alpha = 0.0;
  double value = 1.0;            // F(alpha)
  double integrand_value = 1.0;  // nu e^{-alpha f}
};

/// F(alpha_i) = psi(nu e^{-alpha_i f}) over an alpha grid. When scale > 0
/// the normalized function f* = f / scale is transformed instead, which is
/// the numerically safe protocol for large f.
inline std::vector<LaplaceEval> laplace_transform(const RandomMeasure& N, const Fn& f,
                                                  const std::vector<double>& alphas,
                                                  double scale = 1.0) {
  if (!(scale > 0.0)) throw DomainError("laplace_transform: scale must be positive");
  std::vector<LaplaceEval> out;
  out.reserve(alphas.size());
  for (double alpha : alphas) {
    if (alpha < 0.0) throw DomainError("laplace_transform: alpha must be non-negative");
    LaplaceEval e;
    e.alpha = alpha;
    if (alpha == 0.0) {
      out.push_back(e);
      continue;
    }
    const double a = alpha / scale;
    Fn af = [&f, a](const Point& x) { return a * f(x); };
    auto [value, log_value] = integral_exp_neg(N.nu, af);
    if (value <= 0.0 || log_value < -700.0)
      throw Error("laplace_transform: integrand underflow; increase the scale C");
    e.integrand_value = std::min(1.0, value);
    e.value = N.kappa.pgf(e.integrand_value);
    out.push_back(e);
  }
  return out;
}

/// L_A(f) = psi(a nu_A e^{-f} + 1 - a) for a restriction of mass a with
/// restricted law nu_A.
inline double restricted_laplace(const RandomMeasure& N, const Measure& nu_A, double a,
                                 const Fn& f) {
  if (!(a > 0.0 && a <= 1.0)) throw DegenerateError("restricted_laplace: mass must lie in (0,1]");
  const double inner = integral_exp_neg(nu_A, f).first;
  return N.kappa.pgf(std::min(1.0, a * inner + 1.0 - a));
}

/// -dF/d alpha at 0 by central differences on the scaled transform; used as
/// a numerical cross-check of mean_nf.
inline double laplace_mean_estimate(const RandomMeasure& N, const Fn& f, double scale,
                                    double h = 1e-5) {
  const auto evals = laplace_transform(N, f, {h, 2.0 * h}, scale);
  // F(-h) is not defined; use one-sided 2nd order: F'(0) ~ (4F(h)-F(2h)-3)/(2h)
  const double d = (4.0 * evals[0].value - evals[1].value - 3.0) / (2.0 * h);
  return -d * scale;
}

}  // namespace rmuq
