// Sample statistics and classical goodness-of-fit tests used by the
// simulation checks: chi-square, two-sample Kolmogorov-Smirnov, Jarque-Bera.
#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "rmuq/errors.hpp"
#include "rmuq/special.hpp"

namespace rmuq {

struct SampleSummary {
  std::size_t n = 0;
  double mean = 0.0;
  double variance = 0.0;       // unbiased
  double mean_se = 0.0;
  double variance_se = 0.0;    // jackknife
  double skewness = 0.0;
  double kurtosis = 0.0;       // non-excess
};

inline SampleSummary summarize(const std::vector<double>& xs) {
  SampleSummary s;
  s.n = xs.size();
  if (s.n < 2) throw DomainError("summarize: need at least two samples");
  const double n = static_cast<double>(s.n);
  double m = 0.0;
  for (double x : xs) m += x;
  m /= n;
  double m2 = 0.0, m3 = 0.0, m4 = 0.0;
  for (double x : xs) {
    const double d = x - m;
    m2 += d * d;
    m3 += d * d * d;
    m4 += d * d * d * d;
  }
  m2 /= n;
  m3 /= n;
  m4 /= n;
  s.mean = m;
  s.variance = m2 * n / (n - 1.0);
  s.mean_se = std::sqrt(s.variance / n);
  // jackknife standard error of the variance estimate
  s.variance_se = std::sqrt(std::max(0.0, (m4 - (n - 3.0) / (n - 1.0) * m2 * m2) / n));
  s.skewness = m2 > 0.0 ? m3 / std::pow(m2, 1.5) : 0.0;
  s.kurtosis = m2 > 0.0 ? m4 / (m2 * m2) : 0.0;
  return s;
}

struct CovarianceSummary {
  double covariance = 0.0;
  double se = 0.0;  // jackknife
};

inline CovarianceSummary covariance(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() != ys.size() || xs.size() < 2) throw DomainError("covariance: bad inputs");
  const double n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double c = 0.0, q = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double p = (xs[i] - mx) * (ys[i] - my);
    c += p;
    q += p * p;
  }
  const double mc = c / n;
  CovarianceSummary out;
  out.covariance = c / (n - 1.0);
  out.se = std::sqrt(std::max(0.0, (q / n - mc * mc) / n));
  return out;
}

/// Chi-square goodness of fit from observed counts and expected counts.
/// Returns the p-value; degrees of freedom = cells - 1 - fitted.
inline double chi_square_test(const std::vector<double>& observed,
                              const std::vector<double>& expected, int fitted = 0) {
  if (observed.size() != expected.size() || observed.size() < 2)
    throw DomainError("chi_square_test: bad inputs");
  double stat = 0.0;
  int cells = 0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    if (expected[i] <= 0.0) continue;
    const double d = observed[i] - expected[i];
    stat += d * d / expected[i];
    ++cells;
  }
  const int dof = cells - 1 - fitted;
  if (dof < 1) throw DomainError("chi_square_test: nonpositive dof");
  return chi_square_sf(stat, dof);
}

/// Two-sample Kolmogorov-Smirnov p-value (asymptotic).
inline double ks_two_sample(std::vector<double> a, std::vector<double> b) {
  if (a.size() < 8 || b.size() < 8) throw DomainError("ks_two_sample: samples too small");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::fabs(i / na - j / nb));
  }
  const double en = std::sqrt(na * nb / (na + nb));
  const double lambda = (en + 0.12 + 0.11 / en) * d;
  double p = 0.0;
  double sign = 1.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = sign * std::exp(-2.0 * k * k * lambda * lambda);
    p += term;
    sign = -sign;
    if (std::fabs(term) < 1e-12) break;
  }
  return std::clamp(2.0 * p, 0.0, 1.0);
}

/// Jarque-Bera normality test p-value.
inline double jarque_bera(const std::vector<double>& xs) {
  const SampleSummary s = summarize(xs);
  const double n = static_cast<double>(s.n);
  const double jb =
      n / 6.0 * (s.skewness * s.skewness + 0.25 * (s.kurtosis - 3.0) * (s.kurtosis - 3.0));
  return chi_square_sf(jb, 2.0);
}

}  // namespace rmuq
