// Randomized controlled trials as random counting measures on {C, T} with a
// measurement kernel: group statistics, sensitivity indices and entropy,
// the vaccine-efficacy variant, mark-space restrictions, and the adaptive
// second-stage orthogonal-die rule.
#pragma once

#include <cmath>
#include <optional>
#include <string>

#include "rmuq/anova.hpp"
#include "rmuq/counting.hpp"
#include "rmuq/special.hpp"

namespace rmuq {

struct RctDesign {
  CountingDistribution kappa;
  bool vaccine = false;  // infection-indicator measurements
  // general measurement moments per group
  double c_T = 0.0, delta2_T = 0.0;
  double c_C = 0.0, delta2_C = 0.0;
  // infection probabilities for the vaccine variant
  double p_T = 0.0, p_C = 0.0;

  static RctDesign general(CountingDistribution k, double cT, double d2T, double cC, double d2C) {
    RctDesign d{std::move(k)};
    d.c_T = cT;
    d.delta2_T = d2T;
    d.c_C = cC;
    d.delta2_C = d2C;
    return d;
  }
  static RctDesign vaccine_trial(CountingDistribution k, double pT, double pC) {
    RctDesign d{std::move(k)};
    d.vaccine = true;
    d.p_T = pT;
    d.p_C = pC;
    return d;
  }
};

struct RctAnalysis {
  double mean_T = 0.0, mean_C = 0.0;
  double var_T = 0.0, var_C = 0.0;
  double cov_TC = 0.0;
  double s_T = 0.0, s_C = 0.0;
  double index_entropy = 0.0;
  bool orthogonal = false;
};

/// Closed-form group statistics with nu{C} = nu{T} = 1/2. For orthogonal
/// kappa the normalized variances form the sensitivity distribution
/// S_T = (c_T^2 + d_T^2)/(c_T^2 + d_T^2 + c_C^2 + d_C^2) (general) or
/// S_T = P(T)/(P(T) + P(C)) (vaccine).
inline RctAnalysis rct_analyze(const RctDesign& d) {
  RctAnalysis out;
  const double c = d.kappa.mean();
  const double defect = d.kappa.variance() - c;
  out.orthogonal = d.kappa.is_orthogonal();
  if (d.vaccine) {
    if (!(d.p_T >= 0.0 && d.p_C >= 0.0 && d.p_T <= 1.0 && d.p_C <= 1.0))
      throw DomainError("rct: infection probabilities must lie in [0,1]");
    if (d.p_T + d.p_C <= 0.0) throw DegenerateError("rct: all-zero event counts");
    out.mean_T = 0.5 * c * d.p_T;
    out.mean_C = 0.5 * c * d.p_C;
    // (nu x Q) f_T = P(T)/2, (nu x Q) f_T^2 = P(T)/2 for indicator marks
    out.var_T = 0.5 * c * d.p_T + defect * 0.25 * d.p_T * d.p_T;
    out.var_C = 0.5 * c * d.p_C + defect * 0.25 * d.p_C * d.p_C;
    out.cov_TC = defect * 0.25 * d.p_T * d.p_C;
    out.s_T = d.p_T / (d.p_T + d.p_C);
  } else {
    const double m2T = d.c_T * d.c_T + d.delta2_T;
    const double m2C = d.c_C * d.c_C + d.delta2_C;
    if (m2T + m2C <= 0.0) throw DegenerateError("rct: degenerate measurements");
    out.mean_T = 0.5 * c * d.c_T;
    out.mean_C = 0.5 * c * d.c_C;
    out.var_T = 0.5 * c * m2T + defect * 0.25 * d.c_T * d.c_T;
    out.var_C = 0.5 * c * m2C + defect * 0.25 * d.c_C * d.c_C;
    out.cov_TC = defect * 0.25 * d.c_T * d.c_C;
    out.s_T = m2T / (m2T + m2C);
  }
  out.s_C = 1.0 - out.s_T;
  out.index_entropy = entropy({out.s_T, out.s_C});
  return out;
}

/// Mark-space restriction indices S^A_T = P_A(T)/(P_A(T)+P_A(C)).
inline std::pair<double, double> rct_restricted_indices(double pA_T, double pA_C) {
  if (pA_T + pA_C <= 0.0) throw DegenerateError("rct: restricted events all zero");
  const double sT = pA_T / (pA_T + pA_C);
  return {sT, 1.0 - sT};
}

/// Per-group size from the standard two-proportion z-test power analysis.
inline double rct_power_two_proportion(double p1, double p2, double alpha = 0.05,
                                       double power = 0.8) {
  if (!(p1 > 0.0 && p1 < 1.0 && p2 > 0.0 && p2 < 1.0) || p1 == p2)
    throw DomainError("power analysis: bad proportions");
  const double za = normal_quantile(1.0 - alpha / 2.0);
  const double zb = normal_quantile(power);
  const double pbar = 0.5 * (p1 + p2);
  const double num = za * std::sqrt(2.0 * pbar * (1.0 - pbar)) +
                     zb * std::sqrt(p1 * (1.0 - p1) + p2 * (1.0 - p2));
  return num * num / ((p1 - p2) * (p1 - p2));
}

/// Stage-two die: the first orthogonal die with lower support
/// m >= c2 - K1. A trial that is already powered (c2 <= K1) skips the
/// second stage and returns nothing.
inline std::optional<OrthogonalDieEntry> rct_adapt(double c2, long long k1) {
  if (c2 <= static_cast<double>(k1)) return std::nullopt;
  const double needed = c2 - static_cast<double>(k1);
  for (int count = 16;; count *= 2) {
    const auto dice = enumerate_orthogonal_dice(count);
    for (const auto& e : dice)
      if (static_cast<double>(e.m) >= needed) return e;
    if (count > (1 << 20)) throw SolverError("rct_adapt: die table exhausted");
  }
}

struct RctPreset {
  std::string name;
  double enrollees;
  double events_T;
  double events_C;

  RctDesign design() const {
    const double half = enrollees / 2.0;
    return RctDesign::vaccine_trial(CountingDistribution::poisson(enrollees), events_T / half,
                                    events_C / half);
  }
};

inline RctPreset rct_preset(const std::string& name) {
  if (name == "moderna") return {"moderna", 30400.0, 5.0, 90.0};
  if (name == "pfizer") return {"pfizer", 44000.0, 8.0, 162.0};
  throw DomainError("rct_preset: unknown preset " + name);
}

}  // namespace rmuq
