// Risk functionals of input-output models: regression risk with its
// RM-ANOVA and sensitivity densities, and classification risk with
// per-class error decompositions.
#pragma once

#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "rmuq/anova.hpp"
#include "rmuq/laplace.hpp"

namespace rmuq {

struct RegressionRisk {
  double risk = 0.0;  // mu f_theta
  SensitivityReport report;
};

/// Risk R(theta) = mu f_theta for a deterministic output map y = model(x):
/// the joint integral collapses to the input space, so the partition is a
/// partition of E and the squared error pulls back to f(x) = (model - y)^2.
inline RegressionRisk regression_risk(const RandomMeasure& N,
                                      const std::function<double(const Point&)>& model,
                                      const std::function<double(const Point&)>& truth,
                                      const PartitionSpec& partition) {
  Fn f = [&model, &truth](const Point& x) {
    const double d = model(x) - truth(x);
    return d * d;
  };
  RegressionRisk out;
  out.risk = N.nu.integrate(f);
  out.report = rm_anova(N, f, partition);
  return out;
}

/// Risk-decomposition variant with F = {c0}: R(theta) = Var g_theta
/// decomposed over HDMR subspaces.
inline MmAnova regression_risk_decomposition(const RandomMeasure& N, const Fn& model,
                                             int max_order = 0) {
  return mm_anova(N, model, max_order);
}

struct ClassificationRisk {
  double risk = 0.0;                 // P(y != g(x))
  std::vector<double> expected_fp;   // per class: predicted i, actual other
  std::vector<double> expected_fn;   // per class: actual i, predicted other
  std::vector<double> class_index;   // (E FP_i + E FN_i) / sum
  double index_entropy = 0.0;
  double binary_s_fp = 0.0;          // E FP / (E FP + E FN), binary output partition
  double binary_s_fn = 0.0;

  double var_dirac(double c) const { return c * risk * (1.0 - risk); }
  double var_orthogonal(double c) const { return c * risk; }
};

/// A weighted region on which the classifier is constant; integrating per
/// region keeps the discontinuous misclassification indicators exact under
/// quadrature.
struct ClassifierRegion {
  Measure nu;    // conditional law on the region
  double mass;   // nu(region)
  int label;     // classifier value on the region
};

/// Misclassification risk of an m-class classifier against a stochastic
/// label kernel Q(x, {j}) = class_probability(x, j), j in 1..m, integrated
/// over a classifier-aligned region decomposition.
inline ClassificationRisk classification_risk(
    const std::vector<ClassifierRegion>& regions,
    const std::function<double(const Point&, int)>& class_probability, int m) {
  if (m < 2) throw DomainError("classification_risk: need at least two classes");
  ClassificationRisk out;
  out.expected_fp.assign(m, 0.0);
  out.expected_fn.assign(m, 0.0);
  for (const auto& region : regions) {
    if (region.label < 1 || region.label > m)
      throw DomainError("classification_risk: region label out of range");
    for (int j = 1; j <= m; ++j) {
      const double mean_pj = region.mass * region.nu.integrate([&](const Point& x) {
        return class_probability(x, j);
      });
      if (j != region.label) {
        out.expected_fn[j - 1] += mean_pj;        // actual j, predicted region.label
        out.expected_fp[region.label - 1] += mean_pj;  // predicted label, actual j
      }
    }
  }
  double total_fn = 0.0, total_err = 0.0;
  for (int j = 0; j < m; ++j) {
    total_fn += out.expected_fn[j];
    total_err += out.expected_fp[j] + out.expected_fn[j];
  }
  out.risk = total_fn;  // every misclassification is a false negative of its class
  if (!(out.risk > 0.0))
    throw DegenerateError("classification_risk: perfect classifier has no index decomposition");
  out.class_index.resize(m);
  for (int j = 0; j < m; ++j)
    out.class_index[j] = (out.expected_fp[j] + out.expected_fn[j]) / total_err;
  out.index_entropy = entropy(out.class_index);
  if (m == 2) {
    // output-space partition {E x {1}, E x {2}} with the paper convention
    // that class 2 is the positive: errors on actual-1 are false positives
    const double efp = out.expected_fn[0];
    const double efn = out.expected_fn[1];
    out.binary_s_fp = efp / (efp + efn);
    out.binary_s_fn = efn / (efp + efn);
  }
  return out;
}

/// Convenience for a threshold classifier on a product measure: regions are
/// axis-aligned boxes, deduced exactly by box restriction.
inline ClassificationRisk classification_risk_boxes(
    const Measure& nu, const std::vector<std::pair<std::vector<double>, std::vector<double>>>& boxes,
    const std::vector<int>& labels,
    const std::function<double(const Point&, int)>& class_probability, int m) {
  if (boxes.size() != labels.size()) throw DomainError("classification_risk: boxes/labels mismatch");
  std::vector<ClassifierRegion> regions;
  for (std::size_t r = 0; r < boxes.size(); ++r) {
    auto [nur, mass] = nu.restrict_box(boxes[r].first, boxes[r].second);
    regions.push_back({std::move(nur), mass, labels[r]});
  }
  return classification_risk(regions, class_probability, m);
}

}  // namespace rmuq
