// Gaussian process regression with the radial basis kernel: Cholesky fit,
// posterior mean/variance, and quadrature diagnostics against a known truth.
#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <utility>
#include <vector>

#include "rmuq/errors.hpp"
#include "rmuq/measure.hpp"

namespace rmuq {

class GprModel {
 public:
  GprModel(std::vector<Point> inputs, const std::vector<double>& outputs, double gamma,
           double sigma2)
      : inputs_(std::move(inputs)), gamma_(gamma), sigma2_(sigma2) {
    const int n = static_cast<int>(inputs_.size());
    if (n < 1 || outputs.size() != inputs_.size()) throw DomainError("gpr: bad training data");
    Eigen::MatrixXd K(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) K(i, j) = kernel(inputs_[i], inputs_[j]);
    K.diagonal().array() += sigma2_;
    llt_.compute(K);
    if (llt_.info() != Eigen::Success) {
      // one jitter attempt, then fail
      K.diagonal().array() += 1e-10;
      llt_.compute(K);
      jittered_ = true;
      if (llt_.info() != Eigen::Success)
        throw SolverError("gpr: gram matrix is not positive definite");
    }
    const Eigen::VectorXd y = Eigen::Map<const Eigen::VectorXd>(outputs.data(), n);
    weights_ = llt_.solve(y);
  }

  double kernel(const Point& a, const Point& b) const {
    double d2 = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) d2 += (a[i] - b[i]) * (a[i] - b[i]);
    return std::exp(-gamma_ * d2);
  }

  /// Posterior mean (the representer sum) and variance at x.
  std::pair<double, double> predict(const Point& x) const {
    const int n = static_cast<int>(inputs_.size());
    Eigen::VectorXd kx(n);
    for (int i = 0; i < n; ++i) kx(i) = kernel(x, inputs_[i]);
    const double mean = kx.dot(weights_);
    const Eigen::VectorXd v = llt_.solve(kx);
    const double var = kernel(x, x) - kx.dot(v);
    return {mean, var};
  }

  double predict_mean(const Point& x) const {
    const int n = static_cast<int>(inputs_.size());
    double mean = 0.0;
    for (int i = 0; i < n; ++i) mean += weights_(i) * kernel(x, inputs_[i]);
    return mean;
  }

  bool jittered() const { return jittered_; }
  const std::vector<Point>& inputs() const { return inputs_; }

 private:
  std::vector<Point> inputs_;
  double gamma_;
  double sigma2_;
  Eigen::LLT<Eigen::MatrixXd> llt_;
  Eigen::VectorXd weights_;
  bool jittered_ = false;
};

inline GprModel gpr_fit(std::vector<Point> inputs, const std::vector<double>& outputs,
                        double gamma, double sigma2) {
  return GprModel(std::move(inputs), outputs, gamma, sigma2);
}

struct GprDiagnostics {
  double mean_g = 0.0;        // nu g (truth)
  double mean_model = 0.0;    // nu U
  double var_g = 0.0;
  double var_model = 0.0;
  double mse = 0.0;           // nu (U - g)^2
  double cod = 0.0;           // 1 - mse / var g
};

/// MSE and coefficient of determination integrated against the true law.
inline GprDiagnostics gpr_diagnostics(const GprModel& model, const Fn& truth, const Measure& nu) {
  GprDiagnostics d;
  d.mean_g = nu.integrate(truth);
  d.mean_model = nu.integrate([&model](const Point& x) { return model.predict_mean(x); });
  d.var_g = nu.integrate([&](const Point& x) {
    const double v = truth(x) - d.mean_g;
    return v * v;
  });
  d.var_model = nu.integrate([&](const Point& x) {
    const double v = model.predict_mean(x) - d.mean_model;
    return v * v;
  });
  d.mse = nu.integrate([&](const Point& x) {
    const double v = model.predict_mean(x) - truth(x);
    return v * v;
  });
  if (!(d.var_g > 0.0)) throw DegenerateError("gpr diagnostics: truth has zero variance");
  d.cod = 1.0 - d.mse / d.var_g;
  return d;
}

}  // namespace rmuq
