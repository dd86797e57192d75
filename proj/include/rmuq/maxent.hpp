// Density identification of Nf by maximum entropy from finitely many
// Laplace-transform evaluations (a truncated generalized moment problem).
//
// With y = e^{-Nf*} in [0,1] and targets f_i = F(alpha_i) = E y^{alpha_i},
// the maximum entropy density is
//   mu_n(dy) = dy exp(-(lambda_1 y^{a1} + ... + lambda_n y^{an})) / Z,
// with lambda the minimizer of the strictly convex log Z(l) + l . f.
// The density of Nf pulls back through x = -C log y.
#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "rmuq/errors.hpp"
#include "rmuq/laplace.hpp"
#include "rmuq/quadrature.hpp"
#include "rmuq/stc.hpp"

namespace rmuq {

struct MaxEntProblem {
  std::vector<double> alphas;   // strictly decreasing, positive
  std::vector<double> targets;  // F(alpha_i) in (0,1]
  double scale = 1.0;           // C in f* = f / C

  void validate() const {
    if (alphas.empty() || alphas.size() != targets.size())
      throw DomainError("maxent: alphas/targets mismatch");
    for (std::size_t i = 0; i < alphas.size(); ++i) {
      if (!(alphas[i] > 0.0)) throw DomainError("maxent: alphas must be positive");
      if (i > 0 && !(alphas[i] < alphas[i - 1]))
        throw DomainError("maxent: alphas must be strictly decreasing");
      if (!(targets[i] > 0.0 && targets[i] <= 1.0))
        throw DomainError("maxent: targets must lie in (0,1]");
      if (i > 0 && targets[i] < targets[i - 1] - 1e-9)
        throw DomainError("maxent: targets must not decrease as alpha decreases");
    }
    if (!(scale > 0.0)) throw DomainError("maxent: scale must be positive");
  }
};

/// Targets from the Laplace transform of f/C; alphas are sorted descending.
inline MaxEntProblem generalized_moments(const RandomMeasure& N, const Fn& f,
                                         std::vector<double> alphas, double scale = 0.0) {
  std::sort(alphas.begin(), alphas.end(), std::greater<double>());
  for (std::size_t i = 1; i < alphas.size(); ++i)
    if (alphas[i] == alphas[i - 1]) throw DomainError("generalized_moments: alphas must be distinct");
  MaxEntProblem p;
  if (scale <= 0.0) scale = N.nu.integrate(f) * std::max(1.0, N.kappa.mean());
  p.scale = scale;
  p.alphas = alphas;
  const auto evals = laplace_transform(N, f, alphas, scale);
  p.targets.reserve(evals.size());
  for (const auto& e : evals) p.targets.push_back(e.value);
  p.validate();
  return p;
}

/// Exponential(1) alpha draws (the experiment protocol), sorted descending.
inline std::vector<double> exponential_alphas(int n, std::uint64_t seed) {
  RngStream rng(seed);
  std::vector<double> alphas(n);
  for (auto& a : alphas) a = rng.exponential(1.0);
  std::sort(alphas.begin(), alphas.end(), std::greater<double>());
  return alphas;
}

class MaxEntDensity {
 public:
  std::vector<double> alphas;
  std::vector<double> lambdas;
  double log_z = 0.0;
  double scale = 1.0;
  int iterations = 0;
  double grad_norm = 0.0;
  bool regularized = false;

  /// Density of y = e^{-Nf/C} on [0,1].
  double density01(double y) const {
    if (y < 0.0 || y > 1.0) return 0.0;
    return std::exp(-exponent(y) - log_z);
  }

  /// Density of x = Nf on the positive half-line.
  double eta(double x) const {
    if (x < 0.0) return 0.0;
    const double y = std::exp(-x / scale);
    return density01(y) * y / scale;
  }

  double moment(double alpha) const {
    double num = 0.0;
    const auto& q = rule();
    for (std::size_t i = 0; i < q.nodes.size(); ++i)
      num += q.weights[i] * std::pow(q.nodes[i], alpha) * density01(q.nodes[i]);
    return num;
  }

  double normalization() const {
    double z = 0.0;
    const auto& q = rule();
    for (std::size_t i = 0; i < q.nodes.size(); ++i) z += q.weights[i] * density01(q.nodes[i]);
    return z;
  }

  /// Mean of Nf: E[-C log y] under mu_n.
  double mean() const { return log_moment(1); }

  double variance() const {
    const double m1 = log_moment(1);
    return log_moment(2) - m1 * m1;
  }

  double exponent(double y) const {
    double s = 0.0;
    for (std::size_t i = 0; i < alphas.size(); ++i) s += lambdas[i] * std::pow(y, alphas[i]);
    return s;
  }

  static const QuadRule& rule() {
    static const QuadRule q = graded_unit_rule(16, 48);
    return q;
  }

 private:
  double log_moment(int power) const {
    double v = 0.0;
    const auto& q = rule();
    for (std::size_t i = 0; i < q.nodes.size(); ++i) {
      const double x = -scale * std::log(q.nodes[i]);
      v += q.weights[i] * std::pow(x, power) * density01(q.nodes[i]);
    }
    return v;
  }
};

/// Newton solve of the dual: exact gradient f - E[y^a], Hessian the moment
/// covariance matrix, backtracking line search, gradient tolerance 1e-10.
inline MaxEntDensity fit_maxent(const MaxEntProblem& problem) {
  problem.validate();
  const int n = static_cast<int>(problem.alphas.size());
  const QuadRule& q = MaxEntDensity::rule();
  const std::size_t m = q.nodes.size();

  // precompute y^{alpha_i} at the quadrature nodes
  Eigen::MatrixXd pow_table(m, n);
  for (std::size_t k = 0; k < m; ++k)
    for (int i = 0; i < n; ++i) pow_table(k, i) = std::pow(q.nodes[k], problem.alphas[i]);

  Eigen::VectorXd lambda = Eigen::VectorXd::Zero(n);
  const Eigen::VectorXd target = Eigen::Map<const Eigen::VectorXd>(problem.targets.data(), n);

  // log Z and the moment vector/matrix under the current lambda
  Eigen::VectorXd moments(n);
  Eigen::MatrixXd second(n, n);
  auto evaluate = [&](const Eigen::VectorXd& l, bool with_hessian) {
    Eigen::VectorXd expo = pow_table * l;
    const double shift = expo.minCoeff();
    double z = 0.0;
    moments.setZero();
    if (with_hessian) second.setZero();
    for (std::size_t k = 0; k < m; ++k) {
      const double w = q.weights[k] * std::exp(-(expo(k) - shift));
      z += w;
      for (int i = 0; i < n; ++i) {
        const double wi = w * pow_table(k, i);
        moments(i) += wi;
        if (with_hessian)
          for (int j = i; j < n; ++j) second(i, j) += wi * pow_table(k, j);
      }
    }
    moments /= z;
    if (with_hessian) {
      second /= z;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < i; ++j) second(i, j) = second(j, i);
    }
    return std::log(z) - shift;
  };

  MaxEntDensity out;
  out.alphas = problem.alphas;
  out.scale = problem.scale;

  double logz = evaluate(lambda, false);
  double objective = logz + lambda.dot(target);
  const int max_iter = 200;
  for (int iter = 0; iter < max_iter; ++iter) {
    evaluate(lambda, true);
    Eigen::VectorXd grad = target - moments;
    out.grad_norm = grad.cwiseAbs().maxCoeff();
    out.iterations = iter;
    if (out.grad_norm < 1e-10) break;
    Eigen::MatrixXd hess = second - moments * moments.transpose();
    // strict convexity: the Hessian is a covariance matrix; regularize only
    // when conditioning degrades
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(hess);
    const double emax = es.eigenvalues().maxCoeff();
    const double emin = es.eigenvalues().minCoeff();
    if (!(emin > 0.0) || emax / std::max(emin, 1e-300) > 1e14) {
      hess.diagonal().array() += emax * 1e-12 + 1e-300;
      out.regularized = true;
    }
    Eigen::LLT<Eigen::MatrixXd> llt(hess);
    if (llt.info() != Eigen::Success) {
      hess.diagonal().array() += emax * 1e-8;
      llt.compute(hess);
      out.regularized = true;
      if (llt.info() != Eigen::Success)
        throw SolverError("fit_maxent: Hessian factorization failed");
    }
    Eigen::VectorXd step = llt.solve(-grad);
    // backtracking line search on the dual objective
    double t = 1.0;
    bool accepted = false;
    for (int ls = 0; ls < 60; ++ls) {
      Eigen::VectorXd trial = lambda + t * step;
      const double trial_logz = evaluate(trial, false);
      const double trial_obj = trial_logz + trial.dot(target);
      if (trial_obj <= objective + 1e-4 * t * grad.dot(step) + 1e-14) {
        const bool stalled = objective - trial_obj < 1e-15 * (1.0 + std::fabs(objective));
        lambda = trial;
        logz = trial_logz;
        objective = trial_obj;
        accepted = !stalled;
        break;
      }
      t *= 0.5;
    }
    // a rejected or stalled step means the quadrature floor was reached;
    // the residual check below decides whether that is acceptable
    if (!accepted) break;
  }
  if (out.grad_norm >= 1e-8) {
    std::string msg = "fit_maxent: residual moments above tolerance (infeasible or "
                      "ill-conditioned targets); residual inf-norm " +
                      std::to_string(out.grad_norm);
    throw SolverError(msg);
  }

  out.lambdas.assign(lambda.data(), lambda.data() + n);
  out.log_z = logz;
  return out;
}

}  // namespace rmuq
