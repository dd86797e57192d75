// Gaussian quadrature rules (Legendre, Hermite, Laguerre) built by
// Golub-Welsch on the Jacobi matrix, plus a geometrically graded composite
// rule on [0,1] used by the maximum entropy solver.
#pragma once

#include <Eigen/Dense>
#include <cstdlib>
#include <map>
#include <mutex>
#include <vector>

#include "rmuq/errors.hpp"

namespace rmuq {

struct QuadRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

namespace detail {

// Eigen decomposition of the symmetric tridiagonal Jacobi matrix; weights are
// mu0 * (first eigenvector component)^2.
inline QuadRule golub_welsch(const std::vector<double>& diag,
                             const std::vector<double>& offdiag, double mu0) {
  const int n = static_cast<int>(diag.size());
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    J(i, i) = diag[i];
    if (i + 1 < n) {
      J(i, i + 1) = offdiag[i];
      J(i + 1, i) = offdiag[i];
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
  QuadRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    rule.nodes[i] = es.eigenvalues()(i);
    const double v = es.eigenvectors()(0, i);
    rule.weights[i] = mu0 * v * v;
  }
  return rule;
}

}  // namespace detail

// Nodes/weights for int_{-1}^{1} f(x) dx.
inline const QuadRule& gauss_legendre(int n) {
  if (n < 1) throw DomainError("gauss_legendre: n must be positive");
  static std::map<int, QuadRule> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  std::vector<double> diag(n, 0.0), off(n - 1);
  for (int i = 1; i < n; ++i) {
    const double k = static_cast<double>(i);
    off[i - 1] = k / std::sqrt(4.0 * k * k - 1.0);
  }
  return cache.emplace(n, detail::golub_welsch(diag, off, 2.0)).first->second;
}

// Nodes/weights for int f(x) e^{-x^2} dx (physicists' weight).
inline const QuadRule& gauss_hermite(int n) {
  if (n < 1) throw DomainError("gauss_hermite: n must be positive");
  static std::map<int, QuadRule> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  std::vector<double> diag(n, 0.0), off(n - 1);
  for (int i = 1; i < n; ++i) off[i - 1] = std::sqrt(0.5 * i);
  return cache.emplace(n, detail::golub_welsch(diag, off, std::sqrt(M_PI))).first->second;
}

// Nodes/weights for int_0^inf f(x) e^{-x} dx.
inline const QuadRule& gauss_laguerre(int n) {
  if (n < 1) throw DomainError("gauss_laguerre: n must be positive");
  static std::map<int, QuadRule> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  std::vector<double> diag(n), off(n - 1);
  for (int i = 0; i < n; ++i) diag[i] = 2.0 * i + 1.0;
  for (int i = 1; i < n; ++i) off[i - 1] = static_cast<double>(i);
  return cache.emplace(n, detail::golub_welsch(diag, off, 1.0)).first->second;
}

// Rule for int_a^b f dx obtained by affine transform of gauss_legendre.
inline QuadRule legendre_on(double a, double b, int n) {
  const QuadRule& base = gauss_legendre(n);
  QuadRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  for (int i = 0; i < n; ++i) {
    rule.nodes[i] = mid + half * base.nodes[i];
    rule.weights[i] = half * base.weights[i];
  }
  return rule;
}

// Composite rule on [0,1] with panels [2^-(j+1), 2^-j]; resolves the
// y^alpha endpoint behaviour at 0 for alpha < 1 and log-singular integrands.
inline QuadRule graded_unit_rule(int nodes_per_panel = 16, int panels = 48) {
  QuadRule rule;
  double hi = 1.0;
  for (int j = 0; j < panels; ++j) {
    const double lo = hi * 0.5;
    QuadRule panel = legendre_on(lo, hi, nodes_per_panel);
    rule.nodes.insert(rule.nodes.end(), panel.nodes.begin(), panel.nodes.end());
    rule.weights.insert(rule.weights.end(), panel.weights.begin(), panel.weights.end());
    hi = lo;
  }
  return rule;
}

// Default per-axis node count; RMUQ_QUAD_NODES overrides.
inline int default_quad_nodes() {
  static const int n = [] {
    if (const char* env = std::getenv("RMUQ_QUAD_NODES")) {
      const int v = std::atoi(env);
      if (v >= 2 && v <= 512) return v;
    }
    return 64;
  }();
  return n;
}

}  // namespace rmuq
