// Positive random fields G(y) = N f_y driven by random counting measures:
// mean and covariance kernels, sampling, discretized Karhunen-Loeve
// decomposition (fPCA), and RF-ANOVA mode indices.
#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <functional>
#include <utility>
#include <vector>

#include "rmuq/anova.hpp"
#include "rmuq/errors.hpp"
#include "rmuq/measure.hpp"
#include "rmuq/stc.hpp"

namespace rmuq {

/// Field kernel k(x, y) >= 0 on E x F; f_y = k(., y).
using FieldKernel = std::function<double(const Point&, const Point&)>;

struct RandomField {
  RandomMeasure base;
  FieldKernel kernel;

  Fn slice(const Point& y) const {
    auto k = kernel;
    return [k, y](const Point& x) {
      const double v = k(x, y);
      if (v < 0.0) throw DomainError("random field: kernel takes a negative value");
      return v;
    };
  }
};

/// U(y) = c nu f_y.
inline double field_mean(const RandomField& rf, const Point& y) {
  return rf.base.kappa.mean() * rf.base.nu.integrate(rf.slice(y));
}

/// C(y,z) = c nu(f_y f_z) + (delta^2 - c) nu f_y nu f_z.
inline double field_cov(const RandomField& rf, const Point& y, const Point& z) {
  auto fy = rf.slice(y);
  auto fz = rf.slice(z);
  const double cross = rf.base.nu.integrate([&fy, &fz](const Point& x) { return fy(x) * fz(x); });
  const double c = rf.base.kappa.mean();
  return c * cross + (rf.base.kappa.variance() - c) * rf.base.nu.integrate(fy) * rf.base.nu.integrate(fz);
}

/// One STC realization evaluated at every grid point from the same atoms.
inline std::vector<double> field_sample(const RandomField& rf, const std::vector<Point>& grid,
                                        RngStream& rng) {
  const Realization real = realize(rf.base, rng);
  std::vector<double> values(grid.size(), 0.0);
  Point x(real.dim);
  for (long long i = 0; i < real.count; ++i) {
    x.assign(real.point(i), real.point(i) + real.dim);
    for (std::size_t j = 0; j < grid.size(); ++j) {
      const double v = rf.kernel(x, grid[j]);
      if (v < 0.0) throw DomainError("field_sample: kernel takes a negative value");
      values[j] += v;
    }
  }
  return values;
}

struct EigenSystem {
  std::vector<double> eigenvalues;          // descending, clipped at zero
  std::vector<std::vector<double>> modes;   // modes[k][i]: phi_k at grid point i
  std::vector<double> weights;              // grid weights of the L2(mu) inner product
  double trace = 0.0;                       // weighted trace of the covariance grid

  double mode_inner(int a, int b) const {
    double s = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) s += weights[i] * modes[a][i] * modes[b][i];
    return s;
  }

  /// Rank-r Mercer reconstruction error in the weighted Frobenius norm,
  /// relative to the covariance grid.
  double reconstruction_error(const std::vector<std::vector<double>>& cov, int rank) const {
    const std::size_t n = weights.size();
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        double rec = 0.0;
        for (int k = 0; k < rank; ++k) rec += eigenvalues[k] * modes[k][i] * modes[k][j];
        const double w = weights[i] * weights[j];
        num += w * (cov[i][j] - rec) * (cov[i][j] - rec);
        den += w * cov[i][j] * cov[i][j];
      }
    return std::sqrt(num / std::max(den, 1e-300));
  }
};

/// Eigendecomposition of a weighted covariance grid. The weighted problem is
/// solved in symmetric form W^{1/2} C W^{1/2}; eigenfunctions satisfy
/// <phi_j, phi_k>_mu = delta_jk with the leading nonzero entry positive.
inline EigenSystem fpca_from_grid(const std::vector<std::vector<double>>& cov,
                                  std::vector<double> weights = {}) {
  const std::size_t n = cov.size();
  if (n < 2) throw DomainError("fpca: grid must contain at least two points");
  if (weights.empty()) weights.assign(n, 1.0 / static_cast<double>(n));
  if (weights.size() != n) throw DomainError("fpca: weight/grid size mismatch");

  Eigen::MatrixXd C(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (std::fabs(cov[i][j] - cov[j][i]) > 1e-8)
        throw Error("fpca: covariance grid asymmetric beyond 1e-8 (kernel evaluation error)");
      C(i, j) = 0.5 * (cov[i][j] + cov[j][i]);
    }
  }
  Eigen::VectorXd sqw(n);
  for (std::size_t i = 0; i < n; ++i) sqw(i) = std::sqrt(weights[i]);
  Eigen::MatrixXd B = sqw.asDiagonal() * C * sqw.asDiagonal();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(B);
  if (es.info() != Eigen::Success) throw SolverError("fpca: eigensolve failed");

  EigenSystem sys;
  sys.weights = std::move(weights);
  sys.trace = 0.0;
  for (std::size_t i = 0; i < n; ++i) sys.trace += sys.weights[i] * C(i, i);

  // descending order; nonnegativity check then clip
  for (int k = static_cast<int>(n) - 1; k >= 0; --k) {
    double lam = es.eigenvalues()(k);
    if (lam < -1e-10 * std::max(1.0, std::fabs(sys.trace)))
      throw Error("fpca: eigenvalue below the nonnegativity tolerance");
    lam = std::max(lam, 0.0);
    std::vector<double> phi(n);
    // v is the eigenvector of B; phi = W^{-1/2} v
    double lead = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      phi[i] = es.eigenvectors()(i, k) / sqw(i);
      if (lead == 0.0 && std::fabs(phi[i]) > 1e-12) lead = phi[i];
    }
    if (lead < 0.0)
      for (auto& v : phi) v = -v;
    sys.eigenvalues.push_back(lam);
    sys.modes.push_back(std::move(phi));
  }
  return sys;
}

/// Covariance grid of the field over grid points (parallel assembly would
/// reduce deterministically; the grids used here are small enough serial).
inline std::vector<std::vector<double>> field_cov_grid(const RandomField& rf,
                                                       const std::vector<Point>& grid) {
  const std::size_t n = grid.size();
  std::vector<double> means(n);
  std::vector<Fn> slices;
  slices.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    slices.push_back(rf.slice(grid[i]));
    means[i] = rf.base.nu.integrate(slices[i]);
  }
  const double c = rf.base.kappa.mean();
  const double defect = rf.base.kappa.variance() - c;
  std::vector<std::vector<double>> cov(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const auto& fi = slices[i];
      const auto& fj = slices[j];
      const double cross = rf.base.nu.integrate([&fi, &fj](const Point& x) { return fi(x) * fj(x); });
      cov[i][j] = cov[j][i] = c * cross + defect * means[i] * means[j];
    }
  }
  return cov;
}

inline EigenSystem fpca(const RandomField& rf, const std::vector<Point>& grid,
                        std::vector<double> weights = {}) {
  return fpca_from_grid(field_cov_grid(rf, grid), std::move(weights));
}

struct RfAnova {
  std::vector<double> indices;  // lambda_i / sum lambda
  double entropy = 0.0;
  int effective_dim = 0;  // smallest r with 95% of the trace
};

inline RfAnova rf_anova(const EigenSystem& sys) {
  double total = 0.0;
  for (double l : sys.eigenvalues) total += l;
  if (!(total > 0.0)) throw DegenerateError("rf_anova: zero trace");
  RfAnova out;
  out.indices.reserve(sys.eigenvalues.size());
  for (double l : sys.eigenvalues) out.indices.push_back(l / total);
  out.entropy = entropy(out.indices);
  double cum = 0.0;
  for (std::size_t k = 0; k < out.indices.size(); ++k) {
    cum += out.indices[k];
    if (cum >= 0.95) {
      out.effective_dim = static_cast<int>(k) + 1;
      break;
    }
  }
  if (out.effective_dim == 0) out.effective_dim = static_cast<int>(out.indices.size());
  return out;
}

}  // namespace rmuq
