// Interacting particle systems on a Wiener image measure: superposed
// counting laws, rent-functional statistics, sensitivity and image
// densities, restricted bone-mapped pgfs, interaction random fields, and
// the maximum entropy density of total rent.
#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "rmuq/anova.hpp"
#include "rmuq/counting.hpp"
#include "rmuq/field.hpp"
#include "rmuq/laplace.hpp"
#include "rmuq/maxent.hpp"
#include "rmuq/measure.hpp"

namespace rmuq {

/// Closed-form moments of the rent functional g = cos^2 under the Wiener
/// image at time t: mu_t g, mu_t f and mu_t f^2 for f = (g - mu_t g)^2.
struct RentMoments {
  double mean_g = 0.0;
  double mean_f = 0.0;
  double mean_f2 = 0.0;
};

inline RentMoments rent_moments(double t) {
  RentMoments m;
  m.mean_g = std::exp(-t) * std::cosh(t);
  const double e4 = std::exp(4.0 * t);
  m.mean_f = 0.125 * std::exp(-8.0 * t) * (e4 - 1.0) * (e4 - 1.0);
  const double sh2 = std::sinh(2.0 * t);
  m.mean_f2 = 0.25 * std::exp(-16.0 * t) * sh2 * sh2 * sh2 * sh2 *
              (4.0 * std::sinh(4.0 * t) + std::sinh(8.0 * t) + 8.0 * std::cosh(4.0 * t) +
               2.0 * std::cosh(8.0 * t) + 5.0);
  return m;
}

inline Fn rent_function() {
  return [](const Point& x) {
    const double c = std::cos(x[0]);
    return c * c;
  };
}

/// Wrapped-preimage sum of the Wiener density over cos^2 = y, truncated at
/// |k| <= kmax (the image density without the 1/(2 sqrt(y(1-y))) Jacobian).
inline double rent_image_preimage_sum(double t, double y, int kmax = 50) {
  const double a = std::acos(std::sqrt(std::clamp(y, 0.0, 1.0)));  // in [0, pi/2]
  const double roots[4] = {a, -a, M_PI - a, a - M_PI};
  const double norm = 1.0 / std::sqrt(2.0 * M_PI * t);
  double total = 0.0;
  for (int k = -kmax; k <= kmax; ++k) {
    for (double r : roots) {
      const double x = r + 2.0 * M_PI * k;
      total += norm * std::exp(-x * x / (2.0 * t));
    }
  }
  return total;
}

/// Image density of the rent value y = cos^2(x) under the Wiener image:
/// preimage sum divided by the Jacobian 2 sqrt(y(1-y)).
inline double rent_image_density(double t, double y, int kmax = 50) {
  if (!(y > 0.0 && y < 1.0)) return 0.0;
  return rent_image_preimage_sum(t, y, kmax) / (2.0 * std::sqrt(y * (1.0 - y)));
}

/// Mass of the image density over [a, b]: the substitution y = sin^2(u)
/// cancels the endpoint singularities exactly.
inline double rent_image_mass(double t, double a, double b, int kmax = 50) {
  a = std::clamp(a, 0.0, 1.0);
  b = std::clamp(b, 0.0, 1.0);
  if (!(b > a)) return 0.0;
  const double ulo = std::asin(std::sqrt(a));
  const double uhi = std::asin(std::sqrt(b));
  QuadRule rule = legendre_on(ulo, uhi, 96);
  double mass = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double s = std::sin(rule.nodes[i]);
    mass += rule.weights[i] * rent_image_preimage_sum(t, s * s, kmax);
  }
  return mass;
}

/// Interaction-field closed forms for the RBF kernel over mu_t.
inline double sda_interaction_mean(double t, double gamma, double y) {
  return std::exp(-gamma * y * y / (2.0 * gamma * t + 1.0)) / std::sqrt(2.0 * gamma * t + 1.0);
}

inline double sda_interaction_cross(double t, double gamma, double y, double z) {
  return std::exp(-gamma * (2.0 * gamma * t * (y - z) * (y - z) + y * y + z * z) /
                  (4.0 * gamma * t + 1.0)) /
         std::sqrt(4.0 * gamma * t + 1.0);
}

inline double sda_interaction_cov(double t, double gamma, double c, double delta2, double y,
                                  double z) {
  return c * sda_interaction_cross(t, gamma, y, z) +
         (delta2 - c) / (2.0 * gamma * t + 1.0) *
             std::exp(-gamma * (y * y + z * z) / (2.0 * gamma * t + 1.0));
}

/// Time of maximum expected interaction and its value.
inline std::pair<double, double> sda_interaction_peak(double gamma, double y) {
  const double t_hat = std::max(y * y - 0.5 / gamma, 0.0);
  const double u = t_hat > 0.0 ? 1.0 / (std::fabs(y) * std::sqrt(2.0 * std::exp(1.0) * gamma))
                               : std::exp(-gamma * y * y);
  return {t_hat, u};
}

struct SdaConfig {
  double t = 1.0;
  double gamma = 1.0;
  // superposition components kappa_- * kappa_0 * kappa_+
  long long n_minus = 4;
  double p_minus = 0.5;
  double c_zero = 100.0;
  double r_plus = 1.0;
  double p_plus = 0.5;
  int series_kmax = 50;
  int maxent_n = 10;
  std::uint64_t maxent_seed = 31;
  std::vector<double> fpca_times = {0.5, 1.0, 2.0, 5.0};
  int fpca_grid = 100;
};

struct SdaReport {
  CountingDistribution kappa;
  bool orthogonal = false;
  RentMoments closed;
  double quad_mean_g = 0.0, quad_mean_f = 0.0, quad_mean_f2 = 0.0;
  double image_density_mass = 0.0;
  double bone_identity_residual = 0.0;
  double maxent_mean = 0.0, maxent_var = 0.0;
  double exact_mean = 0.0, exact_var = 0.0;
  std::vector<int> effective_dims;  // per fpca_times entry

  SdaReport() : kappa(CountingDistribution::poisson(1.0)) {}
};

inline SdaReport sda_suite(const SdaConfig& cfg) {
  SdaReport rep;
  rep.kappa = superpose({CountingDistribution::binomial(cfg.n_minus, cfg.p_minus),
                         CountingDistribution::poisson(cfg.c_zero),
                         CountingDistribution::negative_binomial(cfg.r_plus, cfg.p_plus)});
  rep.orthogonal = rep.kappa.is_orthogonal();

  auto mu_t = Measure::image_wiener(cfg.t);
  Fn g = rent_function();
  rep.closed = rent_moments(cfg.t);
  rep.quad_mean_g = mu_t.integrate(g);
  const double mg = rep.closed.mean_g;
  Fn f = [g, mg](const Point& x) {
    const double d = g(x) - mg;
    return d * d;
  };
  rep.quad_mean_f = mu_t.integrate(f);
  rep.quad_mean_f2 = mu_t.integrate([&f](const Point& x) {
    const double v = f(x);
    return v * v;
  });

  // image density mass over (0,1)
  rep.image_density_mass = rent_image_mass(cfg.t, 0.0, 1.0, cfg.series_kmax);

  // restricted pgf: componentwise bone mapping equals the thinned product
  {
    double worst = 0.0;
    RngStream rng(17);
    for (int i = 0; i < 50; ++i) {
      const double a = 0.05 + 0.9 * rng.uniform();
      const double tt = rng.uniform();
      const double direct = rep.kappa.pgf(a * tt + 1.0 - a);
      const double mapped = rep.kappa.restrict(a).pgf(tt);
      worst = std::max(worst, std::fabs(direct - mapped));
    }
    rep.bone_identity_residual = worst;
  }

  // maximum entropy density of the total rent M_t g under Poisson(100)
  {
    RandomMeasure M(CountingDistribution::poisson(100.0), mu_t);
    rep.exact_mean = mean_nf(M, g);
    rep.exact_var = var_nf(M, g);
    auto problem = generalized_moments(M, g, exponential_alphas(cfg.maxent_n, cfg.maxent_seed),
                                       rep.exact_mean);
    const auto density = fit_maxent(problem);
    rep.maxent_mean = density.mean();
    rep.maxent_var = density.variance();
  }

  // effective dimension of the interaction field over time
  for (double t : cfg.fpca_times) {
    std::vector<Point> grid;
    for (int i = 0; i < cfg.fpca_grid; ++i)
      grid.push_back({-5.0 + 10.0 * i / (cfg.fpca_grid - 1.0)});
    std::vector<std::vector<double>> cov(cfg.fpca_grid, std::vector<double>(cfg.fpca_grid));
    for (int i = 0; i < cfg.fpca_grid; ++i)
      for (int j = 0; j < cfg.fpca_grid; ++j)
        cov[i][j] = sda_interaction_cov(t, cfg.gamma, 1.0, 1.0, grid[i][0], grid[j][0]);
    const auto sys = fpca_from_grid(cov);
    rep.effective_dims.push_back(rf_anova(sys).effective_dim);
  }
  return rep;
}

}  // namespace rmuq
