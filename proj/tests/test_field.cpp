#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "rmuq/field.hpp"
#include "rmuq/stats.hpp"

using namespace rmuq;

namespace {
// G(y) = N f_y with the radial basis kernel over a standard gaussian law.
RandomField rbf_field(CountingDistribution kappa, double gamma) {
  return RandomField{RandomMeasure(std::move(kappa), Measure::gaussian1d(0.0, 1.0)),
                     [gamma](const Point& x, const Point& y) {
                       const double d = x[0] - y[0];
                       return std::exp(-gamma * d * d);
                     }};
}

double rbf_mean_closed(double gamma, double y) {
  return std::exp(-gamma * y * y / (1.0 + 2.0 * gamma)) / std::sqrt(1.0 + 2.0 * gamma);
}

double rbf_cross_closed(double gamma, double y, double z) {
  return std::exp(-gamma / (1.0 + 4.0 * gamma) * (y * y + 2.0 * gamma * (y - z) * (y - z) + z * z)) /
         std::sqrt(1.0 + 4.0 * gamma);
}
}  // namespace

TEST_CASE("rbf field mean matches the closed form") {
  const double gamma = 1.0;
  auto rf = rbf_field(CountingDistribution::poisson(1.0), gamma);
  CHECK(field_mean(rf, {0.0}) == Catch::Approx(1.0 / std::sqrt(3.0)).margin(1e-12));
  for (double y : {-2.0, -0.5, 0.3, 1.7})
    CHECK(field_mean(rf, {y}) == Catch::Approx(rbf_mean_closed(gamma, y)).margin(1e-12));

  // constant kernel gives U(y) = c
  RandomField flat{RandomMeasure(CountingDistribution::poisson(4.0), Measure::gaussian1d(0.0, 1.0)),
                   [](const Point&, const Point&) { return 1.0; }};
  CHECK(field_mean(flat, {3.0}) == Catch::Approx(4.0));
}

TEST_CASE("rbf covariance closed forms on a probe grid") {
  const double gamma = 0.7;
  auto rf = rbf_field(CountingDistribution::poisson(1.3), gamma);
  const double c = 1.3;
  for (double y : {-1.0, -0.5, 0.0, 0.5, 1.0})
    for (double z : {-1.0, -0.5, 0.0, 0.5, 1.0}) {
      const double expect = c * rbf_cross_closed(gamma, y, z);  // orthogonal kappa
      CHECK(field_cov(rf, {y}, {z}) == Catch::Approx(expect).margin(1e-8));
    }
  // the variance is non-negative
  CHECK(field_cov(rf, {0.4}, {0.4}) >= 0.0);
}

TEST_CASE("orthogonal and dirac kernels have the stated sign structure") {
  const double gamma = 1.0;
  auto orth = rbf_field(CountingDistribution::poisson(1.0), gamma);
  auto dirac = rbf_field(CountingDistribution::dirac(1), gamma);
  // orthogonal: positive at all four probes; dirac: negative off-diagonal
  for (double y : {-1.0, 1.0})
    for (double z : {-1.0, 1.0}) {
      CHECK(field_cov(orth, {y}, {z}) > 0.0);
      const double cd = field_cov(dirac, {y}, {z});
      if (y == z)
        CHECK(cd > 0.0);
      else
        CHECK(cd < 0.0);
    }
}

TEST_CASE("field samples reproduce the closed-form mean and covariance") {
  auto rf = rbf_field(CountingDistribution::poisson(5.0), 1.0);
  const std::vector<Point> grid = {{-1.0}, {0.0}, {1.0}};
  const int reps = 10000;
  std::vector<std::vector<double>> draws(grid.size(), std::vector<double>(reps));
  for (int r = 0; r < reps; ++r) {
    RngStream rng(derive_seed(55, r));
    const auto v = field_sample(rf, grid, rng);
    for (std::size_t j = 0; j < grid.size(); ++j) draws[j][r] = v[j];
  }
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const auto s = summarize(draws[j]);
    CHECK(std::fabs(s.mean - field_mean(rf, grid[j])) < 4.0 * s.mean_se);
    CHECK(std::fabs(s.variance - field_cov(rf, grid[j], grid[j])) < 4.0 * s.variance_se);
  }
  const auto c01 = covariance(draws[0], draws[1]);
  CHECK(std::fabs(c01.covariance - field_cov(rf, grid[0], grid[1])) < 4.0 * c01.se);

  // a zero-count realization gives the zero field
  RandomField rare{RandomMeasure(CountingDistribution::poisson(1e-8), Measure::gaussian1d(0.0, 1.0)),
                   rf.kernel};
  RngStream rng(1);
  const auto z = field_sample(rare, grid, rng);
  for (double v : z) CHECK(v == 0.0);
}

TEST_CASE("rank-one covariance has a single mode") {
  std::vector<double> u = {1.0, -2.0, 0.5, 3.0};
  std::vector<std::vector<double>> cov(4, std::vector<double>(4));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) cov[i][j] = u[i] * u[j];
  const auto sys = fpca_from_grid(cov);
  double norm2 = 0.0;
  for (int i = 0; i < 4; ++i) norm2 += sys.weights[i] * u[i] * u[i];
  CHECK(sys.eigenvalues[0] == Catch::Approx(norm2).epsilon(1e-12));
  for (std::size_t k = 1; k < sys.eigenvalues.size(); ++k)
    CHECK(sys.eigenvalues[k] == Catch::Approx(0.0).margin(1e-12));
  const auto anova = rf_anova(sys);
  CHECK(anova.indices[0] == Catch::Approx(1.0));
  CHECK(anova.entropy == Catch::Approx(0.0).margin(1e-12));
  CHECK(anova.effective_dim == 1);
}

TEST_CASE("wiener interaction field fpca") {
  // image of the Wiener law at t = 1, RBF interaction kernel, c = delta^2 = gamma = 1
  const double t = 1.0, gamma = 1.0;
  RandomField rf{RandomMeasure(CountingDistribution::poisson(1.0), Measure::image_wiener(t)),
                 [gamma](const Point& x, const Point& y) {
                   const double d = x[0] - y[0];
                   return std::exp(-gamma * d * d);
                 }};
  std::vector<Point> grid;
  const int n = 60;
  for (int i = 0; i < n; ++i) grid.push_back({-5.0 + 10.0 * i / (n - 1.0)});
  const auto cov = field_cov_grid(rf, grid);

  // closed-form covariance: c mu_t(f_y f_z) with the printed exponent
  for (int i = 0; i < n; i += 17)
    for (int j = 0; j < n; j += 13) {
      const double y = grid[i][0], z = grid[j][0];
      const double expect = std::exp(-gamma * (2.0 * gamma * t * (y - z) * (y - z) + y * y + z * z) /
                                     (4.0 * gamma * t + 1.0)) /
                            std::sqrt(4.0 * gamma * t + 1.0);
      CHECK(cov[i][j] == Catch::Approx(expect).margin(1e-8));
    }

  const auto sys = fpca_from_grid(cov);
  for (double l : sys.eigenvalues) CHECK(l >= 0.0);
  double sum = 0.0;
  for (double l : sys.eigenvalues) sum += l;
  CHECK(sum == Catch::Approx(sys.trace).epsilon(1e-8));
  // orthonormal modes
  CHECK(sys.mode_inner(0, 0) == Catch::Approx(1.0).margin(1e-8));
  CHECK(sys.mode_inner(0, 1) == Catch::Approx(0.0).margin(1e-8));
  CHECK(sys.mode_inner(1, 1) == Catch::Approx(1.0).margin(1e-8));
  // reconstruction error decreases with rank
  double prev = 1e9;
  for (int rank = 1; rank <= 10; ++rank) {
    const double err = sys.reconstruction_error(cov, rank);
    CHECK(err < prev);
    prev = err;
  }
  // full-rank Mercer consistency
  CHECK(sys.reconstruction_error(cov, static_cast<int>(sys.eigenvalues.size())) < 1e-6);
}

TEST_CASE("interaction time law") {
  // t_hat = max(y^2 - 1/(2 gamma), 0) maximizes U_t(y); golden-section search
  const double gamma = 1.0;
  auto U = [gamma](double t, double y) {
    return std::exp(-gamma * y * y / (2.0 * gamma * t + 1.0)) / std::sqrt(2.0 * gamma * t + 1.0);
  };
  for (double y : {0.2, 0.5, 1.0, 2.0}) {
    const double t_hat = std::max(y * y - 0.5 / gamma, 0.0);
    // golden-section over [0, 10]
    double a = 0.0, b = 10.0;
    const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
    double c1 = b - phi * (b - a), c2 = a + phi * (b - a);
    for (int it = 0; it < 80; ++it) {
      if (U(c1, y) > U(c2, y))
        b = c2;
      else
        a = c1;
      c1 = b - phi * (b - a);
      c2 = a + phi * (b - a);
    }
    const double t_star = 0.5 * (a + b);
    CHECK(t_star == Catch::Approx(t_hat).margin(1e-6));
    const double u_max = t_hat > 0.0 ? 1.0 / (std::fabs(y) * std::sqrt(2.0 * std::exp(1.0) * gamma))
                                     : std::exp(-gamma * y * y);
    CHECK(U(t_hat, y) == Catch::Approx(u_max).margin(1e-12));
  }
}

TEST_CASE("bivariate correlated rbf field mean") {
  const double t = 0.8, sy = 1.1, sz = 0.9, rho = 0.4;
  RandomField rf{RandomMeasure(CountingDistribution::poisson(1.0), Measure::image_wiener(t)),
                 [sy, sz, rho](const Point& x, const Point& yz) {
                   const double dy = (x[0] - yz[0]) / sy;
                   const double dz = (x[0] - yz[1]) / sz;
                   return std::exp(-(dy * dy - 2.0 * rho * dy * dz + dz * dz) /
                                   (2.0 * (1.0 - rho * rho)));
                 }};
  auto closed = [&](double y, double z) {
    const double a = sy * sy + sz * sz - 2.0 * rho * sy * sz;
    const double num = t * (y - z) * (y - z) + sy * sy * z * z + sz * sz * y * y -
                       2.0 * rho * sy * sz * y * z;
    const double den = 2.0 * (1.0 - rho * rho) * sy * sy * sz * sz + 2.0 * t * a;
    return std::exp(-num / den) / std::sqrt(1.0 + t * a / ((1.0 - rho * rho) * sy * sy * sz * sz));
  };
  for (double y : {-2.0, -1.0, 0.0, 1.0, 2.0})
    for (double z : {-2.0, -1.0, 0.0, 1.0, 2.0})
      CHECK(field_mean(rf, {y, z}) == Catch::Approx(closed(y, z)).margin(1e-8));
}

TEST_CASE("degenerate trace rejected") {
  std::vector<std::vector<double>> zero(3, std::vector<double>(3, 0.0));
  const auto sys = fpca_from_grid(zero);
  CHECK_THROWS_AS(rf_anova(sys), DegenerateError);
  std::vector<std::vector<double>> asym = {{1.0, 0.5}, {0.2, 1.0}};
  CHECK_THROWS_AS(fpca_from_grid(asym), Error);
}
