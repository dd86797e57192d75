#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "rmuq/laplace.hpp"

using namespace rmuq;

namespace {
constexpr double kPi = 3.14159265358979323846;

Fn ishigami_centered_sq(double a, double b) {
  return [a, b](const Point& x) {
    const double g = std::sin(x[0]) + a * std::sin(x[1]) * std::sin(x[1]) +
                     b * std::pow(x[2], 4) * std::sin(x[0]);
    const double d = g - a / 2.0;
    return d * d;
  };
}

RandomMeasure ishigami_rm(double c) {
  return RandomMeasure(CountingDistribution::poisson(c),
                       Measure::uniform_box({-kPi, -kPi, -kPi}, {kPi, kPi, kPi}));
}
}  // namespace

TEST_CASE("mean of Nf") {
  RandomMeasure N(CountingDistribution::poisson(2.5), Measure::uniform_box({0.0}, {1.0}));
  CHECK(mean_nf(N, [](const Point&) { return 1.0; }) == Catch::Approx(2.5));

  auto NI = ishigami_rm(100.0);
  CHECK(mean_nf(NI, ishigami_centered_sq(7.0, 0.1)) == Catch::Approx(1384.5).epsilon(1e-3));
}

TEST_CASE("wiener rent functional moments at t = 1") {
  const double t = 1.0, c = 100.0;
  RandomMeasure M(CountingDistribution::poisson(c), Measure::image_wiener(t));
  Fn g = [](const Point& x) { return std::cos(x[0]) * std::cos(x[0]); };
  const double mg = mean_nf(M, g);
  CHECK(mg == Catch::Approx(c * std::exp(-t) * std::cosh(t)).epsilon(1e-10));
  CHECK(mg == Catch::Approx(56.7668).epsilon(1e-5));
  CHECK(var_nf(M, g) == Catch::Approx(44.2710).epsilon(1e-5));
}

TEST_CASE("variance closed forms") {
  auto NI = ishigami_rm(100.0);
  CHECK(var_nf(NI, ishigami_centered_sq(7.0, 0.1)) == Catch::Approx(67223.4).epsilon(1e-3));

  RandomMeasure ND(CountingDistribution::dirac(5), Measure::uniform_box({0.0}, {1.0}));
  CHECK(var_nf(ND, [](const Point&) { return 1.0; }) == Catch::Approx(0.0).margin(1e-12));
}

TEST_CASE("PT shortcut forms equal the generic variance and covariance") {
  RngStream rng(314);
  const std::vector<CountingDistribution> pt = {
      CountingDistribution::binomial(9, 0.3),
      CountingDistribution::poisson(2.0),
      CountingDistribution::negative_binomial(1.5, 0.6),
  };
  for (const auto& kappa : pt) {
    const double c = kappa.mean();
    const double d2 = kappa.variance();
    for (int i = 0; i < 40; ++i) {
      const double a = rng.uniform(0.0, 3.0);
      const double b = rng.uniform(a * a, a * a + 5.0);  // nu f^2 >= (nu f)^2
      const double generic_var = c * b + (d2 - c) * a * a;
      CHECK(var_nf_pt(kappa, a, b) == Catch::Approx(generic_var).epsilon(1e-12));
      const double bb = rng.uniform(0.0, 2.0);
      const double d = rng.uniform(0.0, 4.0);
      const double generic_cov = c * d + (d2 - c) * a * bb;
      CHECK(cov_nf_pt(kappa, a, bb, d) == Catch::Approx(generic_cov).margin(1e-12));
    }
  }
}

TEST_CASE("covariance simplifications") {
  auto nu = Measure::uniform_box({0.0}, {1.0});
  Fn fa = [](const Point& x) { return x[0] < 0.5 ? 1.0 : 0.0; };
  Fn fb = [](const Point& x) { return x[0] >= 0.5 ? 1.0 : 0.0; };
  RandomMeasure Np(CountingDistribution::poisson(3.0), nu);
  CHECK(cov_nf(Np, fa, fb) == Catch::Approx(0.0).margin(1e-10));
  const long long c = 4;
  RandomMeasure Nd(CountingDistribution::dirac(c), nu);
  // disjoint under Dirac: -c nu(f) nu(g); indicator masses need exact cells
  auto [lo, a] = nu.restrict_box({0.0}, {0.5});
  auto [hi, b] = nu.restrict_box({0.5}, {1.0});
  CHECK(cov_nf(Nd, fa, fb) == Catch::Approx(-static_cast<double>(c) * 0.5 * 0.5).margin(2e-4));
}

TEST_CASE("laplace functional closed forms") {
  RandomMeasure N(CountingDistribution::poisson(2.0), Measure::uniform_box({0.0}, {1.0}));
  CHECK(laplace_functional(N, [](const Point&) { return 0.0; }) == Catch::Approx(1.0));

  // Bernoulli nu with f = (x-p)^2: nu e^{-f} = e^{-p^2}(1-p) + e^{-(1-p)^2} p
  const double p = 0.3;
  RandomMeasure NB(CountingDistribution::poisson(1.0),
                   Measure::product_axes({Axis::bernoulli(p)}));
  Fn f = [p](const Point& x) { return (x[0] - p) * (x[0] - p); };
  const double inner = std::exp(-p * p) * (1.0 - p) + std::exp(-(1.0 - p) * (1.0 - p)) * p;
  CHECK(laplace_functional(NB, f) == Catch::Approx(std::exp(inner - 1.0)).epsilon(1e-12));

  // Dirac(n) kappa with Bernoulli nu and f = alpha x gives the binomial pgf
  const long long n = 6;
  const double alpha = 0.8;
  RandomMeasure ND(CountingDistribution::dirac(n), Measure::product_axes({Axis::bernoulli(p)}));
  Fn fax = [alpha](const Point& x) { return alpha * x[0]; };
  CHECK(laplace_functional(ND, fax) ==
        Catch::Approx(std::pow(1.0 - p + p * std::exp(-alpha), n)).epsilon(1e-12));
}

TEST_CASE("laplace transform grid and normalization") {
  auto NI = ishigami_rm(100.0);
  Fn f = ishigami_centered_sq(7.0, 0.1);
  const double nuf = NI.nu.integrate(f);
  const auto evals = laplace_transform(NI, f, {0.0, 0.5, 1.0, 2.0}, nuf);
  CHECK(evals[0].value == Catch::Approx(1.0));
  // decreasing in alpha, values in (0,1]
  for (std::size_t i = 1; i < evals.size(); ++i) {
    CHECK(evals[i].value <= evals[i - 1].value + 1e-12);
    CHECK(evals[i].value > 0.0);
    CHECK(evals[i].value <= 1.0);
  }
  // complete monotonicity proxy: log-convexity on a uniform alpha grid
  std::vector<double> alphas;
  for (int i = 0; i <= 20; ++i) alphas.push_back(0.1 * i);
  const auto grid = laplace_transform(NI, f, alphas, nuf);
  for (std::size_t i = 1; i + 1 < grid.size(); ++i) {
    const double second = std::log(grid[i - 1].value) - 2.0 * std::log(grid[i].value) +
                          std::log(grid[i + 1].value);
    CHECK(second >= -1e-8);
  }
}

TEST_CASE("moment extraction from the transform matches mean_nf") {
  auto NI = ishigami_rm(100.0);
  Fn f = ishigami_centered_sq(7.0, 0.1);
  const double exact = mean_nf(NI, f);
  const double est = laplace_mean_estimate(NI, f, NI.nu.integrate(f) * 100.0);
  CHECK(est == Catch::Approx(exact).epsilon(1e-4));
}

TEST_CASE("restricted laplace functional") {
  RandomMeasure N(CountingDistribution::poisson(2.0), Measure::uniform_box({0.0}, {1.0}));
  Fn f = [](const Point& x) { return 0.7 * x[0]; };
  // A = E reduces to the plain functional
  CHECK(restricted_laplace(N, N.nu, 1.0, f) ==
        Catch::Approx(laplace_functional(N, f)).epsilon(1e-12));
  // f = 0 gives 1
  auto [nuA, a] = N.nu.restrict_box({0.0}, {0.4});
  CHECK(restricted_laplace(N, nuA, a, [](const Point&) { return 0.0; }) == Catch::Approx(1.0));
  // PT bone-mapping cross-check: L_A(f) = laplace_functional of (kappa_a, nu_A)
  RandomMeasure NA(N.kappa.restrict(a), nuA);
  CHECK(restricted_laplace(N, nuA, a, f) ==
        Catch::Approx(laplace_functional(NA, f)).margin(1e-10));
  CHECK_THROWS_AS(restricted_laplace(N, nuA, 0.0, f), DegenerateError);
}

TEST_CASE("gamma construction transform approaches the gamma law") {
  // F(alpha) = ((lambda + e^{-t} alpha)/(lambda + alpha))^{c/t}
  const double lambda = 1.0, d = 2.0;
  auto F = [lambda](double c, double t, double alpha) {
    return std::pow((lambda + std::exp(-t) * alpha) / (lambda + alpha), c / t);
  };
  const double exact_10 = std::pow((1.0 + std::exp(-10.0)) / 2.0, 2.0);
  CHECK(F(20.0, 10.0, 1.0) == Catch::Approx(exact_10).epsilon(1e-12));
  CHECK(exact_10 == Catch::Approx(0.25002).epsilon(1e-4));
  double prev = 1e9;
  for (double t : {2.0, 5.0, 10.0, 20.0}) {
    double sup = 0.0;
    for (double alpha = 0.25; alpha <= 4.0; alpha += 0.25)
      sup = std::max(sup,
                     std::fabs(F(d * t, t, alpha) - std::pow(lambda / (lambda + alpha), d)));
    CHECK(sup < prev);
    prev = sup;
  }
}
