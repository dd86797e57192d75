#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "rmuq/laplace.hpp"
#include "rmuq/stats.hpp"
#include "rmuq/stc.hpp"

using namespace rmuq;

TEST_CASE("dirac kappa always throws the same number of stones") {
  RandomMeasure N(CountingDistribution::dirac(3), Measure::uniform_box({0.0}, {1.0}));
  RngStream rng(1);
  for (int i = 0; i < 50; ++i) {
    const auto r = realize(N, rng);
    CHECK(r.count == 3);
    CHECK(r.flat.size() == 3);
  }
}

TEST_CASE("restriction counts follow the thinned law") {
  // N(A) ~ restrict_count(kappa, nu(A)): chi-square against Poisson(ac)
  const double c = 4.0, a = 0.35;
  RandomMeasure N(CountingDistribution::poisson(c), Measure::uniform_box({0.0}, {1.0}));
  auto thinned = N.kappa.restrict(a);
  RngStream rng(77);
  const int reps = 50000;
  const int kmax = 12;
  std::vector<double> counts(kmax + 1, 0.0);
  for (int r = 0; r < reps; ++r) {
    const auto real = realize(N, rng);
    int in_a = 0;
    for (long long i = 0; i < real.count; ++i)
      if (real.point(i)[0] < a) ++in_a;
    counts[std::min(in_a, kmax)] += 1.0;
  }
  std::vector<double> expected(kmax + 1, 0.0);
  double tail = 1.0;
  double pmf = std::exp(-a * c);
  for (int k = 0; k < kmax; ++k) {
    expected[k] = reps * pmf;
    tail -= pmf;
    pmf *= a * c / (k + 1);
  }
  expected[kmax] = reps * tail;
  CHECK(thinned.mean() == Catch::Approx(a * c));
  CHECK(chi_square_test(counts, expected) > 0.01);
}

TEST_CASE("poisson counts in disjoint sets are uncorrelated") {
  RandomMeasure N(CountingDistribution::poisson(5.0), Measure::uniform_box({0.0}, {1.0}));
  Fn in_a = [](const Point& x) { return x[0] < 0.4 ? 1.0 : 0.0; };
  Fn in_b = [](const Point& x) { return x[0] >= 0.6 ? 1.0 : 0.0; };
  const auto stats = empirical_stats(N, {in_a, in_b}, 100000, 2025);
  CHECK(std::fabs(stats.cov[0][0].covariance) < 4.0 * stats.cov[0][0].se);
}

TEST_CASE("evaluate returns K for f = 1 and N(A) for indicators") {
  RandomMeasure N(CountingDistribution::dirac(9), Measure::uniform_box({0.0}, {1.0}));
  RngStream rng(4);
  CHECK(evaluate(N, [](const Point&) { return 1.0; }, rng) == Catch::Approx(9.0));
  const double na = evaluate(N, [](const Point& x) { return x[0] < 0.5 ? 1.0 : 0.0; }, rng);
  CHECK(na >= 0.0);
  CHECK(na <= 9.0);
  CHECK(na == std::floor(na));
  CHECK_THROWS_AS(evaluate(N, [](const Point&) { return -1.0; }, rng), DomainError);
}

TEST_CASE("empirical moments match the closed forms across kappa variants") {
  auto nu = Measure::uniform_box({0.0}, {1.0});
  Fn f = [](const Point& x) { return x[0] * x[0] + 0.25; };
  const std::vector<CountingDistribution> laws = {
      CountingDistribution::dirac(6),
      CountingDistribution::binomial(11, 0.45),
      CountingDistribution::poisson(3.5),
      CountingDistribution::negative_binomial(2.0, 0.45),
      CountingDistribution::orthogonal_die(1, 7),
      CountingDistribution::zeta(3.0),
      superpose({CountingDistribution::poisson(1.5), CountingDistribution::binomial(4, 0.5)}),
      CountingDistribution::orthogonal_die(5, 15).restrict(0.6),
  };
  int idx = 0;
  for (const auto& kappa : laws) {
    RandomMeasure N(kappa, nu);
    const auto stats = empirical_stats(N, {f}, 100000, derive_seed(900, idx++));
    const double mean_expected = mean_nf(N, f);
    const double var_expected = var_nf(N, f);
    INFO(kappa.describe());
    CHECK(std::fabs(stats.per_function[0].mean - mean_expected) <
          4.0 * stats.per_function[0].mean_se);
    CHECK(std::fabs(stats.per_function[0].variance - var_expected) <
          4.0 * stats.per_function[0].variance_se);
  }
}

TEST_CASE("disjoint covariance matches the closed form") {
  auto nu = Measure::uniform_box({0.0}, {1.0});
  Fn fa = [](const Point& x) { return x[0] < 0.5 ? 1.0 + x[0] : 0.0; };
  Fn fb = [](const Point& x) { return x[0] >= 0.5 ? 2.0 * x[0] : 0.0; };

  // orthogonal: zero covariance
  RandomMeasure Np(CountingDistribution::poisson(4.0), nu);
  auto sp = empirical_stats(Np, {fa, fb}, 100000, 31);
  CHECK(std::fabs(sp.cov[0][0].covariance) < 4.0 * sp.cov[0][0].se);

  // Dirac: covariance -c nu(fa) nu(fb)
  RandomMeasure Nd(CountingDistribution::dirac(6), nu);
  const double expect = cov_nf(Nd, fa, fb);
  CHECK(expect < 0.0);
  auto sd = empirical_stats(Nd, {fa, fb}, 100000, 32);
  CHECK(std::fabs(sd.cov[0][0].covariance - expect) < 4.0 * sd.cov[0][0].se);
}

TEST_CASE("multinomial cell counts under dirac kappa") {
  const long long k = 8;
  RandomMeasure N(CountingDistribution::dirac(k), Measure::uniform_box({0.0}, {1.0}));
  const double p1 = 0.3, p2 = 0.5;  // cells [0,.3), [.3,.8), [.8,1]
  RngStream rng(123);
  const int reps = 30000;
  // bin joint (n1,n2) outcomes by a flat index, chi-square against multinomial
  std::vector<double> observed((k + 1) * (k + 1), 0.0);
  for (int r = 0; r < reps; ++r) {
    const auto real = realize(N, rng);
    int n1 = 0, n2 = 0;
    for (long long i = 0; i < k; ++i) {
      const double x = real.point(i)[0];
      if (x < p1)
        ++n1;
      else if (x < p1 + p2)
        ++n2;
    }
    observed[n1 * (k + 1) + n2] += 1.0;
  }
  std::vector<double> expected((k + 1) * (k + 1), 0.0);
  for (long long n1 = 0; n1 <= k; ++n1)
    for (long long n2 = 0; n1 + n2 <= k; ++n2) {
      const long long n3 = k - n1 - n2;
      double logp = std::lgamma(k + 1.0) - std::lgamma(n1 + 1.0) - std::lgamma(n2 + 1.0) -
                    std::lgamma(n3 + 1.0) + n1 * std::log(p1) + n2 * std::log(p2) +
                    n3 * std::log(1.0 - p1 - p2);
      expected[n1 * (k + 1) + n2] = reps * std::exp(logp);
    }
  // merge sparse cells below a count of 5 into one bucket
  std::vector<double> obs_m, exp_m;
  double obs_rest = 0.0, exp_rest = 0.0;
  for (std::size_t i = 0; i < expected.size(); ++i) {
    if (expected[i] >= 5.0) {
      obs_m.push_back(observed[i]);
      exp_m.push_back(expected[i]);
    } else {
      obs_rest += observed[i];
      exp_rest += expected[i];
    }
  }
  if (exp_rest > 0.0) {
    obs_m.push_back(obs_rest);
    exp_m.push_back(exp_rest);
  }
  CHECK(chi_square_test(obs_m, exp_m) > 0.01);
}

TEST_CASE("counting process paths are monotone step functions") {
  RandomMeasure N(CountingDistribution::poisson(20.0), Measure::uniform_box({0.0}, {10.0}));
  RngStream rng(5);
  std::vector<double> grid;
  for (int i = 0; i <= 100; ++i) grid.push_back(0.1 * i + 0.05);
  for (int r = 0; r < 50; ++r) {
    const auto real = realize(N, rng);
    const auto path = counting_process(real, grid);
    for (std::size_t i = 1; i < path.size(); ++i) CHECK(path[i] >= path[i - 1]);
    CHECK(path.back() == real.count);  // grid end beyond all points
  }
}

TEST_CASE("poisson process increments over disjoint windows") {
  const double c = 30.0, T = 3.0;
  RandomMeasure N(CountingDistribution::poisson(c), Measure::uniform_box({0.0}, {T}));
  RngStream rng(6);
  const int reps = 20000;
  std::vector<double> inc1(reps), inc2(reps);
  const std::vector<double> grid = {1.0, 2.0, 3.0};
  for (int r = 0; r < reps; ++r) {
    const auto real = realize(N, rng);
    const auto path = counting_process(real, grid);
    inc1[r] = static_cast<double>(path[0]);
    inc2[r] = static_cast<double>(path[1] - path[0]);
  }
  const auto cov = covariance(inc1, inc2);
  CHECK(std::fabs(cov.covariance) < 4.0 * cov.se);
  const auto s1 = summarize(inc1);
  const double lam = c / T;
  CHECK(std::fabs(s1.mean - lam) < 4.0 * s1.mean_se);
  CHECK(std::fabs(s1.variance - lam) < 4.0 * s1.variance_se);
}

TEST_CASE("identical seeds give identical realizations regardless of threads") {
  RandomMeasure N(CountingDistribution::poisson(7.0), Measure::uniform_box({0.0}, {1.0}));
  auto draw = [&](std::uint64_t base, std::size_t rep) {
    RngStream rng(derive_seed(base, rep));
    return realize(N, rng);
  };
  const auto a = draw(99, 17);
  const auto b = draw(99, 17);
  REQUIRE(a.count == b.count);
  for (std::size_t i = 0; i < a.flat.size(); ++i) CHECK(a.flat[i] == b.flat[i]);

  worker_count_cap(2);
  const auto s2 = empirical_stats(N, {[](const Point& x) { return x[0]; }}, 5000, 42);
  worker_count_cap(1);
  const auto s1 = empirical_stats(N, {[](const Point& x) { return x[0]; }}, 5000, 42);
  CHECK(s1.per_function[0].mean == s2.per_function[0].mean);
  CHECK(s1.per_function[0].variance == s2.per_function[0].variance);
}
