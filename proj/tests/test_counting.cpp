#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "rmuq/counting.hpp"
#include "rmuq/stats.hpp"

using namespace rmuq;

TEST_CASE("pgf values") {
  CHECK(CountingDistribution::poisson(2.0).pgf(1.0) == Catch::Approx(1.0));
  // Poisson pgf is exp(theta (t-1))
  const auto pois = CountingDistribution::poisson(1.7);
  for (double t : {0.0, 0.3, 0.9, 1.0})
    CHECK(pois.pgf(t) == Catch::Approx(std::exp(1.7 * (t - 1.0))).epsilon(1e-14));
  CHECK(CountingDistribution::binomial(2, 0.5).pgf(0.0) == Catch::Approx(0.25));
  CHECK_THROWS_AS(pois.pgf(1.5), DomainError);
  CHECK_THROWS_AS(pois.pgf(-0.1), DomainError);
}

TEST_CASE("moments per variant") {
  auto die = CountingDistribution::orthogonal_die(0, 4);
  CHECK(die.mean() == Catch::Approx(2.0));
  CHECK(die.variance() == Catch::Approx(2.0));

  auto dirac = CountingDistribution::dirac(5);
  CHECK(dirac.mean() == Catch::Approx(5.0));
  CHECK(dirac.variance() == 0.0);

  const double r = 3.0, p = 0.4;
  auto nb = CountingDistribution::negative_binomial(r, p);
  CHECK(nb.mean() == Catch::Approx(r * p / (1.0 - p)));
  const double q = p / (1.0 - p);
  CHECK(nb.variance() - nb.mean() == Catch::Approx(r * q * q));

  // zeta defect from the counting-measure table
  const double s = 3.0;
  auto zeta = CountingDistribution::zeta(s);
  const double z = riemann_zeta(s + 1.0);
  const double expect_defect =
      (riemann_zeta(s - 1.0) * z - riemann_zeta(s) * (riemann_zeta(s) + z)) / (z * z);
  CHECK(zeta.defect() == Catch::Approx(expect_defect).epsilon(1e-12));
  CHECK_THROWS_AS(CountingDistribution::zeta(1.5).variance(), DegenerateError);
}

TEST_CASE("orthogonality") {
  CHECK(CountingDistribution::poisson(3.7).is_orthogonal());
  CHECK_FALSE(CountingDistribution::dirac(5).is_orthogonal());
  CHECK(CountingDistribution::orthogonal_die(0, 4).is_orthogonal());
  CHECK_FALSE(CountingDistribution::orthogonal_die(0, 5).is_orthogonal());

  // defect cancellation: n p^2 = r (q/(1-q))^2
  const double p = 0.5;
  const long long n = 4;
  const double q = 0.5;
  const double r = n * p * p / std::pow(q / (1.0 - q), 2);
  auto sup = superpose({CountingDistribution::binomial(n, p),
                        CountingDistribution::negative_binomial(r, q)});
  CHECK(sup.is_orthogonal());
  CHECK(sup.mean() == Catch::Approx(n * p + r * q / (1.0 - q)));
}

TEST_CASE("restriction maps") {
  const double a = 0.5;
  auto bin = CountingDistribution::binomial(10, 0.4).restrict(a);
  CHECK(bin.kind() == CountingKind::Binomial);
  CHECK(bin.mean() == Catch::Approx(10 * 0.2));

  auto poi = CountingDistribution::poisson(3.0).restrict(0.25);
  CHECK(poi.kind() == CountingKind::Poisson);
  CHECK(poi.mean() == Catch::Approx(0.75));

  auto dir = CountingDistribution::dirac(6).restrict(0.3);
  CHECK(dir.kind() == CountingKind::Binomial);
  CHECK(dir.mean() == Catch::Approx(1.8));

  auto nb = CountingDistribution::negative_binomial(2.0, 0.6).restrict(0.4);
  CHECK(nb.kind() == CountingKind::NegativeBinomial);
  CHECK(nb.success_param() == Catch::Approx(0.4 * 0.6 / (1.0 - 0.6 * 0.6)));

  auto die = CountingDistribution::orthogonal_die(1, 7).restrict(0.5);
  CHECK(die.kind() == CountingKind::Thinned);
  CHECK(die.mean() == Catch::Approx(2.0));

  // identity restriction
  auto same = CountingDistribution::orthogonal_die(1, 7).restrict(1.0);
  CHECK(same.kind() == CountingKind::OrthogonalDie);

  CHECK_THROWS_AS(CountingDistribution::poisson(1.0).restrict(0.0), DomainError);
  CHECK_THROWS_AS(CountingDistribution::poisson(1.0).restrict(1.5), DomainError);
}

TEST_CASE("bone mapping identity psi(at+1-a) = psi_{h_a}(t)") {
  std::vector<CountingDistribution> pt = {
      CountingDistribution::binomial(7, 0.35),
      CountingDistribution::poisson(2.9),
      CountingDistribution::negative_binomial(1.8, 0.55),
      CountingDistribution::dirac(4),
      CountingDistribution::orthogonal_die(5, 15),
      CountingDistribution::zeta(3.5),
      superpose({CountingDistribution::binomial(3, 0.2), CountingDistribution::poisson(1.0),
                 CountingDistribution::negative_binomial(1.0, 0.3)}),
  };
  RngStream rng(99);
  for (const auto& d : pt) {
    for (int i = 0; i < 50; ++i) {
      const double a = 0.02 + 0.98 * rng.uniform();
      const double t = rng.uniform();
      const double lhs = d.pgf(a * t + 1.0 - a);
      const double rhs = d.restrict(a).pgf(t);
      REQUIRE(std::fabs(lhs - rhs) < 1e-12);
    }
  }
}

TEST_CASE("thinned law moments match conditional binomial") {
  auto die = CountingDistribution::orthogonal_die(5, 15);
  const double a = 0.37;
  auto thin = die.restrict(a);
  CHECK(thin.mean() == Catch::Approx(a * die.mean()));
  CHECK(thin.variance() ==
        Catch::Approx(a * (1.0 - a) * die.mean() + a * a * die.variance()));
}

TEST_CASE("orthogonal dice enumeration reproduces the table") {
  const auto dice = enumerate_orthogonal_dice(15);
  REQUIRE(dice.size() == 15);
  CHECK(dice[0].k == 1);
  CHECK(dice[0].m == 0);
  CHECK(dice[0].n == 4);
  CHECK(dice[1].k == 2);
  CHECK(dice[1].m == 1);
  CHECK(dice[1].n == 7);
  CHECK(dice[2].k == 4);
  CHECK(dice[2].m == 5);
  CHECK(dice[2].n == 15);
  CHECK(dice[14].k == 22);
  CHECK(dice[14].m == 161);
  CHECK(dice[14].n == 207);
  CHECK(dice[14].c == 184);
  CHECK(dice[14].sides == 47);
  for (const auto& e : dice) {
    CHECK(6 * (e.m + e.n) == (e.n - e.m + 1) * (e.n - e.m + 1) - 1);
    CHECK(e.sides % 2 == 1);
    CHECK(e.sides % 3 != 0);
    CHECK(e.law().is_orthogonal());
  }
}

TEST_CASE("superposition pgf is the member product") {
  auto a = CountingDistribution::poisson(1.0);
  auto b = CountingDistribution::poisson(2.0);
  auto s = superpose({a, b});
  CHECK(s.mean() == Catch::Approx(3.0));
  CHECK(s.variance() == Catch::Approx(3.0));
  CHECK(s.pgf(0.5) == Catch::Approx(a.pgf(0.5) * b.pgf(0.5)));

  auto mix = superpose({CountingDistribution::binomial(4, 0.5),
                        CountingDistribution::negative_binomial(2.0, 0.5)});
  CHECK(mix.mean() == Catch::Approx(4.0));
  CHECK(mix.defect() == Catch::Approx(-4 * 0.25 + 2.0 * 1.0));
  CHECK_THROWS_AS(superpose({}), DomainError);
}

TEST_CASE("sampling matches moments within four standard errors") {
  const std::size_t reps = 100000;
  std::vector<CountingDistribution> laws = {
      CountingDistribution::poisson(2.0),
      CountingDistribution::binomial(12, 0.3),
      CountingDistribution::negative_binomial(2.5, 0.4),
      CountingDistribution::orthogonal_die(1, 7),
      CountingDistribution::zeta(3.0),
      CountingDistribution::orthogonal_die(5, 15).restrict(0.5),
  };
  int law_index = 0;
  for (const auto& d : laws) {
    RngStream rng(derive_seed(1234, law_index++));
    std::vector<double> xs(reps);
    for (auto& x : xs) x = static_cast<double>(d.sample(rng));
    const auto s = summarize(xs);
    INFO(d.describe());
    CHECK(std::fabs(s.mean - d.mean()) < 4.0 * s.mean_se);
    CHECK(std::fabs(s.variance - d.variance()) < 4.0 * s.variance_se);
  }
  RngStream rng(5);
  for (int i = 0; i < 50; ++i) CHECK(CountingDistribution::dirac(7).sample(rng) == 7);
}

TEST_CASE("die draws are uniform by chi-square") {
  auto die = CountingDistribution::orthogonal_die(1, 7);
  RngStream rng(2024);
  std::vector<double> counts(7, 0.0);
  const int reps = 70000;
  for (int i = 0; i < reps; ++i) {
    const long long k = die.sample(rng);
    REQUIRE(k >= 1);
    REQUIRE(k <= 7);
    counts[k - 1] += 1.0;
  }
  std::vector<double> expected(7, reps / 7.0);
  CHECK(chi_square_test(counts, expected) > 0.01);
}

TEST_CASE("thinned die sequence approaches the Poisson pgf") {
  const auto dice = enumerate_orthogonal_dice(15);
  const double c = 2.0;
  double prev = 1e9;
  double last = 0.0;
  for (const auto& e : dice) {
    auto thin = e.law().restrict(c / static_cast<double>(e.c));
    double sup = 0.0;
    for (int i = 0; i <= 10; ++i) {
      const double t = i / 10.0;
      sup = std::max(sup, std::fabs(thin.pgf(t) - std::exp(c * (t - 1.0))));
    }
    CHECK(sup < prev);
    prev = sup;
    last = sup;
  }
  CHECK(last < 1e-2);
}

TEST_CASE("invalid constructions rejected") {
  CHECK_THROWS_AS(CountingDistribution::dirac(0), DomainError);
  CHECK_THROWS_AS(CountingDistribution::poisson(0.0), DomainError);
  CHECK_THROWS_AS(CountingDistribution::binomial(0, 0.5), DomainError);
  CHECK_THROWS_AS(CountingDistribution::negative_binomial(1.0, 1.0), DomainError);
  CHECK_THROWS_AS(CountingDistribution::orthogonal_die(4, 4), DomainError);
  CHECK_THROWS_AS(CountingDistribution::zeta(0.9), DomainError);
}
