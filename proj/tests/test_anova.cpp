#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "rmuq/anova.hpp"

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
}  // namespace

TEST_CASE("bernoulli univariate polynomial indices") {
  // g(x) = x, f = (x-p)^2 over {0,1}; cells are the atoms
  const double p = 0.3;
  auto nu = Measure::product_axes({Axis::bernoulli(p)});
  Fn f = [p](const Point& x) { return (x[0] - p) * (x[0] - p); };
  PartitionSpec cells{{Cell::pred("x=0", [](const Point& x) { return x[0] == 0.0; }),
                       Cell::pred("x=1", [](const Point& x) { return x[0] == 1.0; })}};

  // orthogonal kappa: S^a_a = p^3 / (3p^2 - 3p + 1)
  RandomMeasure No(CountingDistribution::poisson(2.0), nu);
  const auto rep = rm_anova(No, f, cells);
  CHECK(rep.structural[0] == Catch::Approx(p * p * p / (3 * p * p - 3 * p + 1)).epsilon(1e-12));
  CHECK(rep.correlative[0] == Catch::Approx(0.0).margin(1e-15));
  CHECK(rep.correlative[1] == Catch::Approx(0.0).margin(1e-15));
  CHECK(rep.total_structural == Catch::Approx(1.0).margin(1e-12));
  REQUIRE(rep.report_entropy.has_value());

  // Dirac kappa: S^a_a = p^4 / (1-2p)^2 with negative correlatives
  RandomMeasure Nd(CountingDistribution::dirac(5), nu);
  const auto repd = rm_anova(Nd, f, cells);
  CHECK(repd.structural[0] ==
        Catch::Approx(std::pow(p, 4) / std::pow(1.0 - 2.0 * p, 2)).epsilon(1e-12));
  CHECK(repd.structural[1] ==
        Catch::Approx(std::pow(1.0 - p, 4) / std::pow(1.0 - 2.0 * p, 2)).epsilon(1e-12));
  CHECK(repd.total_structural > 1.0);
  CHECK(repd.total_correlative < 0.0);
  CHECK(repd.total_structural + repd.total_correlative == Catch::Approx(1.0).margin(1e-9));
  CHECK_FALSE(repd.report_entropy.has_value());

  // p = 1/2 symmetric orthogonal case
  auto nu_half = Measure::product_axes({Axis::bernoulli(0.5)});
  RandomMeasure Nh(CountingDistribution::poisson(2.0), nu_half);
  Fn fh = [](const Point& x) { return (x[0] - 0.5) * (x[0] - 0.5); };
  const auto reph = rm_anova(Nh, fh, cells);
  CHECK(reph.structural[0] == Catch::Approx(0.5).margin(1e-12));
  CHECK(reph.structural[1] == Catch::Approx(0.5).margin(1e-12));
  CHECK(*reph.report_entropy == Catch::Approx(std::log(2.0)).margin(1e-12));

  // p = 1/2 Dirac is the degenerate singularity: Var f = 0
  RandomMeasure Ndh(CountingDistribution::dirac(5), nu_half);
  CHECK_THROWS_AS(rm_anova(Ndh, fh, cells), DegenerateError);
}

TEST_CASE("box partition over a continuous axis") {
  auto nu = Measure::uniform_box({-kPi, -kPi, -kPi}, {kPi, kPi, kPi});
  RandomMeasure N(CountingDistribution::poisson(100.0), nu);
  Fn f = ishigami_centered_sq(7.0, 0.1);
  const int m = 10;
  PartitionSpec cells;
  for (int i = 0; i < m; ++i) {
    const double lo = -kPi + 2.0 * kPi * i / m;
    const double hi = -kPi + 2.0 * kPi * (i + 1) / m;
    cells.cells.push_back(Cell::box("c" + std::to_string(i), {lo, -kPi, -kPi}, {hi, kPi, kPi}));
  }
  const auto rep = rm_anova(N, f, cells);
  CHECK(rep.total_structural == Catch::Approx(1.0).margin(1e-9));
  CHECK(rep.total_correlative == Catch::Approx(0.0).margin(1e-12));
  double mass = 0.0;
  for (double a : rep.masses) mass += a;
  CHECK(mass == Catch::Approx(1.0).margin(1e-12));
  // scale invariance of the indices
  Fn f_scaled = [&f](const Point& x) { return 17.5 * f(x); };
  const auto rep2 = rm_anova(N, f_scaled, cells);
  for (int i = 0; i < m; ++i)
    CHECK(rep2.structural[i] == Catch::Approx(rep.structural[i]).margin(1e-12));
}

TEST_CASE("non-covering or overlapping partitions are rejected") {
  auto nu = Measure::uniform_box({0.0}, {1.0});
  RandomMeasure N(CountingDistribution::poisson(1.0), nu);
  Fn f = [](const Point& x) { return x[0]; };
  PartitionSpec gap{{Cell::box("a", {0.0}, {0.4}), Cell::box("b", {0.6}, {1.0})}};
  CHECK_THROWS_AS(rm_anova(N, f, gap), DomainError);
  PartitionSpec overlap{{Cell::box("a", {0.0}, {0.7}), Cell::box("b", {0.3}, {1.0})}};
  CHECK_THROWS_AS(rm_anova(N, f, overlap), DomainError);
}

TEST_CASE("ishigami sensitivity densities match the printed closed forms") {
  const double a = 7.0, b = 0.1;
  auto nu = Measure::uniform_box({-kPi, -kPi, -kPi}, {kPi, kPi, kPi});
  RandomMeasure N(CountingDistribution::poisson(100.0), nu);
  Fn f = ishigami_centered_sq(a, b);

  const double p4 = std::pow(kPi, 4), p8 = std::pow(kPi, 8);
  const double p12 = std::pow(kPi, 12), p16 = std::pow(kPi, 16);
  const double nu_f2 = nu.integrate([&f](const Point& x) {
    const double v = f(x);
    return v * v;
  });
  const double xi = 2.0 * kPi * nu_f2;

  auto s1 = sensitivity_density(N, f, {0});
  const double alpha1 = 3.0 * std::pow(a, 4) / 128.0;
  const double beta1 = a * a / 60.0 * (5.0 * p8 * b * b + 18.0 * p4 * b + 45.0);
  const double gamma1 = p16 * std::pow(b, 4) / 17.0 + 4.0 * p12 * std::pow(b, 3) / 13.0 +
                        2.0 * p8 * b * b / 3.0 + 4.0 * p4 * b / 5.0 + 1.0;
  for (int i = 0; i < 100; ++i) {
    const double x = -kPi + 2.0 * kPi * (i + 0.5) / 100.0;
    const double s2 = std::sin(x) * std::sin(x);
    const double expect = (alpha1 + beta1 * s2 + gamma1 * s2 * s2) / xi;
    CHECK(s1({x}) == Catch::Approx(expect).margin(1e-6));
  }

  auto s2d = sensitivity_density(N, f, {1});
  const double alpha2 = 3.0 * p16 * std::pow(b, 4) / 136.0 + 3.0 * p12 * std::pow(b, 3) / 26.0 +
                        p8 * b * b / 4.0 + 3.0 * p4 * b / 10.0 + 3.0 / 8.0;
  const double beta2 = beta1;
  const double gamma2 = std::pow(a, 4) / 16.0;
  for (int i = 0; i < 100; ++i) {
    const double x = -kPi + 2.0 * kPi * (i + 0.5) / 100.0;
    const double c2 = std::cos(2.0 * x) * std::cos(2.0 * x);
    const double expect = (alpha2 + beta2 * c2 + gamma2 * c2 * c2) / xi;
    CHECK(s2d({x}) == Catch::Approx(expect).margin(1e-6));
  }

  auto s3 = sensitivity_density(N, f, {2});
  for (int i = 0; i < 100; ++i) {
    const double x = -kPi + 2.0 * kPi * (i + 0.5) / 100.0;
    const double t = b * std::pow(x, 4);
    const double expect =
        3.0 / 128.0 *
        (std::pow(a, 4) + 16.0 * std::pow(a * t + a, 2) + 16.0 * std::pow(t + 1.0, 4)) / xi;
    CHECK(s3({x}) == Catch::Approx(expect).margin(1e-6));
  }

  // normalization
  CHECK(s1.normalization_check() == Catch::Approx(1.0).margin(1e-6));
  CHECK(s2d.normalization_check() == Catch::Approx(1.0).margin(1e-6));
  CHECK(s3.normalization_check() == Catch::Approx(1.0).margin(1e-6));

  // constant f: density equals nu itself
  RandomMeasure N1(CountingDistribution::poisson(1.0), Measure::uniform_box({0.0}, {2.0}));
  auto sc = sensitivity_density(N1, [](const Point&) { return 3.0; }, {0});
  CHECK(sc({0.7}) == Catch::Approx(0.5).margin(1e-12));

  // contract: non-orthogonal kappa rejected
  RandomMeasure Nd(CountingDistribution::dirac(3), nu);
  CHECK_THROWS_AS(sensitivity_density(Nd, f, {0}), ContractError);
}

TEST_CASE("mm_anova decomposes the intensity measure") {
  const double a = 7.0, b = 0.1;
  auto nu = Measure::uniform_box({-kPi, -kPi, -kPi}, {kPi, kPi, kPi});
  RandomMeasure N(CountingDistribution::poisson(100.0), nu);
  Fn g = [a, b](const Point& x) {
    return std::sin(x[0]) + a * std::sin(x[1]) * std::sin(x[1]) +
           b * std::pow(x[2], 4) * std::sin(x[0]);
  };
  const auto mm = mm_anova(N, g);
  CHECK(mm.mean_nf == Catch::Approx(1384.46).epsilon(1e-4));
  double contrib = 0.0;
  for (const auto& c : mm.hdmr.components) contrib += mm.contribution(c);
  CHECK(contrib == Catch::Approx(mm.mean_nf).epsilon(1e-9));

  // constant g has zero intensity of the squared loss
  const auto mm0 = mm_anova(N, [](const Point&) { return 3.0; });
  CHECK(mm0.mean_nf == Catch::Approx(0.0).margin(1e-12));
}

TEST_CASE("entropy basics") {
  CHECK(entropy({0.5, 0.5}) == Catch::Approx(std::log(2.0)));
  CHECK(entropy({1.0, 0.0}) == Catch::Approx(0.0));
  // vaccine-trial event splits
  const double m = 5.0 / 95.0;
  CHECK(entropy({m, 1.0 - m}) == Catch::Approx(0.206).margin(5e-4));
  const double pf = 8.0 / 170.0;
  CHECK(entropy({pf, 1.0 - pf}) == Catch::Approx(0.190).margin(5e-4));
  CHECK_THROWS_AS(entropy({0.7, 0.7}), ContractError);
  CHECK_THROWS_AS(entropy({-0.1, 1.1}), ContractError);
}

TEST_CASE("classifier lift partitions unity") {
  auto g = [](const Point& x) { return x[0] < 0.3 ? 1 : (x[0] < 0.8 ? 2 : 3); };
  const auto lifts = classifier_lift(g, 3);
  RngStream rng(5);
  for (int i = 0; i < 100; ++i) {
    Point x = {rng.uniform()};
    double sum = 0.0;
    for (const auto& l : lifts) sum += l(x);
    CHECK(sum == 1.0);
  }
  // nu l is the class-probability vector (exact via the class regions)
  auto nu = Measure::uniform_box({0.0}, {1.0});
  const double p1 = nu.restrict_box({0.0}, {0.3}).second;
  const double p2 = nu.restrict_box({0.3}, {0.8}).second;
  const double p3 = nu.restrict_box({0.8}, {1.0}).second;
  CHECK(p1 * lifts[0]({0.1}) + p2 * lifts[0]({0.5}) == Catch::Approx(0.3).margin(1e-12));
  CHECK(p2 == Catch::Approx(0.5).margin(1e-12));
  CHECK(p3 == Catch::Approx(0.2).margin(1e-12));
  const auto mc = nu.integrate_mc(lifts[1], 100000, 9);
  CHECK(std::fabs(mc.value - 0.5) < 4.0 * mc.std_error);
  const auto bad = classifier_lift([](const Point&) { return 7; }, 3);
  CHECK_THROWS_AS(bad[0]({0.5}), DomainError);
}
