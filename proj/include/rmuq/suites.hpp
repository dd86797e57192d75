// Worked example suites: elementary symmetric polynomial, Bernoulli
// univariate calculation, Ishigami, Gaussian process regressor, classifier,
// correlated bivariate polynomial, graph spectral gap, and the Ising
// magnetization field. Each returns a Report with golden verdicts and
// figure-equivalent tables.
#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <string>
#include <vector>

#include "rmuq/anova.hpp"
#include "rmuq/constructions.hpp"
#include "rmuq/dsa.hpp"
#include "rmuq/gpr.hpp"
#include "rmuq/hdmr.hpp"
#include "rmuq/laplace.hpp"
#include "rmuq/maxent.hpp"
#include "rmuq/rct.hpp"
#include "rmuq/report.hpp"
#include "rmuq/risk.hpp"
#include "rmuq/sda.hpp"

namespace rmuq {

constexpr double kTwoPi = 6.283185307179586476925286766559;

// ---------------------------------------------------------------------------
// Ishigami
// ---------------------------------------------------------------------------

inline Fn ishigami_function(double a, double b) {
  return [a, b](const Point& x) {
    return std::sin(x[0]) + a * std::sin(x[1]) * std::sin(x[1]) +
           b * std::pow(x[2], 4) * std::sin(x[0]);
  };
}

struct IshigamiClosedForms {
  double a, b;
  double pi4 = std::pow(M_PI, 4), pi8 = std::pow(M_PI, 8);
  double mean() const { return a / 2.0; }
  double variance() const { return a * a / 8.0 + pi8 * b * b / 18.0 + pi4 * b / 5.0 + 0.5; }
  double var_g1() const { return std::pow(pi4 * b + 5.0, 2) / 50.0; }
  double var_g2() const { return a * a / 8.0; }
  double var_g13() const { return 8.0 * pi8 * b * b / 225.0; }
  double index_g1() const {
    return 36.0 * std::pow(pi4 * b + 5.0, 2) /
           (5.0 * (45.0 * a * a + 20.0 * pi8 * b * b + 72.0 * pi4 * b + 180.0));
  }
  double index_g2() const {
    return 45.0 * a * a / (45.0 * a * a + 20.0 * pi8 * b * b + 72.0 * pi4 * b + 180.0);
  }
  double index_g13() const {
    return 64.0 * pi8 * b * b / (5.0 * (45.0 * a * a + 20.0 * pi8 * b * b + 72.0 * pi4 * b + 180.0));
  }
  double fourth_central() const {
    const double pi12 = std::pow(M_PI, 12), pi16 = std::pow(M_PI, 16);
    return pi8 * (a * a + 6.0) * b * b / 24.0 + 3.0 * pi4 * (a * a + 2.0) * b / 20.0 +
           3.0 * (std::pow(a, 4) + 16.0 * a * a + 16.0) / 128.0 +
           3.0 * pi16 * std::pow(b, 4) / 136.0 + 3.0 * pi12 * std::pow(b, 3) / 26.0;
  }
};

inline Report suite_ishigami(std::uint64_t seed = 42, double a = 7.0, double b = 0.1,
                             double poisson_mean = 100.0) {
  Report rep;
  rep.example = "ishigami";
  rep.seed = seed;
  IshigamiClosedForms cf{a, b};
  Fn g = ishigami_function(a, b);

  auto nu = Measure::uniform_box({-M_PI, -M_PI, -M_PI}, {M_PI, M_PI, M_PI});
  RandomMeasure N(CountingDistribution::poisson(poisson_mean), nu);

  // HDMR against the closed-form table
  const auto model = hdmr_product(g, nu);
  rep.golden("var_g_quadrature", model.total_variance, cf.variance(), 1e-3 * cf.variance(),
             "closed-form variance of the test function");
  rep.golden("var_g1", model.find({0})->variance, cf.var_g1(), 1e-3 * cf.var_g1(),
             "first-order subspace variance, closed form");
  rep.golden("var_g2", model.find({1})->variance, cf.var_g2(), 1e-3 * cf.var_g2(),
             "second coordinate subspace variance, closed form");
  rep.golden("var_g13", model.find({0, 2})->variance, cf.var_g13(), 1e-3 * cf.var_g13(),
             "interaction subspace variance, closed form");
  rep.golden("index_g1", model.index(*model.find({0})), cf.index_g1(), 1e-6, "closed form");
  rep.golden("index_g2", model.index(*model.find({1})), cf.index_g2(), 1e-6, "closed form");
  rep.golden("index_g13", model.index(*model.find({0, 2})), cf.index_g13(), 1e-6, "closed form");

  // intensity and variance of the squared-loss functional
  const double mg = cf.mean();
  Fn f = [g, mg](const Point& x) {
    const double d = g(x) - mg;
    return d * d;
  };
  const double mean_nf_v = mean_nf(N, f);
  const double var_nf_v = var_nf(N, f);
  rep.golden("mean_nf", mean_nf_v, poisson_mean * cf.variance(), 1e-3 * mean_nf_v,
             "c Var g; reported 1384.5");
  rep.golden("var_nf", var_nf_v, poisson_mean * cf.fourth_central(), 1e-3 * var_nf_v,
             "c nu f^2; reported 67223.4");
  rep.golden("nu_f2_closed", nu.integrate([&f](const Point& x) {
    const double v = f(x);
    return v * v;
  }), cf.fourth_central(), 1e-6 * cf.fourth_central(), "fourth central moment closed form");

  // maximum entropy density of Nf
  {
    auto problem = generalized_moments(N, f, exponential_alphas(10, seed), mean_nf_v);
    const auto density = fit_maxent(problem);
    rep.golden("maxent_mean", density.mean(), mean_nf_v, 0.01 * mean_nf_v,
               "reported recovery 1387.0");
    rep.golden("maxent_var", density.variance(), var_nf_v, 0.05 * var_nf_v,
               "reported recovery 66419.3");
    ReportTable eta{"maxent_density", {"x", "eta"}, {}};
    for (int i = 0; i <= 200; ++i) {
      const double x = mean_nf_v - 4.0 * std::sqrt(var_nf_v) +
                       8.0 * std::sqrt(var_nf_v) * i / 200.0;
      if (x <= 0.0) continue;
      eta.rows.push_back({x, density.eta(x)});
    }
    rep.tables.push_back(std::move(eta));
  }

  // coordinate partitions into 100 cells for a ladder of b values
  auto nu_coarse = Measure::uniform_box({-M_PI, -M_PI, -M_PI}, {M_PI, M_PI, M_PI}, 16);
  RandomMeasure Ncoarse(CountingDistribution::poisson(poisson_mean), nu_coarse);
  RandomMeasure Ndirac(CountingDistribution::dirac(static_cast<long long>(poisson_mean)),
                       nu_coarse);
  const int cells = 100;
  ReportTable profile{"structural_profile", {"coordinate", "b", "cell", "s_a"}, {}};
  ReportTable entropy_curve{"partition_entropy", {"coordinate", "b", "entropy"}, {}};
  ReportTable dirac_profile{"dirac_structural_profile", {"coordinate", "b", "cell", "s_a"}, {}};
  for (double bb : {0.01, 0.05, 0.1, 0.15, 0.2}) {
    Fn gb = ishigami_function(a, bb);
    IshigamiClosedForms cb{a, bb};
    const double mgb = cb.mean();
    Fn fb = [gb, mgb](const Point& x) {
      const double d = gb(x) - mgb;
      return d * d;
    };
    for (int axis = 0; axis < 3; ++axis) {
      PartitionSpec part;
      for (int i = 0; i < cells; ++i) {
        std::vector<double> lo = {-M_PI, -M_PI, -M_PI}, hi = {M_PI, M_PI, M_PI};
        lo[axis] = -M_PI + kTwoPi * i / cells;
        hi[axis] = -M_PI + kTwoPi * (i + 1) / cells;
        part.cells.push_back(Cell::box("c" + std::to_string(i), lo, hi));
      }
      const auto r = rm_anova(Ncoarse, fb, part);
      for (int i = 0; i < cells; ++i)
        profile.rows.push_back({static_cast<double>(axis + 1), bb, static_cast<double>(i),
                                r.structural[i]});
      entropy_curve.rows.push_back({static_cast<double>(axis + 1), bb, *r.report_entropy});
      const auto rd = rm_anova(Ndirac, fb, part);
      for (int i = 0; i < cells; ++i)
        dirac_profile.rows.push_back({static_cast<double>(axis + 1), bb, static_cast<double>(i),
                                      rd.structural[i]});
    }
  }
  rep.tables.push_back(std::move(profile));
  rep.tables.push_back(std::move(entropy_curve));
  rep.tables.push_back(std::move(dirac_profile));

  // HDMR entropy as a function of b has an interior maximum near 0.13
  {
    ReportTable hcurve{"hdmr_entropy", {"b", "entropy"}, {}};
    double best_b = 0.0, best_h = -1.0;
    for (double bb = 0.01; bb <= 0.2 + 1e-12; bb += 0.01) {
      IshigamiClosedForms c2{a, bb};
      const double total = c2.var_g1() + c2.var_g2() + c2.var_g13();
      const double h = entropy({c2.var_g1() / total, c2.var_g2() / total, c2.var_g13() / total});
      hcurve.rows.push_back({bb, h});
      if (h > best_h) {
        best_h = h;
        best_b = bb;
      }
    }
    rep.tables.push_back(std::move(hcurve));
    CheckResult v;
    v.name = "hdmr_entropy_peak_near_0.13";
    v.value = best_b;
    v.target = 0.13;
    v.tolerance = 0.02;
    v.pass = std::fabs(best_b - 0.13) <= v.tolerance;
    rep.verdict(std::move(v));
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Elementary symmetric polynomial
// ---------------------------------------------------------------------------

inline double sympoly_order_index(int n, int k, double rho) {
  // C(n,k) rho^{2k} / ((1+rho^2)^n - 1), evaluated in log space
  const double log_c = std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
  const double log_num = log_c + 2.0 * k * std::log(rho);
  const double log_den = n * std::log1p(rho * rho) + std::log1p(-std::pow(1.0 + rho * rho, -n));
  return std::exp(log_num - log_den);
}

inline double sympoly_mean_dimension(int n, double rho) {
  const double r2 = rho * rho;
  return n * r2 * std::pow(1.0 + r2, n - 1) / (std::pow(1.0 + r2, n) - 1.0);
}

inline double sympoly_var_dimension(int n, double rho) {
  const double r2 = rho * rho;
  const double top = n * r2 * std::pow(1.0 + r2, n - 2) *
                     (std::pow(1.0 + r2, n) - n * r2 - 1.0);
  return top / std::pow(std::pow(1.0 + r2, n) - 1.0, 2);
}

inline Report suite_sympoly(std::uint64_t seed = 42, int n = 100) {
  Report rep;
  rep.example = "sympoly";
  rep.seed = seed;

  // order distribution over a rho ladder
  ReportTable dist{"order_distribution", {"rho", "k", "s_k"}, {}};
  ReportTable hcurve{"entropy", {"rho", "entropy", "mean_dim", "var_dim"}, {}};
  for (double rho : {0.25, 0.5, 0.75, 1.0, 1.5, 2.0}) {
    std::vector<double> sk(n);
    double total = 0.0;
    for (int k = 1; k <= n; ++k) {
      sk[k - 1] = sympoly_order_index(n, k, rho);
      total += sk[k - 1];
      dist.rows.push_back({rho, static_cast<double>(k), sk[k - 1]});
    }
    CheckResult v;
    v.name = "order indices sum to one at rho=" + format_number(rho);
    v.value = total;
    v.target = 1.0;
    v.tolerance = 1e-9;
    v.pass = std::fabs(total - 1.0) <= v.tolerance;
    rep.verdict(std::move(v));
    hcurve.rows.push_back({rho, entropy(sk), sympoly_mean_dimension(n, rho),
                           sympoly_var_dimension(n, rho)});
  }
  rep.tables.push_back(std::move(dist));
  rep.tables.push_back(std::move(hcurve));

  // E P at rho = 1 equals n / (2 - 2^{1-n})
  rep.golden("mean_dimension_rho1", sympoly_mean_dimension(n, 1.0),
             n / (2.0 - std::pow(2.0, 1.0 - n)), 1e-9, "printed closed form");

  // constructed HDMR matches the printed order-k law on a small cube
  for (double rho : {0.5, 1.0, 2.0}) {
    std::vector<Axis> axes;
    for (int i = 0; i < 6; ++i) axes.push_back(Axis::gaussian(1.0, rho, 8));
    const auto model = hdmr_product(
        [](const Point& x) {
          double p = 1.0;
          for (double v : x) p *= v;
          return p;
        },
        Measure::product_axes(std::move(axes)));
    double worst = 0.0;
    for (int k = 1; k <= 6; ++k)
      worst = std::max(worst, std::fabs(model.order_index(k) - sympoly_order_index(6, k, rho)));
    CheckResult v;
    v.name = "constructed hdmr matches order indices at rho=" + format_number(rho);
    v.value = worst;
    v.target = 0.0;
    v.tolerance = 1e-8;
    v.pass = worst <= v.tolerance;
    rep.verdict(std::move(v));
  }
  return rep;
}

/// Univariate Bernoulli worked example: both counting regimes in closed form.
inline Report suite_bernoulli(std::uint64_t seed = 42) {
  Report rep;
  rep.example = "bernoulli";
  rep.seed = seed;
  ReportTable curves{"indices", {"p", "s_a_orth", "s_b_orth_cell0", "s_a_dirac", "s_b_dirac",
                                 "entropy_orth"},
                     {}};
  double worst_closed = 0.0;
  for (double p = 0.05; p <= 0.95 + 1e-12; p += 0.05) {
    if (std::fabs(p - 0.5) < 1e-9) continue;  // the Dirac singularity
    auto nu = Measure::product_axes({Axis::bernoulli(p)});
    Fn f = [p](const Point& x) { return (x[0] - p) * (x[0] - p); };
    PartitionSpec cells{{Cell::pred("x=0", [](const Point& x) { return x[0] == 0.0; }),
                         Cell::pred("x=1", [](const Point& x) { return x[0] == 1.0; })}};
    RandomMeasure No(CountingDistribution::poisson(2.0), nu);
    RandomMeasure Nd(CountingDistribution::dirac(5), nu);
    const auto ro = rm_anova(No, f, cells);
    const auto rd = rm_anova(Nd, f, cells);
    const double denom = 3.0 * p * p - 3.0 * p + 1.0;
    worst_closed = std::max(worst_closed, std::fabs(ro.structural[0] - p * p * p / denom));
    worst_closed = std::max(
        worst_closed,
        std::fabs(rd.structural[0] - std::pow(p, 4) / std::pow(1.0 - 2.0 * p, 2)));
    worst_closed = std::max(
        worst_closed, std::fabs(rd.correlative[0] + p * p * (1.0 - p) * (1.0 - p) /
                                                        std::pow(1.0 - 2.0 * p, 2)));
    curves.rows.push_back({p, ro.structural[0], ro.correlative[0], rd.structural[0],
                           rd.correlative[0], *ro.report_entropy});
  }
  rep.tables.push_back(std::move(curves));
  rep.golden("closed_forms_worst_error", worst_closed, 0.0, 1e-10,
             "structural and correlative index closed forms over the p grid");

  // laplace functional closed form at p = 0.3
  const double p = 0.3;
  auto nu = Measure::product_axes({Axis::bernoulli(p)});
  RandomMeasure N(CountingDistribution::poisson(2.0), nu);
  Fn f = [p](const Point& x) { return (x[0] - p) * (x[0] - p); };
  const double inner = std::exp(-p * p) * (1.0 - p) + std::exp(-(1.0 - p) * (1.0 - p)) * p;
  rep.golden("laplace_functional", laplace_functional(N, f), std::exp(2.0 * (inner - 1.0)), 1e-12,
             "nu e^{-f} closed form");

  // entropy peaks at p = 1/2 (symmetric partition)
  auto nu_half = Measure::product_axes({Axis::bernoulli(0.5)});
  RandomMeasure Nh(CountingDistribution::poisson(2.0), nu_half);
  Fn fh = [](const Point& x) { return (x[0] - 0.5) * (x[0] - 0.5); };
  PartitionSpec cells{{Cell::pred("x=0", [](const Point& x) { return x[0] == 0.0; }),
                       Cell::pred("x=1", [](const Point& x) { return x[0] == 1.0; })}};
  rep.golden("entropy_at_half", *rm_anova(Nh, fh, cells).report_entropy, std::log(2.0), 1e-12,
             "maximum entropy partition");
  return rep;
}

// ---------------------------------------------------------------------------
// Gaussian process regressor on the Ishigami function
// ---------------------------------------------------------------------------

inline Report suite_gpr(std::uint64_t seed = 13, int samples = 100, double gamma = 0.1,
                        double sigma2 = 0.0) {
  Report rep;
  rep.example = "gpr";
  rep.seed = seed;
  const double a = 7.0, b = 0.1;
  Fn g = ishigami_function(a, b);
  auto nu = Measure::uniform_box({-M_PI, -M_PI, -M_PI}, {M_PI, M_PI, M_PI}, 32);

  RngStream rng(seed);
  std::vector<Point> inputs;
  std::vector<double> outputs;
  for (int i = 0; i < samples; ++i) {
    Point x = nu.sample(rng);
    inputs.push_back(x);
    outputs.push_back(g(x));
  }
  const auto model = gpr_fit(inputs, outputs, gamma, sigma2);
  const auto diag = gpr_diagnostics(model, g, nu);
  rep.scalar("mean_g", diag.mean_g);
  rep.scalar("mean_model", diag.mean_model);
  rep.scalar("var_g", diag.var_g);
  rep.scalar("var_model", diag.var_model);
  rep.scalar("mse", diag.mse);
  CheckResult cod;
  cod.name = "cod_above_0.4";
  cod.value = diag.cod;
  cod.target = 0.4;
  cod.tolerance = 0.0;
  cod.pass = diag.cod > 0.4;
  cod.detail = "published run reached 0.7213 with an unpublished draw";
  rep.scalar("cod", diag.cod);
  rep.verdict(std::move(cod));

  // component-function correlation against the closed forms
  Fn model_mean = [&model](const Point& x) { return model.predict_mean(x); };
  const auto hd = hdmr_product(model_mean, nu, 2);
  const double pi4 = std::pow(M_PI, 4);
  auto correlation = [](const std::vector<double>& u, const std::vector<double>& v) {
    const auto su = summarize(u);
    const auto sv = summarize(v);
    double c = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) c += (u[i] - su.mean) * (v[i] - sv.mean);
    c /= u.size();
    return c / std::sqrt(su.variance * sv.variance);
  };
  {
    const auto* c1 = hd.find({0});
    std::vector<double> fitted, closed;
    for (int i = 0; i < 64; ++i) {
      const double x = -M_PI + kTwoPi * (i + 0.5) / 64.0;
      fitted.push_back(hd.component_value(*c1, {x, 0.0, 0.0}));
      closed.push_back((1.0 + b * pi4 / 5.0) * std::sin(x));
    }
    const double corr1 = correlation(fitted, closed);
    CheckResult v;
    v.name = "component_g1_correlation";
    v.value = corr1;
    v.target = 0.8;
    v.pass = corr1 >= 0.8;
    rep.verdict(std::move(v));
  }
  {
    const auto* c2 = hd.find({1});
    std::vector<double> fitted, closed;
    for (int i = 0; i < 64; ++i) {
      const double x = -M_PI + kTwoPi * (i + 0.5) / 64.0;
      fitted.push_back(hd.component_value(*c2, {0.0, x, 0.0}));
      closed.push_back(-a / 2.0 * std::cos(2.0 * x));
    }
    const double corr2 = correlation(fitted, closed);
    CheckResult v;
    v.name = "component_g2_correlation";
    v.value = corr2;
    v.target = 0.8;
    v.pass = corr2 >= 0.8;
    rep.verdict(std::move(v));
  }

  // sensitivity density of the squared deviation functional vs the closed
  // Ishigami curve on coordinate one
  {
    RandomMeasure M(CountingDistribution::poisson(100.0), nu);
    const double mean_model = diag.mean_model;
    Fn fmodel = [&model, mean_model](const Point& x) {
      const double d = model.predict_mean(x) - mean_model;
      return d * d;
    };
    auto dens = sensitivity_density(M, fmodel, {0});
    IshigamiClosedForms cf{a, b};
    const double xi = kTwoPi * cf.fourth_central();
    const double alpha1 = 3.0 * std::pow(a, 4) / 128.0;
    const double beta1 =
        a * a / 60.0 * (5.0 * cf.pi8 * b * b + 18.0 * cf.pi4 * b + 45.0);
    const double gamma1 = std::pow(M_PI, 16) * std::pow(b, 4) / 17.0 +
                          4.0 * std::pow(M_PI, 12) * std::pow(b, 3) / 13.0 +
                          2.0 * cf.pi8 * b * b / 3.0 + 4.0 * cf.pi4 * b / 5.0 + 1.0;
    std::vector<double> fitted, closed;
    ReportTable dens_table{"sensitivity_density_x1", {"x", "fitted", "closed"}, {}};
    for (int i = 0; i < 40; ++i) {
      const double x = -M_PI + kTwoPi * (i + 0.5) / 40.0;
      const double s2 = std::sin(x) * std::sin(x);
      fitted.push_back(dens({x}));
      closed.push_back((alpha1 + beta1 * s2 + gamma1 * s2 * s2) / xi);
      dens_table.rows.push_back({x, fitted.back(), closed.back()});
    }
    rep.tables.push_back(std::move(dens_table));
    const double corr = correlation(fitted, closed);
    CheckResult v;
    v.name = "sensitivity_density_correlation";
    v.value = corr;
    v.target = 0.8;
    v.pass = corr >= 0.8;
    v.detail = "noisy version of the closed-form curve";
    rep.verdict(std::move(v));
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Classifier example
// ---------------------------------------------------------------------------

inline Report suite_classifier(std::uint64_t seed = 42) {
  Report rep;
  rep.example = "classifier";
  rep.seed = seed;
  auto nu = Measure::uniform_box({0.0}, {1.0});

  // binary threshold classifier against a linear label law
  auto label_law = [](const Point& x, int j) { return j == 2 ? x[0] : 1.0 - x[0]; };
  const auto risk = classification_risk_boxes(
      nu, {{{0.0}, {0.5}}, {{0.5}, {1.0}}}, {1, 2}, label_law, 2);
  // E FN_2 = int_0^1/2 x dx = 1/8; E FN_1 = int_1/2^1 (1-x) dx = 1/8
  rep.golden("risk", risk.risk, 0.25, 1e-9, "threshold at the symmetric point");
  rep.golden("binary_s_fp", risk.binary_s_fp, 0.5, 1e-9, "balanced errors");
  rep.golden("index_entropy", risk.index_entropy, std::log(2.0), 1e-9,
             "maximum entropy at balanced error");
  rep.golden("var_dirac", risk.var_dirac(100.0), 100.0 * 0.25 * 0.75, 1e-9,
             "c mu f (1 - mu f)");
  rep.golden("var_orthogonal", risk.var_orthogonal(100.0), 25.0, 1e-9, "c mu f");

  // asymmetric threshold: indices move off the symmetric point
  const auto skew_risk = classification_risk_boxes(
      nu, {{{0.0}, {0.3}}, {{0.3}, {1.0}}}, {1, 2}, label_law, 2);
  rep.scalar("skew_risk", skew_risk.risk);
  rep.scalar("skew_s_fp", skew_risk.binary_s_fp);

  // three classes on a partition of the line
  auto tri_law = [](const Point& x, int j) {
    const double centers[3] = {1.0 / 6.0, 0.5, 5.0 / 6.0};
    double w[3];
    double total = 0.0;
    for (int i = 0; i < 3; ++i) {
      const double d = x[0] - centers[i];
      w[i] = std::exp(-8.0 * d * d);
      total += w[i];
    }
    return w[j - 1] / total;
  };
  const auto tri_risk = classification_risk_boxes(
      nu, {{{0.0}, {1.0 / 3.0}}, {{1.0 / 3.0}, {2.0 / 3.0}}, {{2.0 / 3.0}, {1.0}}}, {1, 2, 3},
      tri_law, 3);
  double index_total = 0.0;
  for (double s : tri_risk.class_index) index_total += s;
  rep.golden("multiclass_index_total", index_total, 1.0, 1e-12, "index normalization");
  rep.scalar("multiclass_risk", tri_risk.risk);
  rep.scalar("multiclass_entropy", tri_risk.index_entropy);

  // maximum entropy manifold: moving (E FP_1, E FN_1) along x + y = E F_1
  // leaves every class index unchanged
  {
    const double ef1 = tri_risk.expected_fp[0] + tri_risk.expected_fn[0];
    const double other1 = tri_risk.expected_fp[1] + tri_risk.expected_fn[1];
    const double other2 = tri_risk.expected_fp[2] + tri_risk.expected_fn[2];
    double worst = 0.0;
    for (double x = 0.1 * ef1; x <= 0.9 * ef1; x += 0.2 * ef1) {
      const double y = ef1 - x;
      const double total = ef1 + other1 + other2;
      const double s1 = (x + y) / total;
      worst = std::max(worst, std::fabs(s1 - tri_risk.class_index[0]));
    }
    CheckResult v;
    v.name = "maximum_entropy_manifold_invariance";
    v.value = worst;
    v.target = 0.0;
    v.tolerance = 1e-12;
    v.pass = worst <= v.tolerance;
    rep.verdict(std::move(v));
  }

  // degenerate: a perfect classifier has no decomposition
  auto exact_law = [](const Point& x, int j) {
    const int actual = x[0] > 0.5 ? 2 : 1;
    return actual == j ? 1.0 : 0.0;
  };
  bool degenerate_raised = false;
  try {
    classification_risk_boxes(nu, {{{0.0}, {0.5}}, {{0.5}, {1.0}}}, {1, 2}, exact_law, 2);
  } catch (const DegenerateError&) {
    degenerate_raised = true;
  }
  CheckResult v;
  v.name = "perfect_classifier_degenerate";
  v.pass = degenerate_raised;
  rep.verdict(std::move(v));
  return rep;
}

// ---------------------------------------------------------------------------
// Correlated bivariate polynomial (closed-form fixtures)
// ---------------------------------------------------------------------------

struct CorrPolyClosedForms {
  double rho;
  double denom() const { return 3.0 + rho * (rho + 2.0); }  // Var g
  double var_g1() const {
    return (std::pow(rho, 4) + 4.0 * rho * rho + 1.0) / std::pow(rho * rho + 1.0, 2);
  }
  double cov_g1g2() const {
    return rho * (rho * rho * (rho * (rho + 2.0) + 2.0) + 1.0) / std::pow(rho * rho + 1.0, 2);
  }
  double var_g12() const {
    return std::pow(1.0 - rho * rho, 2) / (rho * rho + 1.0);
  }
  double s1a() const { return var_g1() / denom(); }
  double s1b() const { return cov_g1g2() / denom(); }
  double s12a() const { return var_g12() / denom(); }
  double effective_dim() const {
    return 2.0 * (std::pow(rho, 4) + std::pow(rho, 3) + rho * rho + rho + 2.0) /
           ((rho * rho + 1.0) * denom());
  }
  double g1(double x) const { return x + rho / (rho * rho + 1.0) * (x * x - 1.0); }
  double g12(double x1, double x2) const {
    return (rho * rho * x1 * x2 - rho * (x1 * x1 + x2 * x2 - 1.0) + x1 * x2 -
            std::pow(rho, 3)) /
           (rho * rho + 1.0);
  }
};

inline Report suite_corrpoly(std::uint64_t seed = 42) {
  Report rep;
  rep.example = "corrpoly";
  rep.seed = seed;
  auto g = [](const Point& x) { return 1.0 + x[0] + x[1] + x[0] * x[1]; };

  ReportTable curve{"indices", {"rho", "s1a", "s1b", "s12a", "ed", "entropy"}, {}};
  double worst_identity = 0.0;
  for (int i = 0; i <= 40; ++i) {
    const double rho = -0.95 + 1.9 * i / 40.0;
    CorrPolyClosedForms cf{rho};
    const double total = 2.0 * cf.s1a() + 2.0 * cf.s1b() + cf.s12a();
    worst_identity = std::max(worst_identity, std::fabs(total - 1.0));
    const double p1 = 2.0 * (cf.s1a() + cf.s1b());
    const double p2 = cf.s12a();
    curve.rows.push_back({rho, cf.s1a(), cf.s1b(), cf.s12a(), cf.effective_dim(),
                          entropy({p1, p2})});
  }
  rep.tables.push_back(std::move(curve));
  {
    CheckResult v;
    v.name = "index identity sum to one on the rho grid";
    v.value = worst_identity;
    v.target = 0.0;
    v.tolerance = 1e-10;
    v.pass = worst_identity <= v.tolerance;
    rep.verdict(std::move(v));
  }

  // quadrature validation at a handful of rho values
  for (double rho : {-0.6, -0.106, 0.0, 0.4, 0.8}) {
    CorrPolyClosedForms cf{rho};
    auto nu = Measure::gaussian_nd({0.0, 0.0}, {{1.0, rho}, {rho, 1.0}}, 32);
    const double mean = nu.integrate(g);
    const double var = nu.integrate([&](const Point& x) {
      const double d = g(x) - mean;
      return d * d;
    });
    rep.golden("var_g rho=" + format_number(rho), var, cf.denom(), 1e-8,
               "index denominator 3 + rho(rho+2)");
    // decomposition: Var g1 + Var g2 + 2 Cov + Var g12 by quadrature of the
    // printed component functions
    const double vg1 = nu.integrate([&](const Point& x) {
      const double v = cf.g1(x[0]);
      return v * v;
    });
    const double cg = nu.integrate([&](const Point& x) { return cf.g1(x[0]) * cf.g1(x[1]); });
    const double vg12 = nu.integrate([&](const Point& x) {
      const double v = cf.g12(x[0], x[1]);
      return v * v;
    });
    rep.golden("var_g1 rho=" + format_number(rho), vg1, cf.var_g1(), 1e-8, "printed form");
    rep.golden("cov_g1g2 rho=" + format_number(rho), cg, cf.cov_g1g2(), 1e-8, "printed form");
    rep.golden("var_g12 rho=" + format_number(rho), vg12, cf.var_g12(), 1e-8, "printed form");
    rep.golden("decomposition rho=" + format_number(rho), 2.0 * vg1 + 2.0 * cg + vg12,
               cf.denom(), 1e-7, "variance decomposition");
    // the printed components plus g0 reconstruct g exactly
    RngStream rng(seed);
    double worst = 0.0;
    for (int k = 0; k < 50; ++k) {
      const double x1 = rng.normal(), x2 = rng.normal();
      const double rec = (1.0 + rho) + cf.g1(x1) + cf.g1(x2) + cf.g12(x1, x2);
      worst = std::max(worst, std::fabs(rec - g({x1, x2})));
    }
    rep.golden("reconstruction rho=" + format_number(rho), worst, 0.0, 1e-10, "exact identity");
    // fourth central moment closed form
    const double f2 = nu.integrate([&](const Point& x) {
      const double d = g(x) - mean;
      return d * d * d * d;
    });
    rep.golden("nu_f2 rho=" + format_number(rho), f2,
               3.0 * rho * (rho * (3.0 * rho * (rho + 4.0) + 46.0) + 36.0) + 57.0, 1e-6,
               "printed second moment of f");
  }

  // local extremum of the effective dimension near rho = -0.106
  {
    double best_rho = 0.0, best = -1.0;
    for (double rho = -0.3; rho <= 0.1; rho += 0.002) {
      CorrPolyClosedForms cf{rho};
      if (cf.effective_dim() > best) {
        best = cf.effective_dim();
        best_rho = rho;
      }
    }
    CheckResult v;
    v.name = "effective_dimension_extremum";
    v.value = best_rho;
    v.target = -0.106;
    v.tolerance = 0.02;
    v.pass = std::fabs(best_rho + 0.106) <= v.tolerance;
    rep.verdict(std::move(v));
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Graph property: spectral gap of the Erdos-Renyi graph Laplacian
// ---------------------------------------------------------------------------

/// Fiedler value (second-smallest Laplacian eigenvalue) for every graph on
/// n_vertices, indexed by the edge-set bitmask; the empty graph is zero.
inline std::vector<double> all_spectral_gaps(int n_vertices) {
  const int m = n_vertices * (n_vertices - 1) / 2;
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n_vertices; ++i)
    for (int j = i + 1; j < n_vertices; ++j) edges.emplace_back(i, j);
  std::vector<double> gaps(1u << m, 0.0);
  for (std::size_t mask = 1; mask < gaps.size(); ++mask) {
    Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(n_vertices, n_vertices);
    for (int e = 0; e < m; ++e) {
      if (mask & (1u << e)) {
        const auto [i, j] = edges[e];
        lap(i, i) += 1.0;
        lap(j, j) += 1.0;
        lap(i, j) -= 1.0;
        lap(j, i) -= 1.0;
      }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(lap);
    gaps[mask] = std::max(0.0, es.eigenvalues()(1));
  }
  return gaps;
}

inline Report suite_graph(std::uint64_t seed = 42, int n_vertices = 5) {
  Report rep;
  rep.example = "graph";
  rep.seed = seed;
  const int m = n_vertices * (n_vertices - 1) / 2;
  const auto gaps = all_spectral_gaps(n_vertices);
  Fn g = [&gaps, m](const Point& x) {
    std::size_t mask = 0;
    for (int i = 0; i < m; ++i)
      if (x[i] != 0.0) mask |= 1u << i;
    return gaps[mask];
  };

  ReportTable curve{"mean_var_entropy", {"p", "mean", "var", "hdmr_entropy"}, {}};
  ReportTable rm_curve{"rm_entropy", {"p", "coordinate_entropy_orth"}, {}};
  for (double p : {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9}) {
    auto nu = Measure::bernoulli_product(p, m);
    const auto model = hdmr_product(g, nu);
    double index_total = 0.0;
    std::vector<double> indices;
    for (const auto& c : model.components) {
      index_total += model.index(c);
      indices.push_back(std::max(0.0, model.index(c)));
    }
    if (p == 0.5) {
      CheckResult v;
      v.name = "exact hdmr index total at p=0.5";
      v.value = index_total;
      v.target = 1.0;
      v.tolerance = 1e-10;
      v.pass = std::fabs(index_total - 1.0) <= v.tolerance;
      rep.verdict(std::move(v));
    }
    double norm = 0.0;
    for (double s : indices) norm += s;
    for (double& s : indices) s /= norm;
    curve.rows.push_back({p, model.g0, model.total_variance, entropy(indices)});

    // coordinate partition RM-ANOVA, orthogonal kappa
    RandomMeasure N(CountingDistribution::poisson(10.0), nu);
    const double mean_g = model.g0;
    Fn f = [&g, mean_g](const Point& x) {
      const double d = g(x) - mean_g;
      return d * d;
    };
    PartitionSpec cells{{Cell::pred("x1=0", [](const Point& x) { return x[0] == 0.0; }),
                         Cell::pred("x1=1", [](const Point& x) { return x[0] != 0.0; })}};
    const auto r = rm_anova(N, f, cells);
    rm_curve.rows.push_back({p, *r.report_entropy});
    if (p == 0.5) {
      CheckResult v;
      v.name = "orthogonal structural indices sum to one at p=0.5";
      v.value = r.total_structural;
      v.target = 1.0;
      v.tolerance = 1e-10;
      v.pass = std::fabs(r.total_structural - 1.0) <= v.tolerance;
      rep.verdict(std::move(v));
      // Dirac variant: defective totals summing to one
      RandomMeasure Nd(CountingDistribution::dirac(10), nu);
      const auto rd = rm_anova(Nd, f, cells);
      CheckResult v2;
      v2.name = "dirac totals sum to one at p=0.5";
      v2.value = rd.total_structural + rd.total_correlative;
      v2.target = 1.0;
      v2.tolerance = 1e-9;
      v2.pass = std::fabs(v2.value - 1.0) <= v2.tolerance;
      rep.verdict(std::move(v2));
    }
  }
  rep.tables.push_back(std::move(curve));
  rep.tables.push_back(std::move(rm_curve));

  // p = 0: the empty graph is almost sure, Var g = 0, degenerate indices
  {
    auto nu0 = Measure::bernoulli_product(0.0, m);
    RandomMeasure N0(CountingDistribution::poisson(10.0), nu0);
    bool degenerate_raised = false;
    try {
      PartitionSpec cells{{Cell::pred("x1=0", [](const Point& x) { return x[0] == 0.0; }),
                           Cell::pred("x1=1", [](const Point& x) { return x[0] != 0.0; })}};
      rm_anova(N0, g, cells);
    } catch (const DegenerateError&) {
      degenerate_raised = true;
    } catch (const DomainError&) {
      degenerate_raised = true;  // partition cover fails first on the atom
    }
    CheckResult v;
    v.name = "p=0 degenerate variance path";
    v.pass = degenerate_raised;
    rep.verdict(std::move(v));
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Ising magnetization field on the 2 x 2 lattice
// ---------------------------------------------------------------------------

struct IsingModel {
  int n = 4;  // spins
  std::vector<std::pair<int, int>> bonds = {{0, 1}, {2, 3}, {0, 2}, {1, 3}};
  std::vector<std::vector<int>> states;  // all spin assignments in {-1,1}^4
  std::vector<double> energy;

  IsingModel() {
    for (int mask = 0; mask < 16; ++mask) {
      std::vector<int> s(4);
      for (int i = 0; i < 4; ++i) s[i] = (mask >> i) & 1 ? 1 : -1;
      double h = 0.0;
      for (const auto& [i, j] : bonds) h -= s[i] * s[j];
      states.push_back(std::move(s));
      energy.push_back(h);
    }
  }

  std::vector<double> boltzmann(double beta) const {
    std::vector<double> w(16);
    double z = 0.0;
    for (int k = 0; k < 16; ++k) {
      w[k] = std::exp(-beta * energy[k]);
      z += w[k];
    }
    for (double& v : w) v /= z;
    return w;
  }

  double magnetization(int k) const {
    double s = 0.0;
    for (int v : states[k]) s += v;
    return s / 4.0;
  }
};

inline Report suite_ising(std::uint64_t seed = 42) {
  Report rep;
  rep.example = "ising";
  rep.seed = seed;
  IsingModel ising;
  auto nu = Measure::uniform_box({-1.0}, {1.0});

  // kernel k(x, y) = (x - g(y))^2 with closed first moment g^2(y) + 1/3
  double worst_first = 0.0, worst_second = 0.0;
  for (int y = 0; y < 16; ++y) {
    const double gy = ising.magnetization(y);
    const double nf = nu.integrate([gy](const Point& x) {
      const double d = x[0] - gy;
      return d * d;
    });
    worst_first = std::max(worst_first, std::fabs(nf - (gy * gy + 1.0 / 3.0)));
    for (int z = 0; z < 16; ++z) {
      const double gz = ising.magnetization(z);
      const double cross = nu.integrate([gy, gz](const Point& x) {
        const double dy = x[0] - gy;
        const double dz = x[0] - gz;
        return dy * dy * dz * dz;
      });
      const double closed = (5.0 * gy * gy * (3.0 * gz * gz + 1.0) + 20.0 * gy * gz +
                             5.0 * gz * gz + 3.0) /
                            15.0;
      worst_second = std::max(worst_second, std::fabs(cross - closed));
    }
  }
  rep.golden("first_moment_closed_form", worst_first, 0.0, 1e-12, "nu f_y = g^2(y) + 1/3");
  rep.golden("second_moment_closed_form", worst_second, 0.0, 1e-12, "printed nu(f_y f_z)");

  // Boltzmann averaging and the averaged test function f_beta
  ReportTable ztab{"boltzmann", {"beta", "z", "mean_magnetization", "nu_exp_minus_f_beta"}, {}};
  for (double beta : {0.2, 0.5, 1.0}) {
    const auto w = ising.boltzmann(beta);
    double z = 0.0;
    for (int k = 0; k < 16; ++k) z += std::exp(-beta * ising.energy[k]);
    double mag = 0.0;
    for (int k = 0; k < 16; ++k) mag += w[k] * ising.magnetization(k);
    const double laplace = nu.integrate([&](const Point& x) {
      double fb = 0.0;
      for (int k = 0; k < 16; ++k) {
        const double d = x[0] - ising.magnetization(k);
        fb += w[k] * d * d;
      }
      return std::exp(-fb);
    });
    ztab.rows.push_back({beta, z, mag, laplace});
    if (beta == 1.0)
      rep.golden("zero_magnetization", mag, 0.0, 1e-12, "spin-flip symmetry of the lattice");
  }
  rep.tables.push_back(std::move(ztab));

  // covariance grids over the sixteen states for orthogonal and Dirac kappa
  for (bool dirac : {false, true}) {
    const double c = 1.0;
    const double defect = dirac ? -c : 0.0;
    ReportTable grid{dirac ? "cov_dirac" : "cov_orthogonal", {"y", "z", "C"}, {}};
    for (int y = 0; y < 16; ++y)
      for (int z = 0; z < 16; ++z) {
        const double gy = ising.magnetization(y);
        const double gz = ising.magnetization(z);
        const double cross = (5.0 * gy * gy * (3.0 * gz * gz + 1.0) + 20.0 * gy * gz +
                              5.0 * gz * gz + 3.0) /
                             15.0;
        const double mean_y = gy * gy + 1.0 / 3.0;
        const double mean_z = gz * gz + 1.0 / 3.0;
        grid.rows.push_back({static_cast<double>(y), static_cast<double>(z),
                             c * cross + defect * mean_y * mean_z});
      }
    rep.tables.push_back(std::move(grid));
  }
  return rep;
}

}  // namespace rmuq
