// Canonical random-measure constructions run as verification fixtures:
// each builds the stated representation, then checks the distributional
// identity analytically (transform identities) and by simulation.
#pragma once

#include <cmath>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "rmuq/laplace.hpp"
#include "rmuq/special.hpp"
#include "rmuq/stats.hpp"
#include "rmuq/stc.hpp"

namespace rmuq {

struct CheckResult {
  std::string name;
  bool pass = false;
  double value = 0.0;
  double target = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

struct FixtureReport {
  std::string name;
  std::vector<CheckResult> checks;

  bool all_pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
  void add(std::string check, double value, double target, double tol, std::string detail = "") {
    CheckResult r;
    r.name = std::move(check);
    r.value = value;
    r.target = target;
    r.tolerance = tol;
    r.pass = std::fabs(value - target) <= tol;
    r.detail = std::move(detail);
    checks.push_back(std::move(r));
  }
  void add_bool(std::string check, bool pass, std::string detail = "") {
    CheckResult r;
    r.name = std::move(check);
    r.pass = pass;
    r.value = pass ? 1.0 : 0.0;
    r.target = 1.0;
    r.tolerance = 0.0;
    r.detail = std::move(detail);
    checks.push_back(std::move(r));
  }
  void add_pvalue(std::string check, double p, double level = 0.01) {
    CheckResult r;
    r.name = std::move(check);
    r.value = p;
    r.target = level;
    r.tolerance = 0.0;
    r.pass = p > level;
    r.detail = "p-value above level";
    checks.push_back(std::move(r));
  }
};

namespace detail {

// empirical Laplace transform of a sampler at one alpha, with its SE
struct EmpiricalTransform {
  double value = 0.0;
  double se = 0.0;
};

template <typename Sampler>
EmpiricalTransform empirical_transform(const Sampler& draw, double alpha, std::size_t reps,
                                       std::uint64_t seed) {
  double sum = 0.0, sumsq = 0.0;
  std::vector<double> vals(reps);
  parallel_replicates(reps, [&](std::size_t r) {
    RngStream rng(derive_seed(seed, r));
    vals[r] = std::exp(-alpha * draw(rng));
  });
  for (double v : vals) {
    sum += v;
    sumsq += v * v;
  }
  const double mean = sum / reps;
  const double var = std::max(0.0, sumsq / reps - mean * mean);
  return {mean, std::sqrt(var / reps)};
}

inline double binomial_pmf(long long n, double p, long long k) {
  if (k < 0 || k > n) return 0.0;
  const double logp = std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0) +
                      k * std::log(p) + (n - k) * std::log1p(-p);
  return std::exp(logp);
}

inline double negbin_pmf(double r, double p, long long k) {
  const double logp = std::lgamma(k + r) - std::lgamma(k + 1.0) - std::lgamma(r) +
                      r * std::log1p(-p) + k * std::log(p);
  return std::exp(logp);
}

inline double poisson_pmf(double lambda, long long k) {
  return std::exp(-lambda + k * std::log(lambda) - std::lgamma(k + 1.0));
}

// chi-square GOF of integer draws against a pmf, pooling thin tail cells
template <typename Draw, typename Pmf>
double integer_gof_pvalue(const Draw& draw, const Pmf& pmf, std::size_t reps, std::uint64_t seed,
                          long long kmax) {
  std::vector<double> observed(kmax + 2, 0.0);
  std::vector<double> sample_vals(reps);
  parallel_replicates(reps, [&](std::size_t r) {
    RngStream rng(derive_seed(seed, r));
    sample_vals[r] = static_cast<double>(draw(rng));
  });
  for (double v : sample_vals) {
    const long long k = static_cast<long long>(v);
    observed[std::min(k, kmax + 1)] += 1.0;
  }
  std::vector<double> expected(kmax + 2, 0.0);
  double tail = 1.0;
  for (long long k = 0; k <= kmax; ++k) {
    expected[k] = reps * pmf(k);
    tail -= pmf(k);
  }
  expected[kmax + 1] = reps * std::max(tail, 0.0);
  std::vector<double> obs_m, exp_m;
  double orest = 0.0, erest = 0.0;
  for (std::size_t i = 0; i < expected.size(); ++i) {
    if (expected[i] >= 5.0) {
      obs_m.push_back(observed[i]);
      exp_m.push_back(expected[i]);
    } else {
      orest += observed[i];
      erest += expected[i];
    }
  }
  if (erest > 0.0) {
    obs_m.push_back(orest);
    exp_m.push_back(erest);
  }
  return chi_square_test(obs_m, exp_m);
}

// Logarithmic(p) on {1,2,...} by inverse CDF over a cumulative table.
class LogarithmicLaw {
 public:
  explicit LogarithmicLaw(double p) : p_(p) {
    if (!(p > 0.0 && p < 1.0)) throw DomainError("logarithmic: p must lie in (0,1)");
    const double norm = -1.0 / std::log1p(-p);
    double cum = 0.0;
    double term = norm * p;  // k = 1
    long long k = 1;
    while (cum < 1.0 - 1e-15 && k < 100000) {
      cum += term;
      cdf_.push_back(cum);
      ++k;
      term = term * p * static_cast<double>(k - 1) / static_cast<double>(k);
    }
  }

  long long sample(RngStream& rng) const {
    const double u = rng.uniform();
    const auto it = std::lower_bound(cdf_.begin(), cdf_.end(), u);
    return static_cast<long long>(it - cdf_.begin()) + 1;
  }

  double pgf(double t) const { return std::log1p(-p_ * t) / std::log1p(-p_); }

 private:
  double p_;
  std::vector<double> cdf_;
};

}  // namespace detail

/// Dirac(n) kappa over Bernoulli(p) with f(x) = x gives Nf ~ Binomial(n,p).
inline FixtureReport binomial_construction(long long n, double p, std::size_t reps = 100000,
                                           std::uint64_t seed = 1) {
  FixtureReport rep;
  rep.name = "binomial";
  auto nu = Measure::product_axes({Axis::bernoulli(p)});
  RandomMeasure N(CountingDistribution::dirac(n), nu);
  Fn f = [](const Point& x) { return x[0]; };

  // transform identity: L(alpha f) = (1 - p + p e^{-alpha})^n
  for (double alpha : {0.1, 0.5, 1.0, 2.0, 4.0}) {
    const double lhs = laplace_transform(N, f, {alpha})[0].value;
    const double rhs = std::pow(1.0 - p + p * std::exp(-alpha), static_cast<double>(n));
    rep.add("transform alpha=" + std::to_string(alpha), lhs, rhs, 1e-12);
  }

  if (p == 0.0) {
    RngStream rng(seed);
    bool all_zero = true;
    for (int i = 0; i < 100; ++i) all_zero &= evaluate(N, f, rng) == 0.0;
    rep.add_bool("Nf identically zero at p=0", all_zero);
    return rep;
  }

  auto draw = [&](RngStream& rng) { return static_cast<long long>(evaluate(N, f, rng)); };
  const double pval = detail::integer_gof_pvalue(
      draw, [&](long long k) { return detail::binomial_pmf(n, p, k); }, reps, seed, n);
  rep.add_pvalue("empirical pmf chi-square", pval);
  return rep;
}

/// Binomial(n,p) kappa: Nf equals a sum of n iid zero-inflated variables.
inline FixtureReport zero_inflation_equivalence(long long n, double p, std::size_t reps = 10000,
                                                std::uint64_t seed = 2) {
  FixtureReport rep;
  rep.name = "zero_inflation";
  auto nu = Measure::uniform_box({0.0}, {1.0});
  Fn f = [](const Point& x) { return 1.0 + x[0] * x[0]; };
  RandomMeasure N(CountingDistribution::binomial(n, p), nu);
  const double nuf = nu.integrate(f);

  // both samplers
  auto stc_draw = [&](RngStream& rng) { return evaluate(N, f, rng); };
  auto zsum_draw = [&](RngStream& rng) {
    double total = 0.0;
    Point x(1);
    for (long long i = 0; i < n; ++i) {
      const bool on = rng.uniform() < p;
      nu.sample_into(rng, x.data());
      if (on) total += f(x);
    }
    return total;
  };

  std::vector<double> a(reps), b(reps);
  parallel_replicates(reps, [&](std::size_t r) {
    RngStream rng1(derive_seed(seed, r));
    RngStream rng2(derive_seed(seed ^ 0xabcdef, r));
    a[r] = stc_draw(rng1);
    b[r] = zsum_draw(rng2);
  });
  const auto sa = summarize(a);
  const auto sb = summarize(b);
  rep.add("stc mean = n p nu f", sa.mean, n * p * nuf, 4.0 * sa.mean_se);
  rep.add("zsum mean = n p nu f", sb.mean, n * p * nuf, 4.0 * sb.mean_se);

  // Laplace transforms both equal (1 - p + p nu e^{-alpha f})^n
  for (double alpha : {0.2, 0.5, 1.0, 1.5, 3.0}) {
    const double lhs = laplace_transform(N, f, {alpha})[0].value;
    Fn af = [&f, alpha](const Point& x) { return alpha * f(x); };
    const double inner = integral_exp_neg(nu, af).first;
    const double rhs = std::pow(1.0 - p + p * inner, static_cast<double>(n));
    rep.add("transform alpha=" + std::to_string(alpha), lhs, rhs, 1e-10);
  }

  rep.add_pvalue("two-sample KS", ks_two_sample(a, b));
  return rep;
}

/// Additive Poisson measure with product marks: compound Poisson totals.
inline FixtureReport compound_poisson(double c, double mass_a,
                                      std::size_t reps = 100000, std::uint64_t seed = 3) {
  FixtureReport rep;
  rep.name = "compound_poisson";
  // unit marks: L(A) ~ Poisson(c mu(A))
  {
    auto draw = [&](RngStream& rng) {
      const long long k = rng.poisson(c);
      long long in_a = 0;
      for (long long i = 0; i < k; ++i)
        if (rng.uniform() < mass_a) ++in_a;
      return in_a;
    };
    const double pval = detail::integer_gof_pvalue(
        draw, [&](long long k) { return detail::poisson_pmf(c * mass_a, k); }, reps, seed, 40);
    rep.add_pvalue("unit marks give Poisson(c mu(A))", pval);
  }

  // exponential marks: mean c mu(A) E eta, variance c mu(A) E eta^2
  const double mark_rate = 1.7;
  auto draw_sum = [&](RngStream& rng) {
    const long long k = rng.poisson(c);
    double total = 0.0;
    for (long long i = 0; i < k; ++i)
      if (rng.uniform() < mass_a) total += rng.exponential(mark_rate);
    return total;
  };
  std::vector<double> totals(reps);
  parallel_replicates(reps, [&](std::size_t r) {
    RngStream rng(derive_seed(seed + 1, r));
    totals[r] = draw_sum(rng);
  });
  const auto s = summarize(totals);
  const double e1 = 1.0 / mark_rate;
  const double e2 = 2.0 / (mark_rate * mark_rate);
  rep.add("mean = c mu(A) E eta", s.mean, c * mass_a * e1, 4.0 * s.mean_se);
  rep.add("variance = c mu(A) E eta^2", s.variance, c * mass_a * e2, 4.0 * s.variance_se);

  // analytic transform exp(-c mu(A) (1 - F_eta(alpha))) vs empirical
  for (double alpha : {0.3, 0.8, 1.5}) {
    const double feta = mark_rate / (mark_rate + alpha);
    const double analytic = std::exp(-c * mass_a * (1.0 - feta));
    const auto emp = detail::empirical_transform(draw_sum, alpha, reps / 2, seed + 2);
    rep.add("transform alpha=" + std::to_string(alpha), emp.value, analytic, 4.0 * emp.se);
  }

  // integer marks: pgf form exp(-c mu(A)(1 - phi(alpha))), Poisson(2) marks
  {
    const double mark_mean = 2.0;
    auto draw_int = [&](RngStream& rng) {
      const long long k = rng.poisson(c);
      double total = 0.0;
      for (long long i = 0; i < k; ++i)
        if (rng.uniform() < mass_a) total += static_cast<double>(rng.poisson(mark_mean));
      return total;
    };
    const double alpha_pgf = 0.6;  // E alpha^{L(A)}
    const double phi = std::exp(mark_mean * (alpha_pgf - 1.0));
    const double analytic = std::exp(-c * mass_a * (1.0 - phi));
    const double beta = -std::log(alpha_pgf);
    const auto emp = detail::empirical_transform(draw_int, beta, reps / 2, seed + 3);
    rep.add("integer-mark pgf form", emp.value, analytic, 4.0 * emp.se);
  }

  // additivity: disjoint totals uncorrelated
  std::vector<double> la(reps / 2), lb(reps / 2);
  parallel_replicates(reps / 2, [&](std::size_t r) {
    RngStream rng(derive_seed(seed + 4, r));
    const long long k = rng.poisson(c);
    double ta = 0.0, tb = 0.0;
    for (long long i = 0; i < k; ++i) {
      const double u = rng.uniform();
      const double z = rng.exponential(mark_rate);
      if (u < mass_a)
        ta += z;
      else if (u < 2.0 * mass_a)
        tb += z;
    }
    la[r] = ta;
    lb[r] = tb;
  });
  const auto cv = covariance(la, lb);
  rep.add("additivity: disjoint covariance", cv.covariance, 0.0, 4.0 * cv.se);
  return rep;
}

/// Poisson(r log(1/(1-p))) kappa with Logarithmic(p) marks gives the
/// negative binomial on A.
inline FixtureReport negbin_via_logarithmic(double r, double p, double mass_a,
                                            std::size_t reps = 100000, std::uint64_t seed = 4) {
  FixtureReport rep;
  rep.name = "negbin_logarithmic";
  const double c = r * std::log(1.0 / (1.0 - p));
  detail::LogarithmicLaw marks(p);

  // transform identity at five alpha points:
  // exp(-c mu(A)(1 - phi(alpha))) = ((1-p)/(1-p alpha))^{r mu(A)}
  for (double alpha : {0.1, 0.3, 0.5, 0.7, 0.9}) {
    const double lhs = std::exp(-c * (1.0 - ((1.0 - mass_a) + mass_a * marks.pgf(alpha))) );
    const double rhs = std::pow((1.0 - p) / (1.0 - p * alpha), r * mass_a);
    rep.add("transform identity alpha=" + std::to_string(alpha), lhs, rhs, 1e-10);
  }

  auto draw = [&](RngStream& rng) {
    const long long k = rng.poisson(c);
    long long total = 0;
    for (long long i = 0; i < k; ++i)
      if (rng.uniform() < mass_a) total += marks.sample(rng);
    return total;
  };
  const double pval = detail::integer_gof_pvalue(
      draw, [&](long long k) { return detail::negbin_pmf(r * mass_a, p, k); }, reps, seed, 60);
  rep.add_pvalue("empirical pmf vs negative binomial", pval);

  std::vector<double> xs(reps);
  parallel_replicates(reps, [&](std::size_t rr) {
    RngStream rng(derive_seed(seed + 1, rr));
    xs[rr] = static_cast<double>(draw(rng));
  });
  const auto s = summarize(xs);
  rep.add("mean r mu(A) p/(1-p)", s.mean, r * mass_a * p / (1.0 - p), 4.0 * s.mean_se);

  // p -> 0 degenerates to zero mass at positive counts
  {
    const double tiny = 1e-3;
    detail::LogarithmicLaw tiny_marks(tiny);
    RngStream rng(seed + 2);
    long long positives = 0;
    const double c_tiny = r * std::log(1.0 / (1.0 - tiny));
    for (int i = 0; i < 2000; ++i) {
      const long long k = rng.poisson(c_tiny);
      long long total = 0;
      for (long long j = 0; j < k; ++j)
        if (rng.uniform() < mass_a) total += tiny_marks.sample(rng);
      positives += total > 0 ? 1 : 0;
    }
    rep.add_bool("p->0 smoke: positives rare", positives < 50,
                 std::to_string(positives) + " positive draws of 2000");
  }
  return rep;
}

/// Gamma-limit construction: F(alpha) = ((lambda + e^{-t} alpha)/(lambda+alpha))^{c/t}.
inline FixtureReport gamma_limit(double d, double lambda, double c, double t,
                                 std::size_t reps = 20000, std::uint64_t seed = 5) {
  FixtureReport rep;
  rep.name = "gamma_limit";
  auto F = [lambda](double cc, double tt, double alpha) {
    return std::pow((lambda + std::exp(-tt) * alpha) / (lambda + alpha), cc / tt);
  };
  // exact transform value at the (t=10, c/t=2) pin
  rep.add("F(1) at c/t=2, t=10", F(20.0, 10.0, 1.0),
          std::pow((1.0 + std::exp(-10.0)) / 2.0, 2.0), 1e-12);

  // sup distance to the gamma transform decreases as c grows at fixed c/t=d
  double prev = 1e9;
  bool monotone = true;
  for (double cc : {4.0 * d, 16.0 * d, 64.0 * d}) {
    const double tt = cc / d;
    double sup = 0.0;
    for (double alpha = 0.25; alpha <= 4.0; alpha += 0.25)
      sup = std::max(sup, std::fabs(F(cc, tt, alpha) - std::pow(lambda / (lambda + alpha), d)));
    monotone &= sup < prev;
    prev = sup;
  }
  rep.add_bool("sup distance decreasing in c", monotone);

  // STC at the requested (c, t): empirical mean of Nf within 4 SE of the
  // transform derivative -F'(0) = (c/t)(1 - e^{-t})/lambda
  std::vector<double> xs(reps);
  parallel_replicates(reps, [&](std::size_t r) {
    RngStream rng(derive_seed(seed, r));
    const long long k = rng.poisson(c);
    double total = 0.0;
    for (long long i = 0; i < k; ++i) {
      const double x = rng.uniform(0.0, t);
      const double y = rng.uniform();
      total += std::exp(-x) * std::log(1.0 / y) / lambda;
    }
    xs[r] = total;
  });
  const auto s = summarize(xs);
  const double mean_exact = (c / t) * (1.0 - std::exp(-t)) / lambda;
  rep.add("empirical mean of Nf", s.mean, mean_exact, 4.0 * s.mean_se);
  rep.add_bool("limit mean approaches d/lambda",
               std::fabs(mean_exact - d / lambda) < 2.0 * d / lambda * (1.0 / t + 1e-12));
  return rep;
}

/// Scaled Poisson counting process converging to the Wiener process.
inline FixtureReport wiener_limit(double c, double T, std::size_t reps = 20000,
                                  std::uint64_t seed = 6) {
  FixtureReport rep;
  rep.name = "wiener_limit";
  RandomMeasure N(CountingDistribution::poisson(c), Measure::uniform_box({0.0}, {T}));
  const double scale = std::sqrt(c / T);
  const std::vector<double> grid = {0.3, 0.7, T};
  std::vector<double> n03(reps), n07(reps), nT(reps);
  parallel_replicates(reps, [&](std::size_t r) {
    RngStream rng(derive_seed(seed, r));
    const auto real = realize(N, rng);
    const auto path = counting_process(real, grid);
    n03[r] = (path[0] - 0.3 * c / T) / scale;
    n07[r] = (path[1] - 0.7 * c / T) / scale;
    nT[r] = (path[2] - T * c / T) / scale;
  });
  const auto s03 = summarize(n03);
  const auto s07 = summarize(n07);
  rep.add("E N_0.3 = 0", s03.mean, 0.0, 4.0 * s03.mean_se);
  rep.add("Var N_0.3 = 0.3", s03.variance, 0.3, 4.0 * s03.variance_se);
  rep.add("Var N_0.7 = 0.7", s07.variance, 0.7, 4.0 * s07.variance_se);
  const auto cv = covariance(n03, n07);
  rep.add("Cov(N_0.3, N_0.7) = 0.3", cv.covariance, 0.3, 4.0 * cv.se);
  rep.add_pvalue("Jarque-Bera gaussianity of N_T", jarque_bera(nT));

  // scalar gaussian variant: N = mu + (K - c s^2)/sqrt(c), K ~ Poisson(c s^2)
  const double mu = 1.5, s2 = 0.49;
  std::vector<double> zs(reps);
  parallel_replicates(reps, [&](std::size_t r) {
    RngStream rng(derive_seed(seed + 1, r));
    zs[r] = mu + (rng.poisson(c * s2) - c * s2) / std::sqrt(c);
  });
  const auto sz = summarize(zs);
  rep.add("gaussian variant mean", sz.mean, mu, 4.0 * sz.mean_se);
  rep.add("gaussian variant variance", sz.variance, s2, 4.0 * sz.variance_se);
  rep.add_pvalue("gaussian variant Jarque-Bera", jarque_bera(zs));
  return rep;
}

/// Mean-squared error with independent additive gaussian noise: the
/// denoising transform pair and the chi-square special case.
inline FixtureReport denoise_transform(double sigma2, std::size_t reps = 50000,
                                       std::uint64_t seed = 7) {
  FixtureReport rep;
  rep.name = "denoise";
  // worked example: g(x) = x on Uniform[0,1], Q = delta_{1/2}, sigma^2 = 1
  auto Fh = [](double alpha) {
    // (nu x Q) e^{-alpha h}, h = (x - 1/2)^2
    return std::sqrt(M_PI / alpha) * std::erf(0.5 * std::sqrt(alpha));
  };
  auto Ff_closed = [](double alpha) {
    return std::sqrt(M_PI / alpha) * std::erf(0.5 * std::sqrt(alpha / (1.0 + 2.0 * alpha)));
  };
  for (double alpha : {0.3, 0.7, 1.0, 2.0, 5.0}) {
    const double via_fh = Fh(alpha / (1.0 + 2.0 * alpha)) / std::sqrt(1.0 + 2.0 * alpha);
    rep.add("forward map alpha=" + std::to_string(alpha), via_fh, Ff_closed(alpha), 1e-12);
    // inverse direction
    const double back = std::sqrt(1.0 + 2.0 * alpha) * Ff_closed(alpha);
    rep.add("inverse map alpha=" + std::to_string(alpha), back,
            Fh(alpha / (1.0 + 2.0 * alpha)), 1e-12);
    // numeric quadrature for (nu x Q x xi) e^{-alpha f}; the sharpened
    // gaussian needs the denser Hermite rule
    auto nu = Measure::uniform_box({0.0}, {1.0});
    auto xi = Measure::gaussian1d(0.0, 1.0, 200);
    const double numeric = nu.integrate([&](const Point& x) {
      return xi.integrate([&](const Point& z) {
        const double v = x[0] + z[0] - 0.5;
        return std::exp(-alpha * v * v);
      });
    });
    rep.add("quadrature vs closed form alpha=" + std::to_string(alpha), numeric,
            Ff_closed(alpha), 1e-10);
  }

  // sigma^2 = 0 is the identity map
  rep.add("sigma2=0 identity", Fh(1.0) / std::sqrt(1.0), Fh(1.0), 1e-15);

  // chi-square remark: h = 0, sigma^2 = 1, Dirac(c): F = (1+2 alpha)^{-c/2}
  const long long cdof = 4;
  for (double alpha : {0.2, 0.5, 1.0, 2.0, 4.0}) {
    const double ff = 1.0 / std::sqrt(1.0 + 2.0 * alpha);
    const double lhs = std::pow(ff, static_cast<double>(cdof));
    rep.add("chi-square alpha=" + std::to_string(alpha), lhs,
            std::pow(1.0 + 2.0 * alpha, -0.5 * cdof), 1e-10);
  }

  // moment identities under simulation, kappa = Poisson(3)
  const double c = 3.0;
  auto nu = Measure::uniform_box({0.0}, {1.0});
  const double nuq_h = nu.integrate([](const Point& x) {
    const double v = x[0] - 0.5;
    return v * v;
  });
  const double nuq_h2 = nu.integrate([](const Point& x) {
    const double v = x[0] - 0.5;
    return v * v * v * v;
  });
  std::vector<double> xs(reps);
  parallel_replicates(reps, [&](std::size_t r) {
    RngStream rng(derive_seed(seed, r));
    const long long k = rng.poisson(c);
    double total = 0.0;
    for (long long i = 0; i < k; ++i) {
      const double x = rng.uniform();
      const double z = std::sqrt(sigma2) * rng.normal();
      const double v = x + z - 0.5;
      total += v * v;
    }
    xs[r] = total;
  });
  const auto s = summarize(xs);
  const double mean_expect = c * (sigma2 + nuq_h);
  const double var_expect =
      c * (3.0 * sigma2 * sigma2 + 6.0 * sigma2 * nuq_h + nuq_h2);  // orthogonal kappa
  rep.add("denoised mean identity", s.mean, mean_expect, 4.0 * s.mean_se);
  rep.add("denoised variance identity", s.variance, var_expect, 4.0 * s.variance_se);
  return rep;
}

struct ClusterConfig {
  bool dirac_parent = false;     // Poisson(20) otherwise
  bool dirac_offspring = false;  // Poisson(10) otherwise
  double parent_mean = 20.0;
  double offspring_mean = 10.0;
  double sigma = 0.01;
  std::size_t reps = 100000;
  std::uint64_t seed = 8;
};

struct ClusterAnalytic {
  double mean_total = 0.0;
  double var_total = 0.0;
  double mean_quadrant = 0.0;
  double var_quadrant = 0.0;
};

/// (E Mf, Var Mf) for f = y(E) and f = y(A) from the cluster proposition:
/// E = c nu c_bullet, Var = c nu(c^2 + d^2) + (delta^2 - c)(nu c_bullet)^2,
/// and the quadrant analogues with a_bullet averaged to 1/4.
inline ClusterAnalytic cluster_analytic(const ClusterConfig& cfg) {
  const double c = cfg.parent_mean;
  const double cx = cfg.offspring_mean;
  const double dx2 = cfg.dirac_offspring ? 0.0 : cx;
  const double defect = cfg.dirac_parent ? -c : 0.0;
  const double nu_a = 0.25;
  ClusterAnalytic out;
  out.mean_total = c * cx;
  out.var_total = c * (cx * cx + dx2) + defect * cx * cx;
  out.mean_quadrant = c * cx * nu_a;
  out.var_quadrant = c * ((cx * cx + dx2) * nu_a) + defect * (cx * nu_a) * (cx * nu_a);
  return out;
}

/// Nested cluster process: parent centers uniform on the unit square,
/// offspring gaussian around each center, A the lower-left quadrant
/// (-inf, 1/2]^2 with nu a_bullet = 1/4.
inline FixtureReport cluster_process(const ClusterConfig& cfg) {
  FixtureReport rep;
  rep.name = cfg.dirac_parent ? "cluster_dirac" : "cluster_poisson";
  const double c = cfg.parent_mean;
  const double cx = cfg.offspring_mean;
  const auto analytic = cluster_analytic(cfg);
  const double mean_E = analytic.mean_total;
  const double var_E = analytic.var_total;
  const double mean_A = analytic.mean_quadrant;
  const double var_A = analytic.var_quadrant;

  // simulation
  std::vector<double> tot(cfg.reps), in_a(cfg.reps);
  parallel_replicates(cfg.reps, [&](std::size_t r) {
    RngStream rng(derive_seed(cfg.seed, r));
    const long long k = cfg.dirac_parent ? static_cast<long long>(c) : rng.poisson(c);
    double total = 0.0, quad = 0.0;
    for (long long i = 0; i < k; ++i) {
      const double ux = rng.uniform();
      const double uy = rng.uniform();
      const long long m = cfg.dirac_offspring ? static_cast<long long>(cx) : rng.poisson(cx);
      total += static_cast<double>(m);
      for (long long j = 0; j < m; ++j) {
        const double px = ux + cfg.sigma * rng.normal();
        const double py = uy + cfg.sigma * rng.normal();
        if (px <= 0.5 && py <= 0.5) quad += 1.0;
      }
    }
    tot[r] = total;
    in_a[r] = quad;
  });
  const auto st = summarize(tot);
  const auto sa = summarize(in_a);
  rep.add("empirical mean f=y(E)", st.mean, mean_E, 4.0 * st.mean_se);
  rep.add("empirical variance f=y(E)", st.variance, var_E, 4.0 * st.variance_se);
  rep.add("empirical mean f=y(A)", sa.mean, mean_A, 4.0 * sa.mean_se);
  rep.add("empirical variance f=y(A)", sa.variance, var_A, 4.0 * sa.variance_se);

  // Laplace transform F(alpha) = psi(nu phi_bullet(beta)) for f = y(E)
  if (!cfg.dirac_offspring) {
    for (double alpha : {0.05, 0.1, 0.2}) {
      const double beta = std::exp(-alpha);
      const double phi = std::exp(cx * (beta - 1.0));  // Poisson offspring pgf
      const double analytic = cfg.dirac_parent ? std::pow(phi, c) : std::exp(c * (phi - 1.0));
      double sum = 0.0;
      for (std::size_t r = 0; r < cfg.reps; ++r) sum += std::exp(-alpha * tot[r]);
      const double emp = sum / cfg.reps;
      double se = 0.0;
      for (std::size_t r = 0; r < cfg.reps; ++r)
        se += (std::exp(-alpha * tot[r]) - emp) * (std::exp(-alpha * tot[r]) - emp);
      se = std::sqrt(se / cfg.reps / cfg.reps);
      rep.add("laplace transform alpha=" + std::to_string(alpha), emp, analytic, 4.0 * se);
    }
    // restricted transform for f = y(A): psi(nu phi^A(beta)) with
    // phi^A(beta) = phi(a(u) beta + 1 - a(u)) integrated over centers
    for (double alpha : {0.1, 0.3}) {
      const double beta = std::exp(-alpha);
      auto u2 = Measure::uniform_box({0.0, 0.0}, {1.0, 1.0});
      const double inner = u2.integrate([&](const Point& u) {
        const double a_u = normal_cdf((0.5 - u[0]) / cfg.sigma) * normal_cdf((0.5 - u[1]) / cfg.sigma);
        return std::exp(cx * ((a_u * beta + 1.0 - a_u) - 1.0));
      });
      const double analytic = cfg.dirac_parent
                                  ? std::pow(inner, c)
                                  : std::exp(c * (inner - 1.0));
      double sum = 0.0;
      for (std::size_t r = 0; r < cfg.reps; ++r) sum += std::exp(-alpha * in_a[r]);
      const double emp = sum / cfg.reps;
      double se = 0.0;
      for (std::size_t r = 0; r < cfg.reps; ++r)
        se += (std::exp(-alpha * in_a[r]) - emp) * (std::exp(-alpha * in_a[r]) - emp);
      se = std::sqrt(se / cfg.reps / cfg.reps);
      rep.add("restricted transform alpha=" + std::to_string(alpha), emp, analytic, 4.0 * se);
    }
  }
  return rep;
}

}  // namespace rmuq
