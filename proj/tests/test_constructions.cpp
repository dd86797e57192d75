#include <catch2/catch_amalgamated.hpp>

#include "rmuq/constructions.hpp"

using namespace rmuq;

namespace {
void require_all(const FixtureReport& rep) {
  for (const auto& c : rep.checks) {
    INFO(rep.name << " / " << c.name << ": value " << c.value << " target " << c.target
                  << " tol " << c.tolerance << " " << c.detail);
    CHECK(c.pass);
  }
}
}  // namespace

TEST_CASE("binomial construction") {
  require_all(binomial_construction(6, 0.35, 100000, 11));
  require_all(binomial_construction(4, 0.0, 1000, 12));
}

TEST_CASE("zero inflation equivalence") { require_all(zero_inflation_equivalence(8, 0.4, 10000, 13)); }

TEST_CASE("compound poisson") { require_all(compound_poisson(5.0, 0.3, 100000, 14)); }

TEST_CASE("negative binomial via logarithmic marks") {
  require_all(negbin_via_logarithmic(2.0, 0.5, 1.0, 100000, 15));
  require_all(negbin_via_logarithmic(1.5, 0.4, 0.6, 100000, 16));
}

TEST_CASE("gamma limit") { require_all(gamma_limit(2.0, 1.0, 1000.0, 500.0, 20000, 17)); }

TEST_CASE("wiener limit") { require_all(wiener_limit(10000.0, 1.0, 20000, 18)); }

TEST_CASE("denoising") { require_all(denoise_transform(1.0, 50000, 19)); }

TEST_CASE("cluster processes: poisson and dirac parents") {
  ClusterConfig poisson_cfg;
  poisson_cfg.reps = 30000;
  const auto pa = cluster_analytic(poisson_cfg);
  CHECK(pa.mean_total == 200.0);
  CHECK(pa.var_total == 2200.0);
  CHECK(pa.mean_quadrant == 50.0);
  CHECK(pa.var_quadrant == 550.0);
  require_all(cluster_process(poisson_cfg));

  ClusterConfig dirac_cfg;
  dirac_cfg.dirac_parent = true;
  dirac_cfg.reps = 30000;
  const auto da = cluster_analytic(dirac_cfg);
  // the proposition's delta^2 = 0 substitution, not the printed table row
  CHECK(da.var_total == 200.0);
  CHECK(da.var_quadrant == 425.0);
  require_all(cluster_process(dirac_cfg));

  // dirac offspring collapse the per-cluster variance term
  ClusterConfig dd;
  dd.dirac_offspring = true;
  dd.reps = 20000;
  const auto dda = cluster_analytic(dd);
  CHECK(dda.var_total == 2000.0);
  require_all(cluster_process(dd));
}
