// Stone-throwing construction: realizations of random counting measures,
// Nf evaluation, replicated empirical statistics, and counting processes.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <thread>
#include <vector>

#include "rmuq/counting.hpp"
#include "rmuq/errors.hpp"
#include "rmuq/measure.hpp"
#include "rmuq/stats.hpp"

namespace rmuq {

/// N = (kappa, nu): a random number K ~ kappa of iid nu-distributed atoms.
struct RandomMeasure {
  CountingDistribution kappa;
  Measure nu;

  RandomMeasure(CountingDistribution k, Measure m) : kappa(std::move(k)), nu(std::move(m)) {
    if (!(kappa.mean() > 0.0)) throw DomainError("RandomMeasure: kappa mean must be positive");
  }
};

/// One draw of N: K atoms stored row-major.
struct Realization {
  long long count = 0;
  int dim = 0;
  std::vector<double> flat;

  const double* point(long long i) const { return flat.data() + static_cast<std::size_t>(i) * dim; }
};

inline Realization realize(const RandomMeasure& N, RngStream& rng) {
  Realization r;
  r.count = N.kappa.sample(rng);
  r.dim = N.nu.dim();
  r.flat.resize(static_cast<std::size_t>(r.count) * r.dim);
  for (long long i = 0; i < r.count; ++i) N.nu.sample_into(rng, r.flat.data() + i * r.dim);
  return r;
}

/// One sample of Nf = sum_i f(X_i); f must be non-negative on the support.
inline double evaluate(const RandomMeasure& N, const Fn& f, RngStream& rng) {
  const long long k = N.kappa.sample(rng);
  Point x(N.nu.dim());
  double total = 0.0;
  for (long long i = 0; i < k; ++i) {
    N.nu.sample_into(rng, x.data());
    const double v = f(x);
    if (v < 0.0) throw DomainError("evaluate: f takes a negative value");
    total += v;
  }
  return total;
}

inline int worker_count_cap(int requested = 0) {
  static int cap = 0;
  if (requested > 0) cap = requested;
  if (cap > 0) return cap;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

/// Run body(r) for r in [0, reps) on up to worker_count_cap() threads.
/// Each index writes only its own slot, so results are independent of the
/// worker count.
template <typename Body>
void parallel_replicates(std::size_t reps, const Body& body) {
  const int workers = std::min<int>(worker_count_cap(), static_cast<int>(std::max<std::size_t>(reps, 1)));
  if (workers <= 1) {
    for (std::size_t r = 0; r < reps; ++r) body(r);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t r = static_cast<std::size_t>(w); r < reps; r += workers) body(r);
    });
  }
  for (auto& t : pool) t.join();
}

struct EmpiricalStats {
  std::size_t reps = 0;
  std::vector<SampleSummary> per_function;       // mean/variance with SEs
  std::vector<std::vector<CovarianceSummary>> cov;  // upper-triangular pairs
};

/// Replicated sampling of (Nf_1, ..., Nf_m). Replicate r uses the stream
/// seeded by derive_seed(base_seed, r); all functions share the realization.
inline EmpiricalStats empirical_stats(const RandomMeasure& N, const std::vector<Fn>& fs,
                                      std::size_t reps, std::uint64_t base_seed) {
  if (reps < 2) throw DomainError("empirical_stats: reps must be at least 2");
  const std::size_t m = fs.size();
  std::vector<std::vector<double>> samples(m, std::vector<double>(reps));
  parallel_replicates(reps, [&](std::size_t r) {
    RngStream rng(derive_seed(base_seed, r));
    const Realization real = realize(N, rng);
    Point x(real.dim);
    std::vector<double> totals(m, 0.0);
    for (long long i = 0; i < real.count; ++i) {
      x.assign(real.point(i), real.point(i) + real.dim);
      for (std::size_t j = 0; j < m; ++j) {
        const double v = fs[j](x);
        if (v < 0.0) throw DomainError("empirical_stats: f takes a negative value");
        totals[j] += v;
      }
    }
    for (std::size_t j = 0; j < m; ++j) samples[j][r] = totals[j];
  });
  EmpiricalStats out;
  out.reps = reps;
  out.per_function.reserve(m);
  for (std::size_t j = 0; j < m; ++j) out.per_function.push_back(summarize(samples[j]));
  out.cov.assign(m, {});
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) out.cov[i].push_back(covariance(samples[i], samples[j]));
  return out;
}

/// Counting process path N_t = #{atoms <= t} over a time grid; the measure
/// must live on the half-line (first coordinate is the time).
inline std::vector<long long> counting_process(const Realization& r,
                                               const std::vector<double>& grid) {
  std::vector<double> times;
  times.reserve(r.count);
  for (long long i = 0; i < r.count; ++i) {
    const double t = r.point(i)[0];
    if (t < 0.0) throw DomainError("counting_process: atom with negative time");
    times.push_back(t);
  }
  std::stable_sort(times.begin(), times.end());
  std::vector<long long> path;
  path.reserve(grid.size());
  for (double t : grid) {
    const auto it = std::upper_bound(times.begin(), times.end(), t);
    path.push_back(static_cast<long long>(it - times.begin()));
  }
  return path;
}

}  // namespace rmuq
