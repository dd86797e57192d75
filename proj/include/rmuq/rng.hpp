// Deterministic random number streams and standard samplers.
//
// All sampling in rmuq flows through RngStream so that a (base seed,
// replicate index) pair fully determines every draw, independent of worker
// count. Replicate seeds are derived with a splitmix64-style hash.
#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "rmuq/errors.hpp"

namespace rmuq {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Seed for replicate `index` of a run with `base` seed.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
  return splitmix64(base ^ splitmix64(index + 0x632be59bd9b4e019ULL));
}

// xoshiro256** engine seeded via splitmix64. Self-contained so draw
// sequences do not depend on the standard library implementation.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) {
    std::uint64_t s = seed;
    for (auto& w : state_) {
      s = splitmix64(s);
      w = s;
    }
    has_normal_ = false;
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  // Uniform on (0,1): strictly positive, strictly below 1.
  double uniform() {
    const double u = (next_u64() >> 11) * 0x1.0p-53;
    return u > 0.0 ? u : 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Standard normal via Box-Muller (pair cached).
  double normal() {
    if (has_normal_) {
      has_normal_ = false;
      return cached_normal_;
    }
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 6.283185307179586476925286766559 * u2;
    cached_normal_ = r * std::sin(a);
    has_normal_ = true;
    return r * std::cos(a);
  }

  double exponential(double rate) { return -std::log(uniform()) / rate; }

  // Integer uniform on {lo, ..., hi}.
  long long uniform_int(long long lo, long long hi) {
    const long long span = hi - lo + 1;
    long long k = static_cast<long long>(uniform() * static_cast<double>(span));
    if (k >= span) k = span - 1;
    return lo + k;
  }

  // Marsaglia-Tsang; shape > 0, unit scale.
  double gamma(double shape) {
    if (shape < 1.0) {
      const double u = uniform();
      return gamma(shape + 1.0) * std::pow(u, 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
      double x, v;
      do {
        x = normal();
        v = 1.0 + c * x;
      } while (v <= 0.0);
      v = v * v * v;
      const double u = uniform();
      if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
      if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
    }
  }

  long long poisson(double lambda) {
    if (lambda <= 0.0) return 0;
    if (lambda < 30.0) return poisson_knuth(lambda);
    return poisson_ptrs(lambda);
  }

  long long binomial(long long n, double p) {
    if (n <= 0 || p <= 0.0) return 0;
    if (p >= 1.0) return n;
    // Recursive beta splitting keeps the draw count O(log n).
    long long count = 0;
    while (n > 32) {
      const long long i = (n + 1) / 2;
      const double x = beta(static_cast<double>(i), static_cast<double>(n - i + 1));
      if (x <= p) {
        count += i;
        n -= i;
        p = (p - x) / (1.0 - x);
      } else {
        n = i - 1;
        p = p / x;
      }
    }
    for (long long j = 0; j < n; ++j)
      if (uniform() < p) ++count;
    return count;
  }

  // Negative binomial with mean r p/(1-p): gamma-Poisson mixture.
  long long negative_binomial(double r, double p) {
    const double lambda = gamma(r) * p / (1.0 - p);
    return poisson(lambda);
  }

  double beta(double a, double b) {
    const double x = gamma(a);
    const double y = gamma(b);
    return x / (x + y);
  }

  // Zipf with pmf proportional to k^-a on {1,2,...}, a > 1 (Devroye).
  long long zipf(double a) {
    const double b = std::pow(2.0, a - 1.0);
    for (;;) {
      const double u = uniform();
      const double v = uniform();
      const double x = std::floor(std::pow(u, -1.0 / (a - 1.0)));
      if (x < 1.0 || x > 9.007199254740992e15) continue;
      const double t = std::pow(1.0 + 1.0 / x, a - 1.0);
      if (v * x * (t - 1.0) / (b - 1.0) <= t / b) return static_cast<long long>(x);
    }
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  long long poisson_knuth(double lambda) {
    const double limit = std::exp(-lambda);
    long long k = 0;
    double prod = uniform();
    while (prod > limit) {
      ++k;
      prod *= uniform();
    }
    return k;
  }

  // Transformed rejection with squeeze (Hoermann's PTRS), exact for large
  // lambda.
  long long poisson_ptrs(double lambda) {
    const double slam = std::sqrt(lambda);
    const double loglam = std::log(lambda);
    const double b = 0.931 + 2.53 * slam;
    const double a = -0.059 + 0.02483 * b;
    const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
    const double vr = 0.9277 - 3.6224 / (b - 2.0);
    for (;;) {
      const double u = uniform() - 0.5;
      const double v = uniform();
      const double us = 0.5 - std::fabs(u);
      const double kf = std::floor((2.0 * a / us + b) * u + lambda + 0.43);
      if (kf < 0.0) continue;
      if (us >= 0.07 && v <= vr) return static_cast<long long>(kf);
      if (us < 0.013 && v > us) continue;
      const double lhs = std::log(v * inv_alpha / (a / (us * us) + b));
      const double rhs = -lambda + kf * loglam - std::lgamma(kf + 1.0);
      if (lhs <= rhs) return static_cast<long long>(kf);
    }
  }

  std::uint64_t state_[4];
  bool has_normal_;
  double cached_normal_ = 0.0;
};

}  // namespace rmuq
