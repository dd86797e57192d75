// Counting distributions kappa: probability generating functions, moments,
// orthogonality, restriction (thinning) maps, superposition, and the
// enumeration of orthogonal dice.
#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "rmuq/errors.hpp"
#include "rmuq/rng.hpp"
#include "rmuq/special.hpp"

namespace rmuq {

enum class CountingKind {
  Dirac,
  Binomial,
  Poisson,
  NegativeBinomial,
  OrthogonalDie,
  Zeta,
  Superposition,
  Thinned,
};

inline const char* to_string(CountingKind k) {
  switch (k) {
    case CountingKind::Dirac: return "dirac";
    case CountingKind::Binomial: return "binomial";
    case CountingKind::Poisson: return "poisson";
    case CountingKind::NegativeBinomial: return "negative_binomial";
    case CountingKind::OrthogonalDie: return "orthogonal_die";
    case CountingKind::Zeta: return "zeta";
    case CountingKind::Superposition: return "superposition";
    case CountingKind::Thinned: return "thinned";
  }
  return "?";
}

/// The law of the counting variable K. Immutable after construction; safe to
/// share across threads. Sampling requires an externally supplied stream.
class CountingDistribution {
 public:
  static CountingDistribution dirac(long long c) {
    if (c <= 0) throw DomainError("dirac: c must be a positive integer");
    CountingDistribution d(CountingKind::Dirac);
    d.i0_ = c;
    return d;
  }

  static CountingDistribution binomial(long long n, double p) {
    if (n < 1) throw DomainError("binomial: n must be positive");
    if (!(p > 0.0 && p <= 1.0)) throw DomainError("binomial: p must lie in (0,1]");
    CountingDistribution d(CountingKind::Binomial);
    d.i0_ = n;
    d.p_ = p;
    return d;
  }

  static CountingDistribution poisson(double c) {
    if (!(c > 0.0)) throw DomainError("poisson: mean must be positive");
    CountingDistribution d(CountingKind::Poisson);
    d.r_ = c;
    return d;
  }

  static CountingDistribution negative_binomial(double r, double p) {
    if (!(r > 0.0)) throw DomainError("negative_binomial: r must be positive");
    if (!(p > 0.0 && p < 1.0)) throw DomainError("negative_binomial: p must lie in (0,1)");
    CountingDistribution d(CountingKind::NegativeBinomial);
    d.r_ = r;
    d.p_ = p;
    return d;
  }

  /// Discrete uniform on {m,...,n}. Orthogonal iff 6(m+n) = (n-m+1)^2 - 1.
  static CountingDistribution orthogonal_die(long long m, long long n) {
    if (m < 0 || n <= m) throw DomainError("orthogonal_die: need 0 <= m < n");
    CountingDistribution d(CountingKind::OrthogonalDie);
    d.i0_ = m;
    d.i1_ = n;
    return d;
  }

  /// pmf proportional to k^-(s+1) on {1,2,...}; variance finite for s > 2.
  static CountingDistribution zeta(double s) {
    if (!(s > 1.0)) throw DomainError("zeta: s must exceed 1");
    CountingDistribution d(CountingKind::Zeta);
    d.s_ = s;
    return d;
  }

  static CountingDistribution superposition(std::vector<CountingDistribution> members) {
    if (members.empty()) throw DomainError("superposition: empty member list");
    if (members.size() == 1) return members.front();
    CountingDistribution d(CountingKind::Superposition);
    d.members_ = std::make_shared<std::vector<CountingDistribution>>(std::move(members));
    return d;
  }

  CountingKind kind() const { return kind_; }

  // Orthogonal-die accessors (valid for the die kind only).
  long long die_lo() const { return i0_; }
  long long die_hi() const { return i1_; }

  // Parameter accessors for the closed families.
  long long size_param() const { return i0_; }  // Dirac c / Binomial n
  double success_param() const { return p_; }   // Binomial / NegativeBinomial p
  double rate_param() const { return r_; }      // Poisson mean / NegativeBinomial r

  bool is_poisson_type() const {
    return kind_ == CountingKind::Binomial || kind_ == CountingKind::Poisson ||
           kind_ == CountingKind::NegativeBinomial;
  }

  double mean() const {
    switch (kind_) {
      case CountingKind::Dirac: return static_cast<double>(i0_);
      case CountingKind::Binomial: return static_cast<double>(i0_) * p_;
      case CountingKind::Poisson: return r_;
      case CountingKind::NegativeBinomial: return r_ * p_ / (1.0 - p_);
      case CountingKind::OrthogonalDie: return 0.5 * static_cast<double>(i0_ + i1_);
      case CountingKind::Zeta: return riemann_zeta(s_) / riemann_zeta(s_ + 1.0);
      case CountingKind::Superposition: {
        double c = 0.0;
        for (const auto& m : *members_) c += m.mean();
        return c;
      }
      case CountingKind::Thinned: return thin_a_ * base_->mean();
    }
    throw Error("unreachable");
  }

  double variance() const {
    switch (kind_) {
      case CountingKind::Dirac: return 0.0;
      case CountingKind::Binomial: return static_cast<double>(i0_) * p_ * (1.0 - p_);
      case CountingKind::Poisson: return r_;
      case CountingKind::NegativeBinomial: {
        const double q = 1.0 - p_;
        return r_ * p_ / (q * q);
      }
      case CountingKind::OrthogonalDie: {
        const double span = static_cast<double>(i1_ - i0_ + 1);
        return (span * span - 1.0) / 12.0;
      }
      case CountingKind::Zeta: {
        if (!(s_ > 2.0))
          throw DegenerateError("zeta: infinite variance for s <= 2");
        const double z = riemann_zeta(s_ + 1.0);
        const double second = riemann_zeta(s_ - 1.0) / z;
        const double c = riemann_zeta(s_) / z;
        return second - c * c;
      }
      case CountingKind::Superposition: {
        double v = 0.0;
        for (const auto& m : *members_) v += m.variance();
        return v;
      }
      case CountingKind::Thinned: {
        // K_A | K ~ Binomial(K, a)
        const double c = base_->mean();
        const double v = base_->variance();
        return thin_a_ * (1.0 - thin_a_) * c + thin_a_ * thin_a_ * v;
      }
    }
    throw Error("unreachable");
  }

  std::pair<double, double> moments() const { return {mean(), variance()}; }

  /// c = delta^2? Exact in integer arithmetic where the parameters allow.
  bool is_orthogonal() const {
    switch (kind_) {
      case CountingKind::Dirac: return false;
      case CountingKind::Poisson: return true;
      case CountingKind::OrthogonalDie:
        return 6 * (i0_ + i1_) == (i1_ - i0_ + 1) * (i1_ - i0_ + 1) - 1;
      default: {
        const double c = mean();
        const double v = variance();
        return std::fabs(c - v) < 1e-12 * std::max(1.0, std::fabs(c));
      }
    }
  }

  double defect() const { return variance() - mean(); }

  /// psi(t) = E t^K for t in [0,1].
  double pgf(double t) const {
    if (!(t >= 0.0 && t <= 1.0)) throw DomainError("pgf: t must lie in [0,1]");
    switch (kind_) {
      case CountingKind::Dirac: return std::pow(t, static_cast<double>(i0_));
      case CountingKind::Binomial: return std::pow(1.0 - p_ + p_ * t, static_cast<double>(i0_));
      case CountingKind::Poisson: return std::exp(r_ * (t - 1.0));
      case CountingKind::NegativeBinomial: return std::pow((1.0 - p_) / (1.0 - p_ * t), r_);
      case CountingKind::OrthogonalDie: {
        if (t == 1.0) return 1.0;
        // t^m (1 + t + ... + t^(sides-1)) / sides, accumulated directly
        const long long sides = i1_ - i0_ + 1;
        double geo = 0.0, pw = 1.0;
        for (long long j = 0; j < sides; ++j) {
          geo += pw;
          pw *= t;
        }
        return std::pow(t, static_cast<double>(i0_)) * geo / static_cast<double>(sides);
      }
      case CountingKind::Zeta: {
        if (t == 0.0) return 0.0;
        const double a = s_ + 1.0;
        const double z = riemann_zeta(a);
        double sum = 0.0, pw = t;
        for (long long k = 1; k <= 4000000; ++k) {
          const double term = pw * std::pow(static_cast<double>(k), -a);
          sum += term;
          pw *= t;
          if (term < 1e-18 * (sum + 1e-300) && k > 32) break;
        }
        return sum / z;
      }
      case CountingKind::Superposition: {
        double prod = 1.0;
        for (const auto& m : *members_) prod *= m.pgf(t);
        return prod;
      }
      case CountingKind::Thinned: return base_->pgf(thin_a_ * t + 1.0 - thin_a_);
    }
    throw Error("unreachable");
  }

  /// Restriction to a subspace of mass a. PT members map within their family
  /// (bone mappings); Dirac(c) maps to Binomial(c, a); orthogonal die and
  /// zeta have no closed family and return a thinned-pgf law.
  CountingDistribution restrict(double a) const {
    if (!(a > 0.0 && a <= 1.0)) throw DomainError("restrict: a must lie in (0,1]");
    if (a == 1.0) return *this;
    switch (kind_) {
      case CountingKind::Dirac: return binomial(i0_, a);
      case CountingKind::Binomial: return binomial(i0_, a * p_);
      case CountingKind::Poisson: return poisson(a * r_);
      case CountingKind::NegativeBinomial:
        return negative_binomial(r_, a * p_ / (1.0 - (1.0 - a) * p_));
      case CountingKind::Superposition: {
        std::vector<CountingDistribution> restricted;
        restricted.reserve(members_->size());
        for (const auto& m : *members_) restricted.push_back(m.restrict(a));
        return superposition(std::move(restricted));
      }
      case CountingKind::Thinned: return thinned(*base_, thin_a_ * a);
      default: return thinned(*this, a);
    }
  }

  long long sample(RngStream& rng) const {
    switch (kind_) {
      case CountingKind::Dirac: return i0_;
      case CountingKind::Binomial: return rng.binomial(i0_, p_);
      case CountingKind::Poisson: return rng.poisson(r_);
      case CountingKind::NegativeBinomial: return rng.negative_binomial(r_, p_);
      case CountingKind::OrthogonalDie: return rng.uniform_int(i0_, i1_);
      case CountingKind::Zeta: return rng.zipf(s_ + 1.0);
      case CountingKind::Superposition: {
        long long k = 0;
        for (const auto& m : *members_) k += m.sample(rng);
        return k;
      }
      case CountingKind::Thinned: return rng.binomial(base_->sample(rng), thin_a_);
    }
    throw Error("unreachable");
  }

  std::string describe() const {
    std::string s = to_string(kind_);
    if (kind_ == CountingKind::Superposition) {
      s += "[";
      for (std::size_t i = 0; i < members_->size(); ++i) {
        if (i) s += ",";
        s += (*members_)[i].describe();
      }
      s += "]";
    }
    return s;
  }

 private:
  explicit CountingDistribution(CountingKind k) : kind_(k) {}

  static CountingDistribution thinned(const CountingDistribution& base, double a) {
    CountingDistribution d(CountingKind::Thinned);
    d.base_ = std::make_shared<CountingDistribution>(base);
    d.thin_a_ = a;
    return d;
  }

  CountingKind kind_;
  long long i0_ = 0;  // Dirac c / Binomial n / die lower support
  long long i1_ = 0;  // die upper support
  double p_ = 0.0;    // Binomial / NegativeBinomial success probability
  double r_ = 0.0;    // Poisson mean / NegativeBinomial r
  double s_ = 0.0;    // Zeta parameter
  double thin_a_ = 1.0;
  std::shared_ptr<const CountingDistribution> base_;
  std::shared_ptr<const std::vector<CountingDistribution>> members_;
};

inline CountingDistribution superpose(std::vector<CountingDistribution> members) {
  return CountingDistribution::superposition(std::move(members));
}

/// One row of the orthogonal dice table: k with k mod 3 != 0,
/// m = (k^2-1)/3, n = 2k + m + 2, c = (m+n)/2, sides = n - m + 1.
struct OrthogonalDieEntry {
  long long k;
  long long m;
  long long n;
  long long c;
  long long sides;

  CountingDistribution law() const { return CountingDistribution::orthogonal_die(m, n); }
};

inline std::vector<OrthogonalDieEntry> enumerate_orthogonal_dice(int count) {
  if (count < 1) throw DomainError("enumerate_orthogonal_dice: count must be positive");
  std::vector<OrthogonalDieEntry> entries;
  entries.reserve(count);
  for (long long k = 1; static_cast<int>(entries.size()) < count; ++k) {
    if (k % 3 == 0) continue;
    OrthogonalDieEntry e;
    e.k = k;
    e.m = (k * k - 1) / 3;
    e.n = 2 * k + e.m + 2;
    e.c = (e.m + e.n) / 2;
    e.sides = e.n - e.m + 1;
    if (6 * (e.m + e.n) != (e.n - e.m + 1) * (e.n - e.m + 1) - 1)
      throw Error("orthogonal dice enumeration: identity violated");
    entries.push_back(e);
  }
  return entries;
}

}  // namespace rmuq
