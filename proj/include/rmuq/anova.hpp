// RM-ANOVA over disjoint partitions, MM-ANOVA via HDMR of the intensity
// measure, sensitivity densities of orthogonal random measures, Shannon
// entropy of index vectors, and the classifier indicator lift.
#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rmuq/errors.hpp"
#include "rmuq/hdmr.hpp"
#include "rmuq/laplace.hpp"
#include "rmuq/measure.hpp"
#include "rmuq/stc.hpp"

namespace rmuq {

/// Shannon entropy with natural log and 0 log 0 = 0. Entries must be
/// non-negative and sum to one.
inline double entropy(const std::vector<double>& p) {
  double sum = 0.0;
  for (double v : p) {
    if (v < -1e-12) throw ContractError("entropy: negative entry");
    sum += v;
  }
  if (std::fabs(sum - 1.0) > 1e-6) throw ContractError("entropy: entries do not sum to one");
  double h = 0.0;
  for (double v : p)
    if (v > 0.0) h -= v * std::log(v);
  return h;
}

/// One cell of a partition: either an axis-aligned box (continuous spaces,
/// integrated exactly on the restricted sub-box) or a predicate (finite
/// state spaces, enumerated exactly).
struct Cell {
  std::string label;
  std::vector<double> lo, hi;                   // box form when non-empty
  std::function<bool(const Point&)> predicate;  // finite form otherwise

  static Cell box(std::string label, std::vector<double> lo, std::vector<double> hi) {
    Cell c;
    c.label = std::move(label);
    c.lo = std::move(lo);
    c.hi = std::move(hi);
    return c;
  }
  static Cell pred(std::string label, std::function<bool(const Point&)> p) {
    Cell c;
    c.label = std::move(label);
    c.predicate = std::move(p);
    return c;
  }
  bool is_box() const { return !lo.empty(); }
  bool contains(const Point& x) const {
    if (is_box()) {
      for (std::size_t i = 0; i < lo.size(); ++i)
        if (x[i] < lo[i] || x[i] > hi[i]) return false;
      return true;
    }
    return predicate(x);
  }
};

struct PartitionSpec {
  std::vector<Cell> cells;
};

struct SensitivityReport {
  std::vector<std::string> labels;
  std::vector<double> masses;       // nu(D)
  std::vector<double> nu_f;         // nu f_d
  std::vector<double> nu_f2;        // nu f_d^2
  std::vector<double> var_nf;       // Var N f_d
  std::vector<double> structural;   // S^a_d
  std::vector<double> correlative;  // S^b_d
  double total_structural = 0.0;
  double total_correlative = 0.0;
  double variance_total = 0.0;  // Var Nf
  std::optional<double> report_entropy;
};

namespace detail {

inline bool all_axes_finite(const Measure& m) {
  if (!m.is_product()) return false;
  for (const auto& ax : m.axes())
    if (!ax.finite_atoms()) return false;
  return true;
}

// (mass, nu f_d, nu f_d^2) for one cell.
inline std::array<double, 3> cell_integrals(const Measure& nu, const Fn& f, const Cell& cell) {
  if (cell.is_box()) {
    auto [nu_d, a] = nu.restrict_box(cell.lo, cell.hi);
    const double m1 = a * nu_d.integrate(f);
    const double m2 = a * nu_d.integrate([&f](const Point& x) {
      const double v = f(x);
      return v * v;
    });
    return {a, m1, m2};
  }
  if (!all_axes_finite(nu))
    throw ContractError("rm_anova: predicate cells require a finite state space; use box cells");
  const auto& pred = cell.predicate;
  const double a = nu.integrate([&pred](const Point& x) { return pred(x) ? 1.0 : 0.0; });
  const double m1 = nu.integrate([&](const Point& x) { return pred(x) ? f(x) : 0.0; });
  const double m2 = nu.integrate([&](const Point& x) {
    if (!pred(x)) return 0.0;
    const double v = f(x);
    return v * v;
  });
  return {a, m1, m2};
}

inline void check_disjoint_cover(const Measure& nu, const PartitionSpec& partition) {
  RngStream rng(0xd15c0u);
  Point x(nu.dim());
  for (int probe = 0; probe < 512; ++probe) {
    nu.sample_into(rng, x.data());
    int hits = 0;
    for (const auto& c : partition.cells) hits += c.contains(x) ? 1 : 0;
    if (hits != 1)
      throw DomainError("rm_anova: partition cells are not disjoint or do not cover the support");
  }
}

}  // namespace detail

/// Variance decomposition of Nf over a disjoint partition:
/// Var Nf_d = c nu f_d^2 + (d2-c)(nu f_d)^2, cross terms (d2-c) nu f_di nu f_dj.
inline SensitivityReport rm_anova(const RandomMeasure& N, const Fn& f,
                                  const PartitionSpec& partition) {
  if (partition.cells.size() < 2) throw DomainError("rm_anova: need at least two cells");
  detail::check_disjoint_cover(N.nu, partition);

  SensitivityReport rep;
  const std::size_t m = partition.cells.size();
  double mass_total = 0.0;
  for (const auto& cell : partition.cells) {
    const auto [a, m1, m2] = detail::cell_integrals(N.nu, f, cell);
    rep.labels.push_back(cell.label);
    rep.masses.push_back(a);
    rep.nu_f.push_back(m1);
    rep.nu_f2.push_back(m2);
    mass_total += a;
  }
  if (std::fabs(mass_total - 1.0) > 1e-9)
    throw DomainError("rm_anova: cell masses do not sum to one");

  const double c = N.kappa.mean();
  const double defect = N.kappa.variance() - c;
  double nu_f_total = 0.0, nu_f2_total = 0.0;
  for (std::size_t d = 0; d < m; ++d) {
    nu_f_total += rep.nu_f[d];
    nu_f2_total += rep.nu_f2[d];
  }
  rep.variance_total = c * nu_f2_total + defect * nu_f_total * nu_f_total;
  if (!(rep.variance_total > 0.0))
    throw DegenerateError("rm_anova: Var Nf is zero (degenerate variance)");

  for (std::size_t d = 0; d < m; ++d) {
    const double var_d = c * rep.nu_f2[d] + defect * rep.nu_f[d] * rep.nu_f[d];
    rep.var_nf.push_back(var_d);
    rep.structural.push_back(var_d / rep.variance_total);
    double cross = 0.0;
    for (std::size_t j = 0; j < m; ++j)
      if (j != d) cross += defect * rep.nu_f[d] * rep.nu_f[j];
    rep.correlative.push_back(cross / rep.variance_total);
  }
  for (std::size_t d = 0; d < m; ++d) {
    rep.total_structural += rep.structural[d];
    rep.total_correlative += rep.correlative[d];
  }
  if (N.kappa.is_orthogonal()) rep.report_entropy = entropy(rep.structural);
  return rep;
}

/// Marginal sensitivity density of an orthogonal random measure on the axes
/// in u: S_u(x_u) = dens_u(x_u) E_{-u}[f^2] / nu f^2 with respect to
/// Lebesgue measure on the u axes (probability mass on finite axes).
class SensitivityDensity {
 public:
  SensitivityDensity(const RandomMeasure& N, Fn f, std::vector<int> u) : f_(std::move(f)), u_(std::move(u)) {
    if (!N.kappa.is_orthogonal())
      throw ContractError("sensitivity_density: kappa must be orthogonal");
    if (!N.nu.is_product())
      throw ContractError("sensitivity_density: nu must be a product measure");
    const auto& axes = N.nu.axes();
    const int d = static_cast<int>(axes.size());
    for (int a : u_)
      if (a < 0 || a >= d) throw DomainError("sensitivity_density: axis out of range");
    for (int i = 0; i < d; ++i) {
      if (std::find(u_.begin(), u_.end(), i) == u_.end()) {
        comp_axes_.push_back(i);
        comp_measure_axes_.push_back(axes[i]);
      }
    }
    u_axes_.reserve(u_.size());
    for (int a : u_) u_axes_.push_back(axes[a]);
    dim_ = d;
    Fn f2 = [this](const Point& x) {
      const double v = f_(x);
      return v * v;
    };
    nu_f2_ = N.nu.integrate(f2);
    if (!(nu_f2_ > 0.0)) throw DegenerateError("sensitivity_density: nu f^2 is zero");
  }

  /// Density value at the marginal coordinates x_u (ordered as u).
  double operator()(const std::vector<double>& x_u) const {
    return marginal_second_moment(x_u) * marginal_density(x_u) / nu_f2_;
  }

  /// E_{-u}[f^2 | x_u]: the complement-averaged second moment.
  double marginal_second_moment(const std::vector<double>& x_u) const {
    Point x(dim_, 0.0);
    for (std::size_t k = 0; k < u_.size(); ++k) x[u_[k]] = x_u[k];
    if (comp_axes_.empty()) {
      const double v = f_(x);
      return v * v;
    }
    auto comp = Measure::product_axes(comp_measure_axes_);
    const auto& f = f_;
    const auto& comp_axes = comp_axes_;
    return comp.integrate([&f, &comp_axes, &x](const Point& y) {
      Point full = x;
      for (std::size_t k = 0; k < comp_axes.size(); ++k) full[comp_axes[k]] = y[k];
      const double v = f(full);
      return v * v;
    });
  }

  double marginal_density(const std::vector<double>& x_u) const {
    double dens = 1.0;
    for (std::size_t k = 0; k < u_axes_.size(); ++k) dens *= u_axes_[k].density_at(x_u[k]);
    return dens;
  }

  /// Integral of the density over the u axes; one by construction.
  double normalization_check() const {
    std::vector<std::size_t> idx(u_.size(), 0);
    double total = 0.0;
    for (;;) {
      std::vector<double> x_u(u_.size());
      double w = 1.0;
      for (std::size_t k = 0; k < u_.size(); ++k) {
        x_u[k] = u_axes_[k].nodes()[idx[k]];
        w *= u_axes_[k].weights()[idx[k]];
      }
      total += w * marginal_second_moment(x_u) / nu_f2_;
      int j = static_cast<int>(u_.size()) - 1;
      for (; j >= 0; --j) {
        if (++idx[j] < u_axes_[j].nodes().size()) break;
        idx[j] = 0;
      }
      if (j < 0) break;
    }
    return total;
  }

 private:
  Fn f_;
  std::vector<int> u_;
  std::vector<int> comp_axes_;
  std::vector<Axis> u_axes_;
  std::vector<Axis> comp_measure_axes_;
  int dim_ = 0;
  double nu_f2_ = 0.0;
};

inline SensitivityDensity sensitivity_density(const RandomMeasure& N, const Fn& f,
                                              std::vector<int> u) {
  return SensitivityDensity(N, f, std::move(u));
}

/// MM-ANOVA: E Nf for f = (g - nu g)^2 equals c Var g, decomposed over the
/// HDMR subspaces (product measure, mutually orthogonal components).
struct MmAnova {
  HdmrModel hdmr;
  double c = 0.0;
  double mean_nf = 0.0;  // c Var g

  double contribution(const HdmrModel::Component& comp) const { return c * comp.variance; }
  std::vector<double> structural_indices() const {
    std::vector<double> s;
    s.reserve(hdmr.components.size());
    for (const auto& comp : hdmr.components) s.push_back(hdmr.index(comp));
    return s;
  }
  double hdmr_entropy() const { return entropy(structural_indices()); }
};

inline MmAnova mm_anova(const RandomMeasure& N, const Fn& g, int max_order = 0) {
  MmAnova out;
  out.hdmr = hdmr_product(g, N.nu, max_order);
  out.c = N.kappa.mean();
  out.mean_nf = out.c * out.hdmr.total_variance;
  return out;
}

/// Indicator regressors l_j = 1{g(x) = j} for an m-class classifier.
inline std::vector<Fn> classifier_lift(const std::function<int(const Point&)>& g, int m) {
  if (m < 2) throw DomainError("classifier_lift: need at least two classes");
  std::vector<Fn> lifts;
  lifts.reserve(m);
  for (int j = 1; j <= m; ++j) {
    lifts.push_back([g, j, m](const Point& x) {
      const int label = g(x);
      if (label < 1 || label > m) throw DomainError("classifier_lift: label out of range");
      return label == j ? 1.0 : 0.0;
    });
  }
  return lifts;
}

}  // namespace rmuq
