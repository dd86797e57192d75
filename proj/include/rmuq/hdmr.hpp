// High dimensional model representation under product measures: recursive
// conditional-expectation projections on per-axis quadrature grids, giving
// mutually orthogonal component functions, the variance decomposition, and
// structural sensitivity indices.
#pragma once

#include <algorithm>
#include <cmath>
#include <iterator>
#include <string>
#include <vector>

#include "rmuq/errors.hpp"
#include "rmuq/measure.hpp"

namespace rmuq {

namespace detail {

// Second-form barycentric interpolation on arbitrary distinct nodes.
struct Barycentric {
  std::vector<double> nodes;
  std::vector<double> weights;

  explicit Barycentric(const std::vector<double>& xs) : nodes(xs) {
    const std::size_t n = xs.size();
    weights.assign(n, 1.0);
    // scale differences to keep the products in range
    double lo = xs.front(), hi = xs.front();
    for (double x : xs) {
      lo = std::min(lo, x);
      hi = std::max(hi, x);
    }
    const double scale = n > 1 ? 4.0 / std::max(hi - lo, 1e-300) : 1.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) weights[i] /= (xs[i] - xs[j]) * scale;
  }

  double eval(const double* values, double x) const {
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      const double d = x - nodes[i];
      if (std::fabs(d) < 1e-14) return values[i];
      const double t = weights[i] / d;
      num += t * values[i];
      den += t;
    }
    return num / den;
  }
};

}  // namespace detail

/// HDMR of g under a product measure, valid through subspaces of size
/// max_order. Component g_u is stored as a table over the tensor grid of the
/// axes in u; off-grid queries interpolate barycentrically per axis.
class HdmrModel {
 public:
  struct Component {
    std::vector<int> axes;       // sorted axis indices
    std::vector<double> table;   // row-major over the axis grids
    double variance = 0.0;
  };

  double g0 = 0.0;
  double total_variance = 0.0;   // Var g over the full grid
  int max_order = 0;
  std::vector<Component> components;  // ordered by |u| then lexicographic

  int dim() const { return static_cast<int>(axis_nodes_.size()); }
  const std::vector<double>& axis_nodes(int i) const { return axis_nodes_[i]; }
  const std::vector<double>& axis_weights(int i) const { return axis_weights_[i]; }

  const Component* find(const std::vector<int>& axes) const {
    for (const auto& c : components)
      if (c.axes == axes) return &c;
    return nullptr;
  }

  /// Structural index of subspace u: Var g_u / Var g.
  double index(const Component& c) const { return c.variance / total_variance; }

  /// Sum of structural indices over subspaces of a given order.
  double order_index(int order) const {
    double s = 0.0;
    for (const auto& c : components)
      if (static_cast<int>(c.axes.size()) == order) s += index(c);
    return s;
  }

  double component_value(const Component& c, const Point& x_full) const {
    return interpolate(c, x_full, 0, 0);
  }

  /// Component value at a tensor-grid node given per-axis node indices;
  /// pure table lookup.
  double table_value(const Component& c, const std::vector<std::size_t>& full_idx) const {
    std::size_t offset = 0;
    for (int a : c.axes) offset = offset * axis_nodes_[a].size() + full_idx[a];
    return c.table[offset];
  }

  /// g0 + sum of computed components at x.
  double reconstruct(const Point& x) const {
    double v = g0;
    for (const auto& c : components) v += component_value(c, x);
    return v;
  }

  /// <g_u, g_v> over the full grid; zero for u != v under a product measure.
  double inner_product(const Component& a, const Component& b) const {
    std::vector<int> axes;
    std::set_union(a.axes.begin(), a.axes.end(), b.axes.begin(), b.axes.end(),
                   std::back_inserter(axes));
    std::vector<std::size_t> idx(axes.size(), 0);
    std::vector<std::size_t> full_idx(dim(), 0);
    double total = 0.0;
    for (;;) {
      double w = 1.0;
      for (std::size_t k = 0; k < axes.size(); ++k) {
        full_idx[axes[k]] = idx[k];
        w *= axis_weights_[axes[k]][idx[k]];
      }
      total += w * table_value(a, full_idx) * table_value(b, full_idx);
      int j = static_cast<int>(axes.size()) - 1;
      for (; j >= 0; --j) {
        if (++idx[j] < axis_nodes_[axes[j]].size()) break;
        idx[j] = 0;
      }
      if (j < 0) break;
    }
    return total;
  }

 private:
  friend HdmrModel hdmr_product(const Fn& g, const Measure& nu, int max_order);

  // Contract the table one axis at a time, last axis first.
  double interpolate(const Component& c, const Point& x_full, std::size_t, std::size_t) const {
    const int k = static_cast<int>(c.axes.size());
    std::vector<double> buf;
    const double* src = c.table.data();
    std::size_t rows = c.table.size();
    for (int pos = k - 1; pos >= 0; --pos) {
      const int axis = c.axes[pos];
      const std::size_t n = axis_nodes_[axis].size();
      rows /= n;
      std::vector<double> next(rows);
      if (axis_is_finite_[axis]) {
        std::size_t match = n;
        for (std::size_t i = 0; i < n; ++i)
          if (std::fabs(axis_nodes_[axis][i] - x_full[axis]) < 1e-9) {
            match = i;
            break;
          }
        if (match == n) throw DomainError("hdmr: point is not an atom of a finite axis");
        for (std::size_t r = 0; r < rows; ++r) next[r] = src[r * n + match];
      } else {
        for (std::size_t r = 0; r < rows; ++r) next[r] = bary_[axis].eval(src + r * n, x_full[axis]);
      }
      buf = std::move(next);
      src = buf.data();
    }
    return buf[0];
  }

  std::vector<std::vector<double>> axis_nodes_;
  std::vector<std::vector<double>> axis_weights_;
  std::vector<bool> axis_is_finite_;
  std::vector<detail::Barycentric> bary_;
};

/// Construct the HDMR of g for product nu through subspaces of size
/// max_order (0 means the full dimension). Rejects non-product measures;
/// the correlated-input construction is out of scope.
inline HdmrModel hdmr_product(const Fn& g, const Measure& nu, int max_order = 0) {
  if (!nu.is_product())
    throw ContractError("hdmr_product: measure must be a product of independent axes");
  const auto& axes = nu.axes();
  const int d = static_cast<int>(axes.size());
  if (d < 1 || d > 20) throw DomainError("hdmr_product: dimension out of range");
  if (max_order <= 0 || max_order > d) max_order = d;

  HdmrModel model;
  model.max_order = max_order;
  std::size_t grid_size = 1;
  for (const auto& ax : axes) {
    model.axis_nodes_.push_back(ax.nodes());
    model.axis_weights_.push_back(ax.weights());
    model.axis_is_finite_.push_back(ax.finite_atoms());
    model.bary_.emplace_back(ax.nodes());
    grid_size *= ax.nodes().size();
    if (grid_size > (1u << 24))
      throw StrategyError("hdmr_product: tensor grid too large; reduce node counts");
  }

  // cache g and the joint weights over the full grid
  std::vector<double> values(grid_size), weights(grid_size);
  {
    std::vector<std::size_t> idx(d, 0);
    Point x(d);
    for (int i = 0; i < d; ++i) x[i] = axes[i].nodes()[0];
    for (std::size_t flat = 0; flat < grid_size; ++flat) {
      double w = 1.0;
      for (int i = 0; i < d; ++i) w *= axes[i].weights()[idx[i]];
      const double v = g(x);
      if (std::isnan(v)) throw Error("hdmr_product: g returned NaN");
      values[flat] = v;
      weights[flat] = w;
      int j = d - 1;
      for (; j >= 0; --j) {
        if (++idx[j] < axes[j].nodes().size()) {
          x[j] = axes[j].nodes()[idx[j]];
          break;
        }
        idx[j] = 0;
        x[j] = axes[j].nodes()[0];
      }
      if (j < 0) break;
    }
  }

  double g0 = 0.0;
  for (std::size_t i = 0; i < grid_size; ++i) g0 += weights[i] * values[i];
  model.g0 = g0;
  double var = 0.0;
  for (std::size_t i = 0; i < grid_size; ++i) {
    const double dmean = values[i] - g0;
    var += weights[i] * dmean * dmean;
  }
  model.total_variance = var;
  // numerical square-integrability check (the L2 contract)
  if (!std::isfinite(var)) throw ContractError("hdmr_product: g is not square integrable");

  // enumerate subspaces by order then lexicographically
  std::vector<std::vector<int>> subspaces;
  for (int order = 1; order <= max_order; ++order) {
    std::vector<int> u(order);
    for (int i = 0; i < order; ++i) u[i] = i;
    for (;;) {
      subspaces.push_back(u);
      int j = order - 1;
      while (j >= 0 && u[j] == d - order + j) --j;
      if (j < 0) break;
      ++u[j];
      for (int k = j + 1; k < order; ++k) u[k] = u[k - 1] + 1;
    }
  }

  // strides of the full grid per axis
  std::vector<std::size_t> full_stride(d, 1);
  for (int i = d - 2; i >= 0; --i)
    full_stride[i] = full_stride[i + 1] * axes[i + 1].nodes().size();

  for (const auto& u : subspaces) {
    HdmrModel::Component comp;
    comp.axes = u;
    std::size_t cells = 1;
    for (int a : u) cells *= axes[a].nodes().size();
    comp.table.assign(cells, 0.0);

    // conditional expectation M^u g: integrate out the complement axes
    std::vector<std::size_t> idx(d, 0);
    for (std::size_t flat = 0; flat < grid_size; ++flat) {
      std::size_t rem = flat;
      double w_comp = 1.0;
      std::size_t cell = 0;
      std::size_t cell_stride = cells;
      std::size_t upos = 0;
      for (int i = 0; i < d; ++i) {
        const std::size_t ni = axes[i].nodes().size();
        const std::size_t ii = rem / full_stride[i];
        rem %= full_stride[i];
        if (upos < u.size() && u[upos] == i) {
          cell_stride /= ni;
          cell += ii * cell_stride;
          ++upos;
        } else {
          w_comp *= axes[i].weights()[ii];
        }
      }
      comp.table[cell] += w_comp * values[flat];
    }

    // subtract g0 and the strict-subset components (table lookups: the
    // cell nodes coincide with the subset grids)
    std::vector<const HdmrModel::Component*> subsets;
    for (const auto& prev : model.components)
      if (prev.axes.size() < u.size() &&
          std::includes(u.begin(), u.end(), prev.axes.begin(), prev.axes.end()))
        subsets.push_back(&prev);
    std::vector<std::size_t> cell_idx(u.size(), 0);
    std::vector<std::size_t> full_idx(d, 0);
    for (std::size_t cell = 0; cell < cells; ++cell) {
      for (std::size_t k = 0; k < u.size(); ++k) full_idx[u[k]] = cell_idx[k];
      double sub = g0;
      for (const auto* prev : subsets) sub += model.table_value(*prev, full_idx);
      comp.table[cell] -= sub;
      int j = static_cast<int>(u.size()) - 1;
      for (; j >= 0; --j) {
        if (++cell_idx[j] < axes[u[j]].nodes().size()) break;
        cell_idx[j] = 0;
      }
    }

    // Var g_u over the subspace grid
    std::fill(cell_idx.begin(), cell_idx.end(), 0);
    double cvar = 0.0;
    for (std::size_t cell = 0; cell < cells; ++cell) {
      double w = 1.0;
      for (std::size_t k = 0; k < u.size(); ++k) w *= axes[u[k]].weights()[cell_idx[k]];
      cvar += w * comp.table[cell] * comp.table[cell];
      int j = static_cast<int>(u.size()) - 1;
      for (; j >= 0; --j) {
        if (++cell_idx[j] < axes[u[j]].nodes().size()) break;
        cell_idx[j] = 0;
      }
    }
    comp.variance = cvar;
    model.components.push_back(std::move(comp));
  }
  return model;
}

}  // namespace rmuq
