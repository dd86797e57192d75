// Probability measures with paired sampling and integration strategies:
// products of 1-D axes (finite, uniform, Gaussian, exponential, tabulated
// density), correlated Gaussians, point masses, image measures, kernel
// joints, and indicator restrictions.
//
// Integration is exact summation on finite spaces, tensor Gaussian
// quadrature up to three continuous axes, and seeded Monte Carlo beyond.
#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <memory>
#include <numeric>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "rmuq/errors.hpp"
#include "rmuq/quadrature.hpp"
#include "rmuq/rng.hpp"
#include "rmuq/special.hpp"

namespace rmuq {

using Point = std::vector<double>;
using Fn = std::function<double(const Point&)>;

struct IntegrationResult {
  double value = 0.0;
  double std_error = 0.0;  // zero for exact/quadrature paths
  std::string method;      // "exact", "quadrature", "mc"
};

// ---------------------------------------------------------------------------
// Axes
// ---------------------------------------------------------------------------

enum class AxisKind { Finite, Legendre, Hermite, Laguerre, Density };

/// One coordinate of a product measure. Continuous axes carry a Gaussian
/// quadrature rule whose weights sum to one (probability weights).
class Axis {
 public:
  static Axis finite(std::vector<double> values, std::vector<double> masses) {
    if (values.empty() || values.size() != masses.size())
      throw DomainError("finite axis: values/masses mismatch");
    double total = 0.0;
    for (double m : masses) {
      if (m < 0.0) throw DomainError("finite axis: negative mass");
      total += m;
    }
    if (total <= 0.0) throw DomainError("finite axis: zero total mass");
    Axis a(AxisKind::Finite);
    a.nodes_ = std::move(values);
    a.weights_ = std::move(masses);
    for (double& w : a.weights_) w /= total;
    a.build_cdf();
    return a;
  }

  static Axis bernoulli(double p) { return finite({0.0, 1.0}, {1.0 - p, p}); }

  static Axis uniform(double lo, double hi, int n = 0) {
    if (!(std::isfinite(lo) && std::isfinite(hi)))
      throw StrategyError("uniform axis: bounds must be finite (no quadrature on unbounded box)");
    if (!(hi > lo)) throw DomainError("uniform axis: hi must exceed lo");
    if (n <= 0) n = default_quad_nodes();
    Axis a(AxisKind::Legendre);
    a.lo_ = lo;
    a.hi_ = hi;
    QuadRule r = legendre_on(lo, hi, n);
    a.nodes_ = std::move(r.nodes);
    a.weights_ = std::move(r.weights);
    const double len = hi - lo;
    for (double& w : a.weights_) w /= len;  // uniform density 1/(hi-lo)
    return a;
  }

  static Axis gaussian(double mean, double sd, int n = 0) {
    if (!(sd > 0.0)) throw DomainError("gaussian axis: sd must be positive");
    if (n <= 0) n = default_quad_nodes();
    Axis a(AxisKind::Hermite);
    a.lo_ = mean;
    a.hi_ = sd;
    const QuadRule& r = gauss_hermite(n);
    a.nodes_.resize(r.nodes.size());
    a.weights_.resize(r.nodes.size());
    const double inv_sqrt_pi = 1.0 / std::sqrt(M_PI);
    for (std::size_t i = 0; i < r.nodes.size(); ++i) {
      a.nodes_[i] = mean + sd * std::sqrt(2.0) * r.nodes[i];
      a.weights_[i] = r.weights[i] * inv_sqrt_pi;
    }
    return a;
  }

  /// Exponential(rate) supported on [shift, inf).
  static Axis exponential(double rate, double shift = 0.0, int n = 0) {
    if (!(rate > 0.0)) throw DomainError("exponential axis: rate must be positive");
    if (n <= 0) n = default_quad_nodes();
    Axis a(AxisKind::Laguerre);
    a.lo_ = rate;
    a.hi_ = shift;
    const QuadRule& r = gauss_laguerre(n);
    a.nodes_.resize(r.nodes.size());
    a.weights_ = r.weights;
    for (std::size_t i = 0; i < r.nodes.size(); ++i) a.nodes_[i] = shift + r.nodes[i] / rate;
    return a;
  }

  /// General density on [lo,hi] given by a callable (may be unnormalized).
  /// Integration uses per-panel Gauss-Legendre; sampling uses an inverse
  /// CDF table on the panel grid.
  static Axis density(double lo, double hi, const std::function<double(double)>& pdf,
                      int panels = 512, int nodes_per_panel = 8) {
    if (!(std::isfinite(lo) && std::isfinite(hi) && hi > lo))
      throw DomainError("density axis: bad support");
    Axis a(AxisKind::Density);
    a.lo_ = lo;
    a.hi_ = hi;
    const double h = (hi - lo) / panels;
    for (int j = 0; j < panels; ++j) {
      QuadRule r = legendre_on(lo + j * h, lo + (j + 1) * h, nodes_per_panel);
      for (std::size_t i = 0; i < r.nodes.size(); ++i) {
        a.nodes_.push_back(r.nodes[i]);
        a.weights_.push_back(r.weights[i] * std::max(0.0, pdf(r.nodes[i])));
      }
    }
    double mass = std::accumulate(a.weights_.begin(), a.weights_.end(), 0.0);
    if (!(mass > 0.0)) throw DegenerateError("density axis: zero mass");
    for (double& w : a.weights_) w /= mass;
    a.raw_mass_ = mass;
    a.pdf_ = pdf;
    a.build_cdf();
    return a;
  }

  AxisKind kind() const { return kind_; }
  bool finite_atoms() const { return kind_ == AxisKind::Finite; }
  const std::vector<double>& nodes() const { return nodes_; }
  const std::vector<double>& weights() const { return weights_; }

  double sample(RngStream& rng) const {
    switch (kind_) {
      case AxisKind::Finite: {
        const double u = rng.uniform();
        const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
        const std::size_t i = std::min<std::size_t>(it - cdf_.begin(), nodes_.size() - 1);
        return nodes_[i];
      }
      case AxisKind::Legendre: return rng.uniform(lo_, hi_);
      case AxisKind::Hermite: return lo_ + hi_ * rng.normal();
      case AxisKind::Laguerre: return hi_ + rng.exponential(lo_);
      case AxisKind::Density: {
        // inverse CDF over the quadrature node table, linear interpolation
        const double u = rng.uniform();
        const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
        const std::size_t i = std::min<std::size_t>(it - cdf_.begin(), nodes_.size() - 1);
        const double c1 = cdf_[i];
        const double c0 = i == 0 ? 0.0 : cdf_[i - 1];
        const double x0 = i == 0 ? lo_ : 0.5 * (nodes_[i - 1] + nodes_[i]);
        const double x1 = 0.5 * (nodes_[i] + (i + 1 < nodes_.size() ? nodes_[i + 1] : hi_));
        const double frac = c1 > c0 ? (u - c0) / (c1 - c0) : 0.5;
        return x0 + frac * (x1 - x0);
      }
    }
    throw Error("unreachable");
  }

  /// Lebesgue density at x (probability mass for finite axes).
  double density_at(double x) const {
    switch (kind_) {
      case AxisKind::Finite: {
        for (std::size_t i = 0; i < nodes_.size(); ++i)
          if (std::fabs(nodes_[i] - x) < 1e-12) return weights_[i];
        return 0.0;
      }
      case AxisKind::Legendre: return (x >= lo_ && x <= hi_) ? 1.0 / (hi_ - lo_) : 0.0;
      case AxisKind::Hermite: {
        const double z = (x - lo_) / hi_;
        return std::exp(-0.5 * z * z) / (hi_ * std::sqrt(2.0 * M_PI));
      }
      case AxisKind::Laguerre: return x >= hi_ ? lo_ * std::exp(-lo_ * (x - hi_)) : 0.0;
      case AxisKind::Density: {
        if (x < lo_ || x > hi_) return 0.0;
        return std::max(0.0, pdf_(x)) / raw_mass_;
      }
    }
    throw Error("unreachable");
  }

  /// Restrict the axis to [lo,hi]; returns the retained mass.
  std::pair<Axis, double> restrict_interval(double lo, double hi) const {
    switch (kind_) {
      case AxisKind::Finite: {
        std::vector<double> v, m;
        double a = 0.0;
        for (std::size_t i = 0; i < nodes_.size(); ++i)
          if (nodes_[i] >= lo && nodes_[i] <= hi) {
            v.push_back(nodes_[i]);
            m.push_back(weights_[i]);
            a += weights_[i];
          }
        if (a <= 0.0) throw DegenerateError("restrict: null restriction");
        return {finite(std::move(v), std::move(m)), a};
      }
      case AxisKind::Legendre: {
        const double l = std::max(lo, lo_), h = std::min(hi, hi_);
        if (!(h > l)) throw DegenerateError("restrict: null restriction");
        return {uniform(l, h, static_cast<int>(nodes_.size())), (h - l) / (hi_ - lo_)};
      }
      case AxisKind::Hermite: {
        const double mean = lo_, sd = hi_;
        const double a = normal_cdf((hi - mean) / sd) - normal_cdf((lo - mean) / sd);
        if (!(a > 0.0)) throw DegenerateError("restrict: null restriction");
        const double l = std::max(lo, mean - 12.0 * sd), h = std::min(hi, mean + 12.0 * sd);
        auto pdf = [mean, sd](double x) {
          const double z = (x - mean) / sd;
          return std::exp(-0.5 * z * z);
        };
        return {density(l, h, pdf), a};
      }
      case AxisKind::Laguerre: {
        const double rate = lo_, shift = hi_;
        const double l = std::max(lo, shift);
        const double a = std::exp(-rate * (l - shift)) -
                         (std::isfinite(hi) ? std::exp(-rate * (std::max(hi, shift) - shift)) : 0.0);
        if (!(a > 0.0)) throw DegenerateError("restrict: null restriction");
        const double h = std::isfinite(hi) ? hi : l + 40.0 / rate;
        auto pdf = [rate, shift](double x) { return std::exp(-rate * (x - shift)); };
        return {density(l, h, pdf), a};
      }
      case AxisKind::Density: {
        const double l = std::max(lo, lo_), h = std::min(hi, hi_);
        if (!(h > l)) throw DegenerateError("restrict: null restriction");
        double a = 0.0;
        for (std::size_t i = 0; i < nodes_.size(); ++i)
          if (nodes_[i] >= l && nodes_[i] <= h) a += weights_[i];
        if (!(a > 0.0)) throw DegenerateError("restrict: null restriction");
        auto pdf = pdf_;
        return {density(l, h, pdf), a};
      }
    }
    throw Error("unreachable");
  }

 private:
  explicit Axis(AxisKind k) : kind_(k) {}

  void build_cdf() {
    cdf_.resize(weights_.size());
    double c = 0.0;
    for (std::size_t i = 0; i < weights_.size(); ++i) {
      c += weights_[i];
      cdf_[i] = c;
    }
    if (!cdf_.empty()) cdf_.back() = 1.0;
  }

  AxisKind kind_;
  double lo_ = 0.0;  // Legendre lo / Hermite mean / Laguerre rate / Density lo
  double hi_ = 0.0;  // Legendre hi / Hermite sd   / Laguerre shift / Density hi
  std::vector<double> nodes_;
  std::vector<double> weights_;
  std::vector<double> cdf_;
  std::function<double(double)> pdf_;
  double raw_mass_ = 1.0;
};

// ---------------------------------------------------------------------------
// Measure
// ---------------------------------------------------------------------------

class Measure;

/// Transition kernel from points of E into measures on F.
struct Kernel {
  std::function<Measure(const Point&)> at;
  int out_dim = 1;
  bool deterministic = false;
};

struct IntegrationOptions {
  std::size_t mc_reps = 100000;
  std::uint64_t mc_seed = 0x5eedf00dULL;
  int max_tensor_axes = 3;
  std::size_t max_tensor_points = 1u << 22;
};

class Measure {
  enum class NodeKind { Product, GaussianNd, PointMass, Image, Joint, Restricted };

 public:
  // -- constructors ---------------------------------------------------------

  static Measure product_axes(std::vector<Axis> axes, std::string label = "") {
    Measure m(NodeKind::Product);
    m.axes_ = std::move(axes);
    m.dim_ = static_cast<int>(m.axes_.size());
    m.label_ = std::move(label);
    return m;
  }

  static Measure uniform_box(const std::vector<double>& lo, const std::vector<double>& hi,
                             int nodes_per_axis = 0) {
    if (lo.size() != hi.size() || lo.empty()) throw DomainError("uniform_box: bad bounds");
    std::vector<Axis> axes;
    for (std::size_t i = 0; i < lo.size(); ++i)
      axes.push_back(Axis::uniform(lo[i], hi[i], nodes_per_axis));
    return product_axes(std::move(axes), "uniform_box");
  }

  static Measure gaussian1d(double mean, double sd, int n = 0) {
    return product_axes({Axis::gaussian(mean, sd, n)}, "gaussian");
  }

  static Measure bernoulli_product(double p, int dim) {
    if (!(p >= 0.0 && p <= 1.0) || dim < 1) throw DomainError("bernoulli_product: bad arguments");
    std::vector<Axis> axes(static_cast<std::size_t>(dim), Axis::bernoulli(p));
    return product_axes(std::move(axes), "bernoulli_product");
  }

  /// Correlated Gaussian via Cholesky; integration is tensor Gauss-Hermite
  /// in the whitened coordinates.
  static Measure gaussian_nd(const std::vector<double>& mean,
                             const std::vector<std::vector<double>>& cov, int n = 0) {
    const int d = static_cast<int>(mean.size());
    Eigen::MatrixXd C(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) C(i, j) = cov[i][j];
    Eigen::LLT<Eigen::MatrixXd> llt(C);
    if (llt.info() != Eigen::Success)
      throw DomainError("gaussian_nd: covariance not positive definite");
    Measure m(NodeKind::GaussianNd);
    m.dim_ = d;
    m.gauss_mean_ = Eigen::Map<const Eigen::VectorXd>(mean.data(), d);
    m.gauss_chol_ = llt.matrixL();
    m.gauss_nodes_ = n > 0 ? n : default_quad_nodes();
    m.label_ = "gaussian_nd";
    return m;
  }

  static Measure point_mass(Point p) {
    Measure m(NodeKind::PointMass);
    m.dim_ = static_cast<int>(p.size());
    m.atom_ = std::move(p);
    m.label_ = "point_mass";
    return m;
  }

  /// Marginal of a Wiener path at time t, optionally with Gaussian initial
  /// condition and drift: Gaussian(mu0 + muD t, s0^2 + t + sD^2 t^2 + 2 s0 sD t rho).
  static Measure image_wiener(double t, double mu0 = 0.0, double s0 = 0.0, double muD = 0.0,
                              double sD = 0.0, double corr = 0.0, int n = 0) {
    if (!(t > 0.0)) throw DomainError("image_wiener: t must be positive");
    const double var = s0 * s0 + t + sD * sD * t * t + 2.0 * s0 * sD * t * corr;
    return product_axes({Axis::gaussian(mu0 + muD * t, std::sqrt(var), n)}, "image_wiener");
  }

  // -- transformations ------------------------------------------------------

  /// Image measure under h: integration of f becomes integration of f о h.
  Measure image(std::function<Point(const Point&)> h, int out_dim,
                std::string label = "image") const {
    Measure m(NodeKind::Image);
    m.base_ = std::make_shared<Measure>(*this);
    m.map_ = std::move(h);
    m.dim_ = out_dim;
    m.label_ = std::move(label);
    return m;
  }

  /// Joint measure nu(dx) Q(x, dy) on E x F.
  Measure with_kernel(Kernel q, std::string label = "joint") const {
    Measure m(NodeKind::Joint);
    m.base_ = std::make_shared<Measure>(*this);
    m.kernel_ = std::make_shared<Kernel>(std::move(q));
    m.dim_ = dim_ + m.kernel_->out_dim;
    m.label_ = std::move(label);
    return m;
  }

  /// Exact axis-aligned box restriction; returns (restricted measure, mass).
  std::pair<Measure, double> restrict_box(const std::vector<double>& lo,
                                          const std::vector<double>& hi) const {
    if (node_ != NodeKind::Product)
      throw StrategyError("restrict_box: only product measures support box restriction");
    if (static_cast<int>(lo.size()) != dim_ || static_cast<int>(hi.size()) != dim_)
      throw DomainError("restrict_box: dimension mismatch");
    std::vector<Axis> axes;
    double a = 1.0;
    for (int i = 0; i < dim_; ++i) {
      auto [axis, mass] = axes_[i].restrict_interval(lo[i], hi[i]);
      axes.push_back(std::move(axis));
      a *= mass;
    }
    if (!(a > 0.0)) throw DegenerateError("restrict_box: null restriction");
    return {product_axes(std::move(axes), label_ + "|box"), a};
  }

  /// General indicator restriction. The mass is integrated when no hint is
  /// given; sampling is by rejection.
  std::pair<Measure, double> restrict(std::function<bool(const Point&)> indicator,
                                      double mass_hint = -1.0) const {
    double a = mass_hint;
    if (a < 0.0) {
      Fn ind = [&indicator](const Point& x) { return indicator(x) ? 1.0 : 0.0; };
      a = integrate(ind);
    }
    if (!(a > 0.0)) throw DegenerateError("restrict: null restriction");
    Measure m(NodeKind::Restricted);
    m.base_ = std::make_shared<Measure>(*this);
    m.indicator_ = std::move(indicator);
    m.restrict_mass_ = a;
    m.dim_ = dim_;
    m.label_ = label_ + "|restricted";
    return {m, a};
  }

  // -- queries --------------------------------------------------------------

  int dim() const { return dim_; }
  const std::string& label() const { return label_; }
  bool is_product() const { return node_ == NodeKind::Product; }
  const std::vector<Axis>& axes() const {
    if (node_ != NodeKind::Product) throw ContractError("axes: not a product measure");
    return axes_;
  }

  /// Lebesgue density (probability mass on finite axes). Product and
  /// Gaussian nodes only.
  double density(const Point& x) const {
    if (node_ == NodeKind::Product) {
      double d = 1.0;
      for (int i = 0; i < dim_; ++i) d *= axes_[i].density_at(x[i]);
      return d;
    }
    if (node_ == NodeKind::GaussianNd) {
      Eigen::VectorXd v = Eigen::Map<const Eigen::VectorXd>(x.data(), dim_) - gauss_mean_;
      Eigen::VectorXd z = gauss_chol_.triangularView<Eigen::Lower>().solve(v);
      double logdet = 0.0;
      for (int i = 0; i < dim_; ++i) logdet += std::log(gauss_chol_(i, i));
      return std::exp(-0.5 * z.squaredNorm() - logdet - 0.5 * dim_ * std::log(2.0 * M_PI));
    }
    throw StrategyError("density: not available for this measure kind");
  }

  bool quadrature_capable() const {
    switch (node_) {
      case NodeKind::Product: {
        int cont = 0;
        std::size_t pts = 1;
        for (const auto& ax : axes_) {
          if (!ax.finite_atoms()) ++cont;
          pts *= ax.nodes().size();
          if (pts > opts_.max_tensor_points) return false;
        }
        return cont <= opts_.max_tensor_axes;
      }
      case NodeKind::GaussianNd: return dim_ <= opts_.max_tensor_axes;
      case NodeKind::PointMass: return true;
      case NodeKind::Image: return base_->quadrature_capable();
      case NodeKind::Joint: return base_->quadrature_capable();
      case NodeKind::Restricted: return base_->quadrature_capable();
    }
    return false;
  }

  // -- sampling -------------------------------------------------------------

  void sample_into(RngStream& rng, double* out) const {
    switch (node_) {
      case NodeKind::Product:
        for (int i = 0; i < dim_; ++i) out[i] = axes_[i].sample(rng);
        return;
      case NodeKind::GaussianNd: {
        Eigen::VectorXd z(dim_);
        for (int i = 0; i < dim_; ++i) z(i) = rng.normal();
        Eigen::VectorXd x = gauss_mean_ + gauss_chol_ * z;
        for (int i = 0; i < dim_; ++i) out[i] = x(i);
        return;
      }
      case NodeKind::PointMass:
        std::copy(atom_.begin(), atom_.end(), out);
        return;
      case NodeKind::Image: {
        Point x(base_->dim());
        base_->sample_into(rng, x.data());
        Point y = map_(x);
        std::copy(y.begin(), y.end(), out);
        return;
      }
      case NodeKind::Joint: {
        Point x(base_->dim());
        base_->sample_into(rng, x.data());
        std::copy(x.begin(), x.end(), out);
        Measure qy = kernel_->at(x);
        qy.sample_into(rng, out + base_->dim());
        return;
      }
      case NodeKind::Restricted: {
        Point x(dim_);
        for (std::size_t attempt = 0; attempt < 100000000ULL; ++attempt) {
          base_->sample_into(rng, x.data());
          if (indicator_(x)) {
            std::copy(x.begin(), x.end(), out);
            return;
          }
        }
        throw Error("restricted sampling: rejection budget exhausted");
      }
    }
    throw Error("unreachable");
  }

  Point sample(RngStream& rng) const {
    Point p(dim_);
    sample_into(rng, p.data());
    return p;
  }

  // -- integration ----------------------------------------------------------

  IntegrationResult integrate_result(const Fn& f) const {
    switch (node_) {
      case NodeKind::Product: {
        if (quadrature_capable()) return tensor_integrate(f);
        return monte_carlo(f, opts_.mc_reps, opts_.mc_seed);
      }
      case NodeKind::GaussianNd: {
        if (!quadrature_capable()) return monte_carlo(f, opts_.mc_reps, opts_.mc_seed);
        return gaussian_tensor_integrate(f);
      }
      case NodeKind::PointMass: {
        return {check_value(f(atom_), atom_), 0.0, "exact"};
      }
      case NodeKind::Image: {
        const auto& h = map_;
        Fn pulled = [&f, &h](const Point& x) { return f(h(x)); };
        return base_->integrate_result(pulled);
      }
      case NodeKind::Joint: {
        const int d0 = base_->dim();
        const auto kernel = kernel_;
        const int dy = kernel->out_dim;
        Fn outer = [&f, kernel, d0, dy](const Point& x) {
          Measure qy = kernel->at(x);
          Fn inner = [&f, &x, d0, dy](const Point& y) {
            Point xy(d0 + dy);
            std::copy(x.begin(), x.end(), xy.begin());
            std::copy(y.begin(), y.end(), xy.begin() + d0);
            return f(xy);
          };
          return qy.integrate(inner);
        };
        return base_->integrate_result(outer);
      }
      case NodeKind::Restricted: {
        const auto& ind = indicator_;
        const double a = restrict_mass_;
        Fn masked = [&f, &ind, a](const Point& x) { return ind(x) ? f(x) / a : 0.0; };
        return base_->integrate_result(masked);
      }
    }
    throw Error("unreachable");
  }

  double integrate(const Fn& f) const { return integrate_result(f).value; }

  IntegrationResult integrate_mc(const Fn& f, std::size_t reps, std::uint64_t seed) const {
    return monte_carlo(f, reps, seed);
  }

  /// Minimum of f over the integration nodes (or a deterministic sampled
  /// probe when no node grid exists). Used to shift exponents before
  /// integrating e^{-f}.
  double min_on_nodes(const Fn& f) const {
    switch (node_) {
      case NodeKind::Product: {
        if (!quadrature_capable()) break;
        double best = std::numeric_limits<double>::infinity();
        std::vector<std::size_t> idx(dim_, 0);
        Point x(dim_);
        for (int i = 0; i < dim_; ++i) x[i] = axes_[i].nodes()[0];
        for (;;) {
          best = std::min(best, f(x));
          int j = dim_ - 1;
          for (; j >= 0; --j) {
            if (++idx[j] < axes_[j].nodes().size()) {
              x[j] = axes_[j].nodes()[idx[j]];
              break;
            }
            idx[j] = 0;
            x[j] = axes_[j].nodes()[0];
          }
          if (j < 0) return best;
        }
      }
      case NodeKind::PointMass:
        return f(atom_);
      case NodeKind::Image: {
        const auto& h = map_;
        Fn pulled = [&f, &h](const Point& x) { return f(h(x)); };
        return base_->min_on_nodes(pulled);
      }
      default: break;
    }
    RngStream rng(derive_seed(opts_.mc_seed, 7));
    double best = std::numeric_limits<double>::infinity();
    Point x(dim_);
    for (int i = 0; i < 2048; ++i) {
      sample_into(rng, x.data());
      best = std::min(best, f(x));
    }
    return best;
  }

  IntegrationOptions& options() { return opts_; }
  const IntegrationOptions& options() const { return opts_; }

 private:
  explicit Measure(NodeKind k) : node_(k) {}

  static double check_value(double v, const Point& x) {
    if (std::isnan(v)) {
      std::ostringstream oss;
      oss << "integrand returned NaN at (";
      for (std::size_t i = 0; i < x.size(); ++i) oss << (i ? "," : "") << x[i];
      oss << ")";
      throw Error(oss.str());
    }
    return v;
  }

  IntegrationResult tensor_integrate(const Fn& f) const {
    std::vector<std::size_t> idx(dim_, 0);
    Point x(dim_);
    double total = 0.0;
    bool done = dim_ == 0;
    if (dim_ == 0) return {check_value(f(x), x), 0.0, "exact"};
    for (int i = 0; i < dim_; ++i) x[i] = axes_[i].nodes()[0];
    bool all_finite = true;
    for (const auto& ax : axes_) all_finite &= ax.finite_atoms();
    while (!done) {
      double w = 1.0;
      for (int i = 0; i < dim_; ++i) w *= axes_[i].weights()[idx[i]];
      total += w * check_value(f(x), x);
      int j = dim_ - 1;
      for (; j >= 0; --j) {
        if (++idx[j] < axes_[j].nodes().size()) {
          x[j] = axes_[j].nodes()[idx[j]];
          break;
        }
        idx[j] = 0;
        x[j] = axes_[j].nodes()[0];
      }
      done = j < 0;
    }
    return {total, 0.0, all_finite ? "exact" : "quadrature"};
  }

  IntegrationResult gaussian_tensor_integrate(const Fn& f) const {
    const QuadRule& r = gauss_hermite(gauss_nodes_);
    const std::size_t n = r.nodes.size();
    const double norm = std::pow(M_PI, -0.5 * dim_);
    std::vector<std::size_t> idx(dim_, 0);
    Point x(dim_);
    Eigen::VectorXd z(dim_);
    double total = 0.0;
    for (;;) {
      double w = norm;
      for (int i = 0; i < dim_; ++i) {
        z(i) = std::sqrt(2.0) * r.nodes[idx[i]];
        w *= r.weights[idx[i]];
      }
      Eigen::VectorXd v = gauss_mean_ + gauss_chol_ * z;
      for (int i = 0; i < dim_; ++i) x[i] = v(i);
      total += w * check_value(f(x), x);
      int j = dim_ - 1;
      for (; j >= 0; --j) {
        if (++idx[j] < n) break;
        idx[j] = 0;
      }
      if (j < 0) break;
    }
    return {total, 0.0, "quadrature"};
  }

  IntegrationResult monte_carlo(const Fn& f, std::size_t reps, std::uint64_t seed) const {
    RngStream rng(derive_seed(seed, 0));
    double sum = 0.0, sumsq = 0.0;
    Point x(dim_);
    for (std::size_t i = 0; i < reps; ++i) {
      sample_into(rng, x.data());
      const double v = check_value(f(x), x);
      sum += v;
      sumsq += v * v;
    }
    const double mean = sum / reps;
    const double var = std::max(0.0, sumsq / reps - mean * mean);
    return {mean, std::sqrt(var / reps), "mc"};
  }

  NodeKind node_;
  int dim_ = 0;
  std::string label_;
  IntegrationOptions opts_;

  std::vector<Axis> axes_;  // Product

  Eigen::VectorXd gauss_mean_;  // GaussianNd
  Eigen::MatrixXd gauss_chol_;
  int gauss_nodes_ = 64;

  Point atom_;  // PointMass

  std::shared_ptr<const Measure> base_;        // Image / Joint / Restricted
  std::function<Point(const Point&)> map_;     // Image
  std::shared_ptr<const Kernel> kernel_;       // Joint
  std::function<bool(const Point&)> indicator_;  // Restricted
  double restrict_mass_ = 1.0;
};

inline Measure product(const std::vector<Measure>& parts) {
  if (parts.empty()) throw DomainError("product: empty list");
  std::vector<Axis> axes;
  for (const auto& p : parts) {
    if (!p.is_product())
      throw StrategyError("product: components must be products of axes");
    for (const auto& ax : p.axes()) axes.push_back(ax);
  }
  return Measure::product_axes(std::move(axes), "product");
}

/// Deterministic kernel Q(x, .) = delta_{g(x)}.
inline Kernel deterministic_kernel(std::function<Point(const Point&)> g, int out_dim) {
  Kernel q;
  q.out_dim = out_dim;
  q.deterministic = true;
  q.at = [g = std::move(g)](const Point& x) { return Measure::point_mass(g(x)); };
  return q;
}

}  // namespace rmuq
