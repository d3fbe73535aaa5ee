#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "geoball/jet.hpp"

namespace geoball {

template <class T>
using Mat4 = std::array<std::array<T, kDim>, kDim>;

struct ChartPoint {
  std::array<double, kDim> coords{};

  double operator[](int i) const { return coords[i]; }
  double& operator[](int i) { return coords[i]; }
  friend bool operator==(const ChartPoint&, const ChartPoint&) = default;
};

struct AxisRange {
  double lo = 0.0;
  double hi = 0.0;
  bool periodic = false;

  double length() const { return hi - lo; }
};

// Open coordinate box, optionally intersected with an open Euclidean ball
// about the origin. Periodic axes are unconstrained; the metric repeats with
// period hi - lo along them.
struct ChartDomain {
  std::array<AxisRange, kDim> axes{};
  std::optional<double> ball_radius;

  bool contains(const ChartPoint& x) const;
  ChartPoint wrap(const ChartPoint& x) const;
  bool is_box() const { return !ball_radius.has_value(); }
};

// Analytic Riemannian metric g_ij on a single chart of a 4-manifold.
//
// Components are closed-form expressions instantiated once for doubles and
// once per jet order, so derivatives up to fourth order are exact Taylor
// coefficients rather than difference quotients.
class MetricField {
 public:
  struct Evaluators {
    std::function<Mat4<double>(const ChartPoint&)> value;
    std::function<Mat4<Jet<1>>(const ChartPoint&)> jet1;
    std::function<Mat4<Jet<2>>(const ChartPoint&)> jet2;
    std::function<Mat4<Jet<4>>(const ChartPoint&)> jet4;
  };

  struct Info {
    std::string name;
    ChartDomain domain;
    bool covers_manifold = false;
    ChartPoint reference_point;
    // Human-readable description of the measure-zero set the chart omits.
    std::string excluded_set;
  };

  MetricField(Info info, Evaluators evaluators);

  // `expr` is a generic callable: expr(const std::array<T, 4>&) -> Mat4<T>
  // for T = double and every Jet<K>.
  template <class Expr>
  static MetricField from_expression(Info info, Expr expr);

  const std::string& name() const { return info_->name; }
  int dim() const { return kDim; }
  const ChartDomain& domain() const { return info_->domain; }
  bool covers_manifold() const { return info_->covers_manifold; }
  const ChartPoint& reference_point() const { return info_->reference_point; }
  const std::string& excluded_set() const { return info_->excluded_set; }
  const Info& info() const { return *info_; }
  const Evaluators& evaluators() const { return *evaluators_; }

  // Throws GeometryError(kOutOfDomain) outside the chart.
  Mat4<double> components(const ChartPoint& x) const;

  // Taylor jet of every component about x; Order in 1..4.
  template <int Order>
  Mat4<Jet<Order>> jet(const ChartPoint& x) const;

  // Same as components() without the domain check; for ODE right-hand sides
  // that have already validated the point.
  Mat4<double> components_unchecked(const ChartPoint& x) const { return evaluators_->value(x); }
  Mat4<Jet<2>> jet2_unchecked(const ChartPoint& x) const { return evaluators_->jet2(x); }

  void require_inside(const ChartPoint& x) const;

 private:
  std::shared_ptr<const Info> info_;
  std::shared_ptr<const Evaluators> evaluators_;
};

template <class Expr>
MetricField MetricField::from_expression(Info info, Expr expr) {
  Evaluators ev;
  ev.value = [expr](const ChartPoint& x) { return expr(x.coords); };
  ev.jet1 = [expr](const ChartPoint& x) { return expr(seed_variables<1>(x.coords)); };
  ev.jet2 = [expr](const ChartPoint& x) { return expr(seed_variables<2>(x.coords)); };
  ev.jet4 = [expr](const ChartPoint& x) { return expr(seed_variables<4>(x.coords)); };
  return MetricField(std::move(info), std::move(ev));
}

template <int Order>
Mat4<Jet<Order>> MetricField::jet(const ChartPoint& x) const {
  static_assert(Order >= 1 && Order <= 4);
  require_inside(x);
  if constexpr (Order == 1) {
    return evaluators_->jet1(x);
  } else if constexpr (Order == 2) {
    return evaluators_->jet2(x);
  } else if constexpr (Order == 4) {
    return evaluators_->jet4(x);
  } else {
    const auto full = evaluators_->jet4(x);
    Mat4<Jet<Order>> out;
    for (int i = 0; i < kDim; ++i) {
      for (int j = 0; j < kDim; ++j) out[i][j] = full[i][j].template truncate<Order>();
    }
    return out;
  }
}

// ---------------------------------------------------------------------------
// Catalog

// Round 4-sphere of the given radius in hyperspherical coordinates
// (psi1, psi2, psi3) in (0, pi)^3, phi periodic on [0, 2 pi).
MetricField make_round_sphere(double radius);

// Flat torus R^4 / (periods Z^4) with the identity metric.
MetricField make_flat_torus(const std::array<double, kDim>& periods);

// Poincare ball: g = 4 s^2 delta / (1 - |x|^2)^2, sectional curvature -1/s^2.
MetricField make_hyperbolic(double curvature_scale);

// S^2(a) x S^2(b) in coordinates (theta1, phi1, theta2, phi2).
MetricField make_product_spheres(double a, double b);

// Smooth scalar profiles used for conformal perturbations e^{2 eps phi} g.
enum class ProfileKind {
  kWave,    // sum of phase-shifted sines along every periodic axis
  kHeight,  // cos(x1): the first embedding coordinate on polar charts
  kBump,    // Gaussian centred at the base reference point, width 0.5
};

struct ConformalProfile {
  ProfileKind kind = ProfileKind::kWave;
  double amplitude = 0.0;
};

const char* to_string(ProfileKind kind);
std::optional<ProfileKind> profile_from_string(const std::string& name);

MetricField make_conformal_perturbation(const MetricField& base, const ConformalProfile& profile);

// All partial derivatives of all g_ij up to a given order at one point.
class DerivativeBlock {
 public:
  DerivativeBlock(Mat4<Jet<4>> jets, int order) : jets_(std::move(jets)), order_(order) {}

  int order() const { return order_; }

  // d^k g_ij / dx^{axes[0]} ... dx^{axes[k-1]}; k <= order().
  double partial(int i, int j, std::span<const int> axes) const;
  double partial(int i, int j, std::initializer_list<int> axes) const {
    return partial(i, j, std::span<const int>(axes.begin(), axes.size()));
  }

 private:
  Mat4<Jet<4>> jets_;
  int order_;
};

// Throws GeometryError(kOutOfDomain) or GeometryError(kDerivativeOrder).
DerivativeBlock metric_derivatives(const MetricField& metric, const ChartPoint& x, int order);

// Uniform samples from the catalog sampling region: 10% margins on bounded
// axes, full period on periodic axes, 0.8 of the radius for ball charts.
std::vector<ChartPoint> sample_chart_points(const MetricField& metric, int count,
                                            std::uint64_t seed);

// Name + parameter-list addressing used by the manifest front end.
struct CatalogEntry {
  std::string name;
  std::vector<std::string> parameters;
  std::string description;
  std::function<MetricField(std::span<const double>)> make;
};

const std::vector<CatalogEntry>& metric_catalog();

// Throws std::invalid_argument for unknown names or wrong parameter counts.
MetricField make_catalog_metric(const std::string& name, std::span<const double> params);

}  // namespace geoball
