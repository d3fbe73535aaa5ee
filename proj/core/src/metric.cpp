#include "geoball/metric.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

#include "geoball/error.hpp"

namespace geoball {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kOutOfDomain: return "out-of-domain";
    case ErrorKind::kSingularMetric: return "singular-metric";
    case ErrorKind::kDerivativeOrder: return "derivative-order";
    case ErrorKind::kChartExit: return "chart-exit";
    case ErrorKind::kConjugatePoint: return "conjugate-point";
    case ErrorKind::kStepFailure: return "ode-step-failure";
    case ErrorKind::kQuadrature: return "quadrature";
    case ErrorKind::kIllConditioned: return "ill-conditioned";
    case ErrorKind::kNotCovering: return "chart-not-covering";
  }
  return "unknown";
}

bool ChartDomain::contains(const ChartPoint& x) const {
  for (int i = 0; i < kDim; ++i) {
    if (!std::isfinite(x[i])) return false;
    if (axes[i].periodic) continue;
    if (!(x[i] > axes[i].lo && x[i] < axes[i].hi)) return false;
  }
  if (ball_radius) {
    double r2 = 0.0;
    for (double c : x.coords) r2 += c * c;
    if (!(r2 < *ball_radius * *ball_radius)) return false;
  }
  return true;
}

ChartPoint ChartDomain::wrap(const ChartPoint& x) const {
  ChartPoint out = x;
  for (int i = 0; i < kDim; ++i) {
    if (!axes[i].periodic) continue;
    const double len = axes[i].length();
    out[i] = x[i] - len * std::floor((x[i] - axes[i].lo) / len);
  }
  return out;
}

MetricField::MetricField(Info info, Evaluators evaluators)
    : info_(std::make_shared<const Info>(std::move(info))),
      evaluators_(std::make_shared<const Evaluators>(std::move(evaluators))) {}

void MetricField::require_inside(const ChartPoint& x) const {
  if (!info_->domain.contains(x)) {
    std::ostringstream os;
    os << "point (" << x[0] << ", " << x[1] << ", " << x[2] << ", " << x[3]
       << ") lies outside the chart of " << info_->name;
    throw GeometryError(ErrorKind::kOutOfDomain, os.str());
  }
}

Mat4<double> MetricField::components(const ChartPoint& x) const {
  require_inside(x);
  return evaluators_->value(x);
}

namespace {

constexpr double kPi = std::numbers::pi;

std::string format_params(std::initializer_list<double> values) {
  std::ostringstream os;
  os.precision(17);
  os << '(';
  bool first = true;
  for (double v : values) {
    if (!first) os << ", ";
    os << v;
    first = false;
  }
  os << ')';
  return os.str();
}

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw std::invalid_argument(std::string(what) + " must be positive and finite");
  }
}

template <class T>
void scale_in_place(Mat4<T>& g, const T& factor) {
  for (auto& row : g) {
    for (auto& c : row) c = c * factor;
  }
}

}  // namespace

MetricField make_round_sphere(double radius) {
  require_positive(radius, "sphere radius");
  MetricField::Info info;
  info.name = "sphere" + format_params({radius});
  info.domain.axes = {AxisRange{0.0, kPi, false}, AxisRange{0.0, kPi, false},
                      AxisRange{0.0, kPi, false}, AxisRange{0.0, 2.0 * kPi, true}};
  info.covers_manifold = true;
  info.reference_point = ChartPoint{{kPi / 2, kPi / 2, kPi / 2, kPi}};
  info.excluded_set = "great 2-sphere where sin(psi1) sin(psi2) sin(psi3) = 0";
  const double a2 = radius * radius;
  return MetricField::from_expression(std::move(info), [a2](const auto& x) {
    using std::sin;
    using T = std::decay_t<decltype(x[0])>;
    const T s1 = sin(x[0]);
    const T s2 = sin(x[1]);
    const T s3 = sin(x[2]);
    const T f1 = s1 * s1;
    const T f2 = f1 * (s2 * s2);
    Mat4<T> g{};
    g[0][0] = T(a2);
    g[1][1] = f1 * a2;
    g[2][2] = f2 * a2;
    g[3][3] = f2 * (s3 * s3) * a2;
    return g;
  });
}

MetricField make_flat_torus(const std::array<double, kDim>& periods) {
  for (double p : periods) require_positive(p, "torus period");
  MetricField::Info info;
  info.name = "torus" + format_params({periods[0], periods[1], periods[2], periods[3]});
  ChartPoint centre;
  for (int i = 0; i < kDim; ++i) {
    info.domain.axes[i] = AxisRange{0.0, periods[i], true};
    centre[i] = 0.5 * periods[i];
  }
  info.covers_manifold = true;
  info.reference_point = centre;
  info.excluded_set = "none (fundamental box, periodic on every axis)";
  return MetricField::from_expression(std::move(info), [](const auto& x) {
    using T = std::decay_t<decltype(x[0])>;
    Mat4<T> g{};
    for (int i = 0; i < kDim; ++i) g[i][i] = T(1.0);
    return g;
  });
}

MetricField make_hyperbolic(double curvature_scale) {
  require_positive(curvature_scale, "hyperbolic curvature scale");
  MetricField::Info info;
  info.name = "hyperbolic" + format_params({curvature_scale});
  for (auto& axis : info.domain.axes) axis = AxisRange{-1.0, 1.0, false};
  info.domain.ball_radius = 1.0;
  info.covers_manifold = false;
  info.reference_point = ChartPoint{{0.0, 0.0, 0.0, 0.0}};
  info.excluded_set = "non-compact: the chart is all of H^4, no global integrals";
  const double four_s2 = 4.0 * curvature_scale * curvature_scale;
  return MetricField::from_expression(std::move(info), [four_s2](const auto& x) {
    using T = std::decay_t<decltype(x[0])>;
    T r2 = x[0] * x[0];
    for (int i = 1; i < kDim; ++i) r2 = r2 + x[i] * x[i];
    const T w = 1.0 - r2;
    const T f = four_s2 / (w * w);
    Mat4<T> g{};
    for (int i = 0; i < kDim; ++i) g[i][i] = f;
    return g;
  });
}

MetricField make_product_spheres(double a, double b) {
  require_positive(a, "first sphere radius");
  require_positive(b, "second sphere radius");
  MetricField::Info info;
  info.name = "product_spheres" + format_params({a, b});
  info.domain.axes = {AxisRange{0.0, kPi, false}, AxisRange{0.0, 2.0 * kPi, true},
                      AxisRange{0.0, kPi, false}, AxisRange{0.0, 2.0 * kPi, true}};
  info.covers_manifold = true;
  info.reference_point = ChartPoint{{kPi / 2, kPi, kPi / 2, kPi}};
  info.excluded_set = "pole circles theta1 in {0, pi} or theta2 in {0, pi}";
  const double a2 = a * a;
  const double b2 = b * b;
  return MetricField::from_expression(std::move(info), [a2, b2](const auto& x) {
    using std::sin;
    using T = std::decay_t<decltype(x[0])>;
    const T s1 = sin(x[0]);
    const T s2 = sin(x[2]);
    Mat4<T> g{};
    g[0][0] = T(a2);
    g[1][1] = s1 * s1 * a2;
    g[2][2] = T(b2);
    g[3][3] = s2 * s2 * b2;
    return g;
  });
}

const char* to_string(ProfileKind kind) {
  switch (kind) {
    case ProfileKind::kWave: return "wave";
    case ProfileKind::kHeight: return "height";
    case ProfileKind::kBump: return "bump";
  }
  return "unknown";
}

std::optional<ProfileKind> profile_from_string(const std::string& name) {
  if (name == "wave") return ProfileKind::kWave;
  if (name == "height") return ProfileKind::kHeight;
  if (name == "bump") return ProfileKind::kBump;
  return std::nullopt;
}

namespace {

template <class Phi>
MetricField conformal_with(const MetricField& base, Phi phi, double eps, std::string name) {
  MetricField::Info info = base.info();
  info.name = std::move(name);
  MetricField::Evaluators ev;
  ev.value = [base, phi, eps](const ChartPoint& x) {
    auto g = base.evaluators().value(x);
    scale_in_place(g, std::exp(2.0 * eps * phi(x.coords)));
    return g;
  };
  ev.jet1 = [base, phi, eps](const ChartPoint& x) {
    auto g = base.evaluators().jet1(x);
    scale_in_place(g, exp(phi(seed_variables<1>(x.coords)) * (2.0 * eps)));
    return g;
  };
  ev.jet2 = [base, phi, eps](const ChartPoint& x) {
    auto g = base.evaluators().jet2(x);
    scale_in_place(g, exp(phi(seed_variables<2>(x.coords)) * (2.0 * eps)));
    return g;
  };
  ev.jet4 = [base, phi, eps](const ChartPoint& x) {
    auto g = base.evaluators().jet4(x);
    scale_in_place(g, exp(phi(seed_variables<4>(x.coords)) * (2.0 * eps)));
    return g;
  };
  return MetricField(std::move(info), std::move(ev));
}

}  // namespace

MetricField make_conformal_perturbation(const MetricField& base, const ConformalProfile& profile) {
  if (!(profile.amplitude >= 0.0) || !std::isfinite(profile.amplitude)) {
    throw std::invalid_argument("conformal amplitude must be finite and non-negative");
  }
  const double eps = profile.amplitude;
  std::string name = base.name() + "+conformal(" + to_string(profile.kind) + ", " +
                     format_params({eps}).substr(1);
  name.pop_back();
  name += ")";

  switch (profile.kind) {
    case ProfileKind::kWave: {
      std::array<double, kDim> k{};
      std::array<double, kDim> lo{};
      for (int i = 0; i < kDim; ++i) {
        const AxisRange& axis = base.domain().axes[i];
        if (!axis.periodic) {
          throw std::invalid_argument("wave profile needs a chart periodic on every axis");
        }
        k[i] = 2.0 * kPi / axis.length();
        lo[i] = axis.lo;
      }
      auto phi = [k, lo](const auto& x) {
        using std::cos;
        using std::sin;
        using T = std::decay_t<decltype(x[0])>;
        T sum(0.0);
        for (int i = 0; i < kDim; ++i) sum = sum + sin((x[i] - lo[i]) * k[i] + 0.7 * i);
        return sum + 0.5 * cos((x[0] - lo[0]) * k[0] - (x[2] - lo[2]) * k[2]);
      };
      return conformal_with(base, phi, eps, std::move(name));
    }
    case ProfileKind::kHeight: {
      auto phi = [](const auto& x) {
        using std::cos;
        return cos(x[0]);
      };
      return conformal_with(base, phi, eps, std::move(name));
    }
    case ProfileKind::kBump: {
      const ChartPoint c = base.reference_point();
      auto phi = [c](const auto& x) {
        using std::exp;
        using T = std::decay_t<decltype(x[0])>;
        T r2(0.0);
        for (int i = 0; i < kDim; ++i) r2 = r2 + (x[i] - c[i]) * (x[i] - c[i]);
        return exp(r2 * -2.0);
      };
      return conformal_with(base, phi, eps, std::move(name));
    }
  }
  throw std::invalid_argument("unknown conformal profile");
}

double DerivativeBlock::partial(int i, int j, std::span<const int> axes) const {
  if (static_cast<int>(axes.size()) > order_) {
    throw GeometryError(ErrorKind::kDerivativeOrder, "requested derivative exceeds block order");
  }
  MultiIndex alpha{};
  for (int a : axes) {
    if (a < 0 || a >= kDim) throw std::invalid_argument("differentiation axis out of range");
    ++alpha[a];
  }
  return jets_[i][j].partial(alpha);
}

DerivativeBlock metric_derivatives(const MetricField& metric, const ChartPoint& x, int order) {
  if (order < 0 || order > kMaxJetOrder) {
    throw GeometryError(ErrorKind::kDerivativeOrder,
                        "metric derivatives are available up to order 4");
  }
  return DerivativeBlock(metric.jet<4>(x), order);
}

std::vector<ChartPoint> sample_chart_points(const MetricField& metric, int count,
                                            std::uint64_t seed) {
  if (count < 0) throw std::invalid_argument("sample count must be non-negative");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const ChartDomain& dom = metric.domain();
  std::vector<ChartPoint> out;
  out.reserve(count);
  while (static_cast<int>(out.size()) < count) {
    ChartPoint x;
    if (dom.ball_radius) {
      const double r = 0.8 * *dom.ball_radius;
      double r2 = 0.0;
      for (int i = 0; i < kDim; ++i) {
        x[i] = r * (2.0 * unit(rng) - 1.0);
        r2 += x[i] * x[i];
      }
      if (r2 >= r * r) continue;
    } else {
      for (int i = 0; i < kDim; ++i) {
        const AxisRange& axis = dom.axes[i];
        const double margin = axis.periodic ? 0.0 : 0.1 * axis.length();
        x[i] = axis.lo + margin + (axis.length() - 2.0 * margin) * unit(rng);
      }
    }
    out.push_back(x);
  }
  return out;
}

const std::vector<CatalogEntry>& metric_catalog() {
  static const std::vector<CatalogEntry> catalog = {
      {"sphere", {"radius"}, "round S^4 of the given radius (hyperspherical chart)",
       [](std::span<const double> p) { return make_round_sphere(p[0]); }},
      {"torus", {"p1", "p2", "p3", "p4"}, "flat torus with the given periods",
       [](std::span<const double> p) { return make_flat_torus({p[0], p[1], p[2], p[3]}); }},
      {"hyperbolic", {"scale"}, "Poincare ball of curvature -1/scale^2 (non-compact)",
       [](std::span<const double> p) { return make_hyperbolic(p[0]); }},
      {"product_spheres", {"a", "b"}, "S^2(a) x S^2(b)",
       [](std::span<const double> p) { return make_product_spheres(p[0], p[1]); }},
      {"perturbed_torus", {"p1", "p2", "p3", "p4", "eps"},
       "flat torus conformally rescaled by exp(2 eps wave)",
       [](std::span<const double> p) {
         return make_conformal_perturbation(make_flat_torus({p[0], p[1], p[2], p[3]}),
                                            {ProfileKind::kWave, p[4]});
       }},
      {"perturbed_sphere", {"radius", "eps"},
       "round S^4 conformally rescaled by exp(2 eps cos(psi1))",
       [](std::span<const double> p) {
         return make_conformal_perturbation(make_round_sphere(p[0]),
                                            {ProfileKind::kHeight, p[1]});
       }},
  };
  return catalog;
}

MetricField make_catalog_metric(const std::string& name, std::span<const double> params) {
  for (const CatalogEntry& entry : metric_catalog()) {
    if (entry.name != name) continue;
    if (params.size() != entry.parameters.size()) {
      throw std::invalid_argument("manifold '" + name + "' expects " +
                                  std::to_string(entry.parameters.size()) + " parameters, got " +
                                  std::to_string(params.size()));
    }
    return entry.make(params);
  }
  throw std::invalid_argument("unknown manifold '" + name + "'");
}

}  // namespace geoball
