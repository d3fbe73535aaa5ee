#include "geoball/ballvol.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <boost/numeric/odeint.hpp>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "geoball/curvature.hpp"
#include "geoball/error.hpp"
#include "geoball/parallel.hpp"

namespace geoball {

namespace odeint = boost::numeric::odeint;

namespace {

// Augmented state: x(4) v(4) frame(3x4) A(3x3) A'(3x3) volume(1).
constexpr int kX = 0;
constexpr int kV = 4;
constexpr int kE = 8;
constexpr int kA = 20;
constexpr int kAp = 29;
constexpr int kVol = 38;
constexpr int kStateSize = 39;
using State = std::array<double, kStateSize>;

double det3(const Mat3& a) {
  return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
         a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
         a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
}

double inner(const Mat4<double>& g, const Vec4& a, const Vec4& b) {
  double s = 0.0;
  for (int i = 0; i < kDim; ++i) {
    for (int j = 0; j < kDim; ++j) s += g[i][j] * a[i] * b[j];
  }
  return s;
}

class GeodesicSystem {
 public:
  explicit GeodesicSystem(const MetricField& metric) : metric_(metric) {}

  void operator()(const State& y, State& dy, double /*t*/) const {
    ChartPoint x{{y[kX], y[kX + 1], y[kX + 2], y[kX + 3]}};
    if (!metric_.domain().contains(x)) {
      std::ostringstream os;
      os << "geodesic left the chart of " << metric_.name();
      throw GeometryError(ErrorKind::kChartExit, os.str());
    }
    const LocalGeometry geo = local_geometry(metric_, x);
    const double* v = &y[kV];

    // Gamma^k_ij v^i, reused for the velocity and the frame.
    Mat4<double> gv{};
    for (int k = 0; k < kDim; ++k) {
      for (int j = 0; j < kDim; ++j) {
        double acc = 0.0;
        for (int i = 0; i < kDim; ++i) acc += geo.gamma[k][i][j] * v[i];
        gv[k][j] = acc;
      }
    }
    for (int k = 0; k < kDim; ++k) {
      dy[kX + k] = v[k];
      double acc = 0.0;
      for (int j = 0; j < kDim; ++j) acc += gv[k][j] * v[j];
      dy[kV + k] = -acc;
    }
    for (int a = 0; a < 3; ++a) {
      const double* e = &y[kE + 4 * a];
      for (int k = 0; k < kDim; ++k) {
        double acc = 0.0;
        for (int j = 0; j < kDim; ++j) acc += gv[k][j] * e[j];
        dy[kE + 4 * a + k] = -acc;
      }
    }

    // Jacobi operator in the frame: M_ab = R(E_a, v, E_b, v).
    Mat4<double> rv{};
    for (int p = 0; p < kDim; ++p) {
      for (int q = 0; q < kDim; ++q) {
        double acc = 0.0;
        for (int s = 0; s < kDim; ++s) {
          for (int w = 0; w < kDim; ++w) acc += geo.riemann_lower[p][s][q][w] * v[s] * v[w];
        }
        rv[p][q] = acc;
      }
    }
    Mat3 jac{};
    for (int a = 0; a < 3; ++a) {
      for (int b = 0; b < 3; ++b) {
        double acc = 0.0;
        for (int p = 0; p < kDim; ++p) {
          for (int q = 0; q < kDim; ++q) acc += y[kE + 4 * a + p] * rv[p][q] * y[kE + 4 * b + q];
        }
        jac[a][b] = acc;
      }
    }
    Mat3 a_mat;
    for (int a = 0; a < 3; ++a) {
      for (int b = 0; b < 3; ++b) {
        a_mat[a][b] = y[kA + 3 * a + b];
        dy[kA + 3 * a + b] = y[kAp + 3 * a + b];
      }
    }
    for (int a = 0; a < 3; ++a) {
      for (int b = 0; b < 3; ++b) {
        double acc = 0.0;
        for (int c = 0; c < 3; ++c) acc += jac[a][c] * a_mat[c][b];
        dy[kAp + 3 * a + b] = -acc;
      }
    }
    dy[kVol] = det3(a_mat);
  }

 private:
  const MetricField& metric_;
};

State initial_state(const MetricField& metric, const ChartPoint& p, const Vec4& u) {
  const Mat4<double> g = metric.components(p);
  const double norm2 = inner(g, u, u);
  if (!(std::abs(norm2 - 1.0) < 1e-9)) {
    std::ostringstream os;
    os << "initial direction must be unit speed, g(u,u) = " << norm2;
    throw std::invalid_argument(os.str());
  }
  const Mat4<double> basis = orthonormal_basis(g);
  // Drop the basis vector most aligned with u; the other three project to a
  // basis of the orthogonal complement.
  std::array<Vec4, kDim> cols{};
  std::array<double, kDim> along{};
  int drop = 0;
  for (int k = 0; k < kDim; ++k) {
    for (int i = 0; i < kDim; ++i) cols[k][i] = basis[i][k];
    along[k] = inner(g, cols[k], u);
    if (std::abs(along[k]) > std::abs(along[drop])) drop = k;
  }
  std::array<Vec4, 3> frame{};
  int filled = 0;
  for (int k = 0; k < kDim; ++k) {
    if (k == drop) continue;
    Vec4 w = cols[k];
    const double cu = inner(g, w, u);
    for (int i = 0; i < kDim; ++i) w[i] -= cu * u[i];
    for (int m = 0; m < filled; ++m) {
      const double c = inner(g, w, frame[m]);
      for (int i = 0; i < kDim; ++i) w[i] -= c * frame[m][i];
    }
    const double len = std::sqrt(inner(g, w, w));
    for (int i = 0; i < kDim; ++i) w[i] /= len;
    frame[filled++] = w;
  }

  State y{};
  for (int i = 0; i < kDim; ++i) {
    y[kX + i] = p[i];
    y[kV + i] = u[i];
  }
  for (int a = 0; a < 3; ++a) {
    for (int i = 0; i < kDim; ++i) y[kE + 4 * a + i] = frame[a][i];
    y[kAp + 3 * a + a] = 1.0;
  }
  return y;
}

GeodesicState unpack(const MetricField& metric, const State& y, double t) {
  GeodesicState s;
  s.t = t;
  ChartPoint x{{y[kX], y[kX + 1], y[kX + 2], y[kX + 3]}};
  s.position = metric.domain().wrap(x);
  for (int i = 0; i < kDim; ++i) s.velocity[i] = y[kV + i];
  for (int a = 0; a < 3; ++a) {
    for (int i = 0; i < kDim; ++i) s.frame[a][i] = y[kE + 4 * a + i];
    for (int b = 0; b < 3; ++b) {
      s.jacobi[a][b] = y[kA + 3 * a + b];
      s.jacobi_rate[a][b] = y[kAp + 3 * a + b];
    }
  }
  s.volume_integral = y[kVol];
  return s;
}

// Integrates to every time in `times` (ascending, positive), landing on each
// exactly. `observe(state, t)` runs at those times, `on_step(state, t)` after
// every accepted step.
template <class Observer, class StepObserver>
void integrate(const MetricField& metric, State y, std::span<const double> times,
               const ShootingConfig& config, Observer&& observe, StepObserver&& on_step) {
  if (times.empty()) return;
  const GeodesicSystem system(metric);
  // Components that vanish identically (off-diagonal A on space forms) carry
  // roundoff noise near 1e-17; a smaller absolute tolerance stalls the stepper.
  const double abs_tol = std::max(config.ode_tol * 1e-6, 1e-17);
  auto stepper = odeint::make_controlled(abs_tol, config.ode_tol,
                                         odeint::runge_kutta_fehlberg78<State>());
  double t = 0.0;
  double dt = std::min(0.01, 0.5 * times.back());
  int steps = 0;
  int rejections = 0;
  for (std::size_t next = 0; next < times.size();) {
    const double target = times[next];
    const bool clamped = t + dt >= target;
    double h = clamped ? target - t : dt;
    const double suggested = dt;
    if (stepper.try_step(std::cref(system), y, t, h) == odeint::fail) {
      dt = h;
      if (++rejections > 500 || !(dt > 1e-14 * (1.0 + target))) {
        std::ostringstream os;
        os << "step size control failed at t = " << t;
        throw GeometryError(ErrorKind::kStepFailure, os.str());
      }
      continue;
    }
    rejections = 0;
    if (++steps > config.max_steps) {
      std::ostringstream os;
      os << "more than " << config.max_steps << " steps before t = " << target;
      throw GeometryError(ErrorKind::kStepFailure, os.str());
    }
    dt = clamped ? std::max(h, suggested) : h;
    if (clamped) t = target;
    on_step(y, t);
    while (next < times.size() && times[next] <= t) {
      observe(y, times[next]);
      ++next;
      steps = 0;
    }
  }
}

template <class Observer>
void integrate(const MetricField& metric, State y, std::span<const double> times,
               const ShootingConfig& config, Observer&& observe) {
  integrate(metric, y, times, config, observe, [](const State&, double) {});
}

std::vector<double> merged_times(std::span<const double> a, std::span<const double> b) {
  std::vector<double> out(a.begin(), a.end());
  out.insert(out.end(), b.begin(), b.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

double GeodesicState::density() const { return det3(jacobi); }

Mat4<double> orthonormal_basis(const Mat4<double>& g) {
  Eigen::Matrix4d ge;
  for (int i = 0; i < kDim; ++i) {
    for (int j = 0; j < kDim; ++j) ge(i, j) = g[i][j];
  }
  Eigen::LLT<Eigen::Matrix4d> llt(ge);
  if (llt.info() != Eigen::Success) {
    throw GeometryError(ErrorKind::kSingularMetric, "metric is not positive definite");
  }
  // B = L^{-T} gives B^T g B = I.
  const Eigen::Matrix4d b =
      llt.matrixL().transpose().solve(Eigen::Matrix4d::Identity());
  Mat4<double> out;
  for (int i = 0; i < kDim; ++i) {
    for (int j = 0; j < kDim; ++j) out[i][j] = b(i, j);
  }
  return out;
}

std::vector<GeodesicState> shoot_geodesic(const MetricField& metric, const ChartPoint& p,
                                          const Vec4& u, double r,
                                          std::span<const double> sample_times,
                                          const ShootingConfig& config) {
  if (!(r > 0.0)) throw std::invalid_argument("geodesic length must be positive");
  for (double t : sample_times) {
    if (!(t > 0.0 && t <= r)) throw std::invalid_argument("sample times must lie in (0, r]");
  }
  const std::array<double, 1> end{r};
  const std::vector<double> times = merged_times(sample_times, end);
  std::vector<GeodesicState> out;
  out.reserve(times.size());
  integrate(metric, initial_state(metric, p, u), times, config,
            [&](const State& s, double t) { out.push_back(unpack(metric, s, t)); });
  return out;
}

double volume_density(const MetricField& metric, const ChartPoint& p, const Vec4& u, double t,
                      const ShootingConfig& config) {
  const auto states = shoot_geodesic(metric, p, u, t, {}, config);
  const double d = states.back().density();
  if (!(d > 0.0)) {
    std::ostringstream os;
    os << "det A = " << d << " at t = " << t;
    throw GeometryError(ErrorKind::kConjugatePoint, os.str());
  }
  return d;
}

SphereRule SphereRuleSpec::build() const {
  if (kind == Kind::kProduct) return product_sphere_rule(n_polar, n_middle, n_azimuth);
  return low_discrepancy_sphere_rule(pairs, seed);
}

SphereRuleSpec SphereRuleSpec::coarser() const {
  SphereRuleSpec c = *this;
  c.n_polar = std::max(1, n_polar / 2);
  c.n_middle = std::max(1, n_middle / 2);
  c.n_azimuth = std::max(2, 2 * (n_azimuth / 4));
  c.pairs = std::max(1, pairs / 2);
  return c;
}

namespace {

struct DirectionResult {
  std::vector<double> volume;  // per radius
  double first_conjugate = std::numeric_limits<double>::infinity();
};

struct RuleSums {
  std::vector<double> totals;  // per radius
  double first_conjugate = std::numeric_limits<double>::infinity();
};

RuleSums integrate_rule(const MetricField& metric, const ChartPoint& p,
                        std::span<const double> radii, const SphereRule& rule,
                        const BallConfig& config) {
  const Mat4<double> basis = orthonormal_basis(metric.components(p));

  ShootingConfig shooting;
  shooting.ode_tol = config.ode_tol;

  std::vector<DirectionResult> per_direction(rule.size());
  parallel_for(rule.size(), resolve_worker_count(config.workers), [&](std::size_t d) {
    Vec4 u{};
    for (int i = 0; i < kDim; ++i) {
      for (int a = 0; a < kDim; ++a) u[i] += basis[i][a] * rule.directions[d][a];
    }
    DirectionResult& res = per_direction[d];
    res.volume.assign(radii.size(), 0.0);
    std::size_t next = 0;
    const auto check = [&](const State& s, double t) {
      Mat3 a;
      for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) a[i][j] = s[kA + 3 * i + j];
      }
      if (!(det3(a) > 0.0)) res.first_conjugate = std::min(res.first_conjugate, t);
    };
    integrate(
        metric, initial_state(metric, p, u), radii, shooting,
        [&](const State& s, double) {
          check(s, radii[next]);
          res.volume[next++] = s[kVol];
        },
        check);
  });

  RuleSums sums;
  sums.totals.assign(radii.size(), 0.0);
  for (std::size_t d = 0; d < rule.size(); ++d) {
    for (std::size_t k = 0; k < radii.size(); ++k) {
      sums.totals[k] += rule.weights[d] * per_direction[d].volume[k];
    }
    sums.first_conjugate = std::min(sums.first_conjugate, per_direction[d].first_conjugate);
  }
  return sums;
}

}  // namespace

BallVolumeSet ball_volumes(const MetricField& metric, const ChartPoint& p,
                           std::span<const double> radii, const BallConfig& config) {
  metric.require_inside(p);
  if (radii.empty()) return {};
  std::vector<double> sorted(radii.begin(), radii.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  if (!(sorted.front() > 0.0)) throw std::invalid_argument("ball radii must be positive");

  const SphereRule rule = config.rule.build();
  const RuleSums fine = integrate_rule(metric, p, sorted, rule, config);
  std::optional<RuleSums> coarse;
  if (config.estimate_error) {
    coarse = integrate_rule(metric, p, sorted, config.rule.coarser().build(), config);
  }

  BallVolumeSet out;
  double conj = fine.first_conjugate;
  if (coarse) conj = std::min(conj, coarse->first_conjugate);
  if (std::isfinite(conj)) out.first_conjugate = conj;

  for (std::size_t k = 0; k < sorted.size(); ++k) {
    if (out.first_conjugate && sorted[k] >= *out.first_conjugate) break;
    BallVolumeEstimate e;
    e.radius = sorted[k];
    e.value = fine.totals[k];
    e.directions_used = static_cast<int>(rule.size());
    e.ode_tolerance = config.ode_tol;
    e.quadrature_error_estimate = config.ode_tol * std::abs(e.value);
    if (coarse) e.quadrature_error_estimate += std::abs(e.value - coarse->totals[k]);
    if (!(e.quadrature_error_estimate <= config.max_relative_error * std::abs(e.value))) {
      std::ostringstream os;
      os << "direction quadrature did not converge at r = " << e.radius
         << " (error estimate " << e.quadrature_error_estimate << ", value " << e.value << ")";
      throw GeometryError(ErrorKind::kQuadrature, os.str());
    }
    out.estimates.push_back(e);
  }
  return out;
}

BallVolumeEstimate ball_volume(const MetricField& metric, const ChartPoint& p, double r,
                               const BallConfig& config) {
  const std::array<double, 1> radii{r};
  const BallVolumeSet set = ball_volumes(metric, p, radii, config);
  if (set.estimates.empty()) {
    std::ostringstream os;
    os << "conjugate point at t = " << set.first_conjugate.value_or(r) << " within radius " << r;
    throw GeometryError(ErrorKind::kConjugatePoint, os.str());
  }
  return set.estimates.front();
}

ExpansionFit fit_series(int n, std::span<const double> radii, std::span<const double> volumes,
                        int nuisance_terms, double max_condition) {
  if (radii.size() != volumes.size()) throw std::invalid_argument("radii/volume size mismatch");
  if (nuisance_terms < 0) throw std::invalid_argument("nuisance_terms must be non-negative");
  const int cols = 2 + nuisance_terms;
  const int rows = static_cast<int>(radii.size());
  if (rows <= cols) throw std::invalid_argument("not enough radii for the requested fit");

  Eigen::MatrixXd design(rows, cols);
  Eigen::VectorXd rhs(rows);
  // Columns are scaled to unit max so the condition number reflects the
  // geometry of the radius grid rather than the powers' magnitudes.
  Eigen::VectorXd col_scale(cols);
  const double r_max = *std::max_element(radii.begin(), radii.end());
  for (int c = 0; c < cols; ++c) col_scale(c) = std::pow(r_max, 2 * (c + 1));
  for (int i = 0; i < rows; ++i) {
    const double r = radii[i];
    rhs(i) = volumes[i] / leading_ball_volume(n, r) - 1.0;
    for (int c = 0; c < cols; ++c) design(i, c) = std::pow(r, 2 * (c + 1)) / col_scale(c);
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(design, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  ExpansionFit fit;
  fit.condition_number = sv(0) / sv(cols - 1);
  if (!(fit.condition_number <= max_condition)) {
    std::ostringstream os;
    os << "series fit condition number " << fit.condition_number;
    throw GeometryError(ErrorKind::kIllConditioned, os.str());
  }
  const Eigen::VectorXd scaled = svd.solve(rhs);
  const Eigen::VectorXd resid = design * scaled - rhs;
  const double rss = resid.squaredNorm();
  fit.residual_rms = std::sqrt(rss / rows);
  const double sigma2 = rss / (rows - cols);
  // (X^T X)^{-1} = V S^{-2} V^T
  const Eigen::MatrixXd v = svd.matrixV();
  Eigen::MatrixXd cov = v * sv.cwiseInverse().cwiseAbs2().asDiagonal() * v.transpose() * sigma2;

  fit.a2 = scaled(0) / col_scale(0);
  fit.a4 = scaled(1) / col_scale(1);
  fit.a2_stderr = std::sqrt(cov(0, 0)) / col_scale(0);
  fit.a4_stderr = std::sqrt(cov(1, 1)) / col_scale(1);
  for (int c = 2; c < cols; ++c) fit.nuisance.push_back(scaled(c) / col_scale(c));
  fit.radii.assign(radii.begin(), radii.end());
  fit.volumes.assign(volumes.begin(), volumes.end());
  return fit;
}

ExpansionFit fit_expansion(const MetricField& metric, const ChartPoint& p,
                           std::span<const double> radii, const FitConfig& config) {
  if (radii.size() < 8) throw std::invalid_argument("expansion fit needs at least 8 radii");
  const BallVolumeSet set = ball_volumes(metric, p, radii, config.ball);
  std::vector<double> r;
  std::vector<double> v;
  const double limit =
      set.first_conjugate ? 0.6 * *set.first_conjugate : std::numeric_limits<double>::infinity();
  for (const auto& e : set.estimates) {
    if (e.radius >= limit) continue;
    r.push_back(e.radius);
    v.push_back(e.value);
  }
  return fit_series(metric.dim(), r, v, config.nuisance_terms, config.max_condition);
}

double loglog_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("need >= 2 points");
  double sx = 0.0;
  double sy = 0.0;
  double sxx = 0.0;
  double sxy = 0.0;
  const double m = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]);
    const double ly = std::log(std::abs(y[i]));
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

}  // namespace geoball
