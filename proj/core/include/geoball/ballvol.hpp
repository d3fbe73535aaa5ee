#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "geoball/gray.hpp"
#include "geoball/metric.hpp"
#include "geoball/quadrature.hpp"

namespace geoball {

using Vec4 = std::array<double, kDim>;
using Mat3 = std::array<std::array<double, 3>, 3>;

// One sample of a unit-speed geodesic together with a parallel orthonormal
// frame of the velocity's orthogonal complement and the Jacobi matrix A
// (A'' + R_u A = 0, A(0) = 0, A'(0) = I) expressed in that frame.
struct GeodesicState {
  double t = 0.0;
  ChartPoint position;  // periodic axes wrapped into the chart box
  Vec4 velocity{};
  std::array<Vec4, 3> frame{};
  Mat3 jacobi{};
  Mat3 jacobi_rate{};
  double volume_integral = 0.0;  // integral of det A from 0 to t

  double density() const;  // det A
};

struct ShootingConfig {
  double ode_tol = 1e-10;  // relative; absolute is max(1e-6 * ode_tol, 1e-17)
  // Hard cap on accepted steps between two consecutive sample times.
  int max_steps = 20000;
};

// Samples at every requested time (sorted, in (0, r]) followed by t = r.
// Throws GeometryError(kChartExit) if the geodesic leaves the chart and
// GeometryError(kStepFailure) if step-size control fails.
std::vector<GeodesicState> shoot_geodesic(const MetricField& metric, const ChartPoint& p,
                                          const Vec4& u, double r,
                                          std::span<const double> sample_times = {},
                                          const ShootingConfig& config = {});

// det A(t, u); GeometryError(kConjugatePoint) when it is not positive.
double volume_density(const MetricField& metric, const ChartPoint& p, const Vec4& u, double t,
                      const ShootingConfig& config = {});

// Columns form a g-orthonormal basis of T_p M in coordinate components.
Mat4<double> orthonormal_basis(const Mat4<double>& g);

struct SphereRuleSpec {
  enum class Kind { kProduct, kLowDiscrepancy };
  Kind kind = Kind::kProduct;
  int n_polar = 8;
  int n_middle = 8;
  int n_azimuth = 16;
  int pairs = 512;
  std::uint64_t seed = 1;

  SphereRule build() const;
  // Roughly half the resolution per angle; used for the error estimate.
  SphereRuleSpec coarser() const;
};

struct BallConfig {
  SphereRuleSpec rule;
  double ode_tol = 1e-10;
  int workers = 0;  // 0: GEOBALL_WORKERS or 1
  bool estimate_error = true;
  // Estimates whose error exceeds this fraction of the value abort with kQuadrature.
  double max_relative_error = 1e-2;
};

struct BallVolumeEstimate {
  double radius = 0.0;
  double value = 0.0;
  int directions_used = 0;
  double ode_tolerance = 0.0;
  double quadrature_error_estimate = 0.0;
};

struct BallVolumeSet {
  std::vector<BallVolumeEstimate> estimates;  // only radii below first_conjugate
  // Smallest accepted step time with det A <= 0, over all directions.
  std::optional<double> first_conjugate;
};

// One geodesic per direction, integrated to max(radii) with the ball volume
// accumulated in the ODE state. Radii must be positive.
BallVolumeSet ball_volumes(const MetricField& metric, const ChartPoint& p,
                           std::span<const double> radii, const BallConfig& config = {});

// Throws GeometryError(kConjugatePoint) if r is at or beyond a detected conjugate point.
BallVolumeEstimate ball_volume(const MetricField& metric, const ChartPoint& p, double r,
                               const BallConfig& config = {});

// Least-squares fit of V(r)/lead(r) - 1 against r^2, r^4 and optional
// nuisance powers r^6, r^8, ...
struct ExpansionFit {
  double a2 = 0.0;
  double a4 = 0.0;
  std::vector<double> nuisance;  // coefficients of r^6, r^8, ...
  double a2_stderr = 0.0;
  double a4_stderr = 0.0;
  double condition_number = 0.0;
  double residual_rms = 0.0;
  std::vector<double> radii;
  std::vector<double> volumes;
};

struct FitConfig {
  BallConfig ball;
  int nuisance_terms = 1;
  double max_condition = 1e12;
};

ExpansionFit fit_series(int n, std::span<const double> radii, std::span<const double> volumes,
                        int nuisance_terms = 1, double max_condition = 1e12);

// Measures volumes, drops radii at or above 0.6x the first conjugate
// distance, then calls fit_series. Needs at least 8 radii.
ExpansionFit fit_expansion(const MetricField& metric, const ChartPoint& p,
                           std::span<const double> radii, const FitConfig& config = {});

// Least-squares slope of log|y| against log x.
double loglog_slope(std::span<const double> x, std::span<const double> y);

}  // namespace geoball
