#pragma once

#include "geoball/metric.hpp"

namespace geoball {

struct GridSpec {
  int nodes_per_axis = 16;
  int workers = 0;  // 0: GEOBALL_WORKERS or 1
  bool estimate_error = true;
};

struct GaussBonnetResult {
  // (1/32 pi^2) * integral of |R|^2 - 4|rho|^2 + tau^2
  double chi_form4 = 0.0;
  // (1/32 pi^2) * integral of |W|^2 - 2|rhoTilde|^2 + tau^2/6
  double chi_form7 = 0.0;
  double volume = 0.0;
  double integral_rhoTilde2 = 0.0;  // integral of |rhoTilde|^2 dv
  int nodes_per_axis = 0;
  // |chi(n) - chi(n/2)| plus a rounding floor; zero-cost when disabled.
  double error_estimate = 0.0;

  // 32 pi^2 chi - (integral of (-4/3)|rhoTilde|^2 dv + 24 vol): zero when the
  // ball-volume hypothesis holds against a curvature +-1 model.
  double balance_residual() const;
};

// Integral of sqrt(det g) over the chart box by tensor-product quadrature.
// Throws GeometryError(kNotCovering) for charts that do not cover a compact
// manifold.
double total_volume(const MetricField& metric, const GridSpec& grid = {});

GaussBonnetResult euler_characteristic(const MetricField& metric, const GridSpec& grid = {});

struct EulerInequality {
  bool holds = false;
  double slack = 0.0;  // 32 pi^2 chi - 24 vol
};

// chi >= 3 vol / (4 pi^2), accepted when slack >= -rel_tol * 24 vol.
EulerInequality euler_inequality(double chi, double volume, double rel_tol = 1e-9);

}  // namespace geoball
