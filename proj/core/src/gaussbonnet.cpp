#include "geoball/gaussbonnet.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "geoball/curvature.hpp"
#include "geoball/error.hpp"
#include "geoball/parallel.hpp"
#include "geoball/quadrature.hpp"

namespace geoball {

namespace {

constexpr double kPi = std::numbers::pi;
const double kThirtyTwoPi2 = 32.0 * kPi * kPi;

void require_covering(const MetricField& metric) {
  if (!metric.covers_manifold() || !metric.domain().is_box()) {
    throw GeometryError(ErrorKind::kNotCovering,
                        metric.name() + " does not cover a compact manifold with one chart box");
  }
}

struct NodeSums {
  double volume = 0.0;
  double form4 = 0.0;
  double form7 = 0.0;
  double rho_tilde = 0.0;
};

std::array<Rule1D, kDim> axis_rules(const MetricField& metric, int n) {
  std::array<Rule1D, kDim> rules;
  for (int i = 0; i < kDim; ++i) rules[i] = axis_rule(metric.domain().axes[i], n);
  return rules;
}

double sqrt_det(const Mat4<double>& g) {
  Eigen::Matrix4d e;
  for (int i = 0; i < kDim; ++i) {
    for (int j = 0; j < kDim; ++j) e(i, j) = g[i][j];
  }
  return std::sqrt(e.determinant());
}

// Outer loop over the first axis is the parallel unit; each slab is reduced
// in a fixed order and slabs are summed in index order.
NodeSums integrate_grid(const MetricField& metric, int n, int workers, bool curvature) {
  const auto rules = axis_rules(metric, n);
  std::vector<NodeSums> slabs(rules[0].size());
  parallel_for(rules[0].size(), resolve_worker_count(workers), [&](std::size_t i0) {
    NodeSums s;
    FrameOptions opts;
    opts.laplacian = false;
    for (std::size_t i1 = 0; i1 < rules[1].size(); ++i1) {
      for (std::size_t i2 = 0; i2 < rules[2].size(); ++i2) {
        for (std::size_t i3 = 0; i3 < rules[3].size(); ++i3) {
          const ChartPoint x{{rules[0].nodes[i0], rules[1].nodes[i1], rules[2].nodes[i2],
                              rules[3].nodes[i3]}};
          const double w = rules[0].weights[i0] * rules[1].weights[i1] * rules[2].weights[i2] *
                           rules[3].weights[i3];
          if (!curvature) {
            s.volume += w * sqrt_det(metric.components(x));
            continue;
          }
          const CurvatureFrame f = curvature_frame(metric, x, opts);
          const double dv = w * sqrt_det(f.g);
          s.volume += dv;
          s.form4 += dv * (f.norm_R2 - 4.0 * f.norm_rho2 + f.tau * f.tau);
          s.form7 += dv * (f.norm_W2 - 2.0 * f.norm_rhoTilde2 + f.tau * f.tau / 6.0);
          s.rho_tilde += dv * f.norm_rhoTilde2;
        }
      }
    }
    slabs[i0] = s;
  });
  NodeSums total;
  for (const NodeSums& s : slabs) {
    total.volume += s.volume;
    total.form4 += s.form4;
    total.form7 += s.form7;
    total.rho_tilde += s.rho_tilde;
  }
  return total;
}

}  // namespace

double GaussBonnetResult::balance_residual() const {
  return kThirtyTwoPi2 * chi_form4 - (-4.0 / 3.0 * integral_rhoTilde2 + 24.0 * volume);
}

double total_volume(const MetricField& metric, const GridSpec& grid) {
  require_covering(metric);
  if (grid.nodes_per_axis < 1) throw std::invalid_argument("grid needs at least one node per axis");
  return integrate_grid(metric, grid.nodes_per_axis, grid.workers, false).volume;
}

GaussBonnetResult euler_characteristic(const MetricField& metric, const GridSpec& grid) {
  require_covering(metric);
  if (grid.nodes_per_axis < 1) throw std::invalid_argument("grid needs at least one node per axis");
  const NodeSums s = integrate_grid(metric, grid.nodes_per_axis, grid.workers, true);
  GaussBonnetResult r;
  r.nodes_per_axis = grid.nodes_per_axis;
  r.volume = s.volume;
  r.chi_form4 = s.form4 / kThirtyTwoPi2;
  r.chi_form7 = s.form7 / kThirtyTwoPi2;
  r.integral_rhoTilde2 = s.rho_tilde;
  if (grid.estimate_error) {
    const int coarse_n = std::max(1, grid.nodes_per_axis / 2);
    const NodeSums c = integrate_grid(metric, coarse_n, grid.workers, true);
    r.error_estimate =
        std::abs(r.chi_form4 - c.form4 / kThirtyTwoPi2) + 1e-12 * (1.0 + std::abs(r.chi_form4));
  }
  return r;
}

EulerInequality euler_inequality(double chi, double volume, double rel_tol) {
  if (!(volume > 0.0)) throw std::invalid_argument("volume must be positive");
  EulerInequality e;
  e.slack = kThirtyTwoPi2 * chi - 24.0 * volume;
  e.holds = e.slack >= -rel_tol * 24.0 * volume;
  return e;
}

}  // namespace geoball
