#pragma once

#include <array>
#include <optional>

#include "geoball/metric.hpp"

namespace geoball {

template <class T>
using Tensor3 = std::array<Mat4<T>, kDim>;
template <class T>
using Tensor4 = std::array<Tensor3<T>, kDim>;

// Scalar curvature data consumed by the ball-volume expansion. `n` is kept
// separate from kDim so the expansion can be exercised in other dimensions.
struct CurvatureInvariants {
  int n = kDim;
  double tau = 0.0;
  double norm_R2 = 0.0;
  double norm_rho2 = 0.0;
  double norm_W2 = 0.0;
  double norm_rhoTilde2 = 0.0;
  double laplacian_tau = 0.0;
};

// Pointwise curvature suite.
//
// Conventions: gamma[k][i][j] = Gamma^k_ij; riemann_lower[a][b][c][d] = R_abcd
// normalised so that a space of constant curvature K has
// R_abcd = K (g_ac g_bd - g_ad g_bc), ricci[b][d] = g^{ac} R_abcd and the
// unit round sphere has tau = +12. Squared norms are full contractions with
// every index raised by g_inv.
struct CurvatureFrame {
  ChartPoint point;
  Mat4<double> g{};
  Mat4<double> g_inv{};
  Tensor3<double> gamma{};
  Tensor4<double> riemann_lower{};
  Mat4<double> ricci{};
  double tau = 0.0;
  Tensor4<double> weyl_lower{};
  Mat4<double> traceless_ricci{};
  double norm_R2 = 0.0;
  double norm_rho2 = 0.0;
  double norm_W2 = 0.0;
  double norm_rhoTilde2 = 0.0;
  // Delta tau = g^{ij}(d_i d_j tau - Gamma^k_ij d_k tau); needs fourth-order
  // metric derivatives and is skipped when FrameOptions::laplacian is false.
  std::optional<double> laplacian_tau;

  // Throws std::logic_error when laplacian_tau was not computed.
  CurvatureInvariants invariants() const;
};

struct FrameOptions {
  bool laplacian = true;
  // Metrics whose condition number exceeds this abort with kSingularMetric.
  double max_condition = 1e12;
};

// Metric, inverse, Christoffel symbols and lowered Riemann tensor at a point.
// This is the hot path for geodesic and Jacobi integration: no domain or
// conditioning checks beyond positivity of det g.
struct LocalGeometry {
  Mat4<double> g{};
  Mat4<double> g_inv{};
  Tensor3<double> gamma{};
  Tensor4<double> riemann_lower{};
};

LocalGeometry local_geometry(const MetricField& metric, const ChartPoint& x);

Tensor3<double> christoffel(const MetricField& metric, const ChartPoint& x,
                            double max_condition = 1e12);

CurvatureFrame curvature_frame(const MetricField& metric, const ChartPoint& x,
                               const FrameOptions& options = {});

struct SpaceFormCheck {
  bool is_space_form = false;
  // tau / (n (n - 1)); meaningful only when is_space_form holds.
  double curvature = 0.0;
};

// |W|^2 and |rhoTilde|^2 both below tol * (1 + |R|^2).
SpaceFormCheck check_space_form_pointwise(const CurvatureFrame& frame, double tol);

// Largest |g^{..} W_....| over the six single contractions of the Weyl tensor.
double max_weyl_trace(const CurvatureFrame& frame);

}  // namespace geoball
