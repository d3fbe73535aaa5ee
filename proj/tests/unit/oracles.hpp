#pragma once

// Finite-difference reference computations, independent of the jet code.

#include <Eigen/Dense>
#include <array>
#include <functional>

#include "geoball/metric.hpp"

namespace oracle {

using geoball::ChartPoint;
using geoball::kDim;
using Mat = Eigen::Matrix4d;

inline Mat metric_at(const geoball::MetricField& m, const ChartPoint& x) {
  Mat g;
  const auto c = m.components_unchecked(x);
  for (int i = 0; i < kDim; ++i) {
    for (int j = 0; j < kDim; ++j) g(i, j) = c[i][j];
  }
  return g;
}

inline ChartPoint shifted(ChartPoint x, int axis, double h) {
  x.coords[axis] += h;
  return x;
}

// Fourth-order central difference of a matrix-valued function.
inline Mat d_metric(const geoball::MetricField& m, const ChartPoint& x, int axis, double h) {
  return (-metric_at(m, shifted(x, axis, 2 * h)) + 8.0 * metric_at(m, shifted(x, axis, h)) -
          8.0 * metric_at(m, shifted(x, axis, -h)) + metric_at(m, shifted(x, axis, -2 * h))) /
         (12.0 * h);
}

// gamma[k][i][j] = Gamma^k_ij
using Gamma = std::array<std::array<std::array<double, kDim>, kDim>, kDim>;

inline Gamma christoffel(const geoball::MetricField& m, const ChartPoint& x, double h = 1e-3) {
  std::array<Mat, kDim> dg;
  for (int a = 0; a < kDim; ++a) dg[a] = d_metric(m, x, a, h);
  const Mat inv = metric_at(m, x).inverse();
  Gamma out{};
  for (int k = 0; k < kDim; ++k) {
    for (int i = 0; i < kDim; ++i) {
      for (int j = 0; j < kDim; ++j) {
        double s = 0.0;
        for (int l = 0; l < kDim; ++l) {
          s += 0.5 * inv(k, l) * (dg[i](l, j) + dg[j](l, i) - dg[l](i, j));
        }
        out[k][i][j] = s;
      }
    }
  }
  return out;
}

// R_abcd = g_ae (d_c Gamma^e_db - d_d Gamma^e_cb + Gamma^e_cf Gamma^f_db - Gamma^e_df Gamma^f_cb)
using Riemann = std::array<std::array<std::array<std::array<double, kDim>, kDim>, kDim>, kDim>;

inline Riemann riemann(const geoball::MetricField& m, const ChartPoint& x, double h = 1e-3) {
  std::array<Gamma, kDim> dgam;
  for (int c = 0; c < kDim; ++c) {
    const Gamma p1 = oracle::christoffel(m, shifted(x, c, h));
    const Gamma m1 = oracle::christoffel(m, shifted(x, c, -h));
    const Gamma p2 = oracle::christoffel(m, shifted(x, c, 2 * h));
    const Gamma m2 = oracle::christoffel(m, shifted(x, c, -2 * h));
    for (int e = 0; e < kDim; ++e) {
      for (int i = 0; i < kDim; ++i) {
        for (int j = 0; j < kDim; ++j) {
          dgam[c][e][i][j] = (-p2[e][i][j] + 8 * p1[e][i][j] - 8 * m1[e][i][j] + m2[e][i][j]) / (12 * h);
        }
      }
    }
  }
  const Gamma gam = oracle::christoffel(m, x);
  const Mat g = metric_at(m, x);
  Riemann up{};
  for (int e = 0; e < kDim; ++e) {
    for (int b = 0; b < kDim; ++b) {
      for (int c = 0; c < kDim; ++c) {
        for (int d = 0; d < kDim; ++d) {
          double s = dgam[c][e][d][b] - dgam[d][e][c][b];
          for (int f = 0; f < kDim; ++f) s += gam[e][c][f] * gam[f][d][b] - gam[e][d][f] * gam[f][c][b];
          up[e][b][c][d] = s;
        }
      }
    }
  }
  Riemann low{};
  for (int a = 0; a < kDim; ++a) {
    for (int b = 0; b < kDim; ++b) {
      for (int c = 0; c < kDim; ++c) {
        for (int d = 0; d < kDim; ++d) {
          double s = 0.0;
          for (int e = 0; e < kDim; ++e) s += g(a, e) * up[e][b][c][d];
          low[a][b][c][d] = s;
        }
      }
    }
  }
  return low;
}

// Laplace-Beltrami of a scalar field by nested central differences of
// (1/sqrt g) d_i (sqrt g g^ij d_j f).
inline double laplacian(const geoball::MetricField& m, const std::function<double(const ChartPoint&)>& f,
                        const ChartPoint& x, double h = 2e-3) {
  auto flux = [&](const ChartPoint& y, int i) {
    const Mat g = metric_at(m, y);
    const Mat inv = g.inverse();
    double s = 0.0;
    for (int j = 0; j < kDim; ++j) {
      const double dj = (f(shifted(y, j, h)) - f(shifted(y, j, -h))) / (2 * h);
      s += inv(i, j) * dj;
    }
    return std::sqrt(g.determinant()) * s;
  };
  double div = 0.0;
  for (int i = 0; i < kDim; ++i) {
    div += (flux(shifted(x, i, h), i) - flux(shifted(x, i, -h), i)) / (2 * h);
  }
  return div / std::sqrt(metric_at(m, x).determinant());
}

}  // namespace oracle
