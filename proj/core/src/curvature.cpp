#include "geoball/curvature.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "geoball/error.hpp"

namespace geoball {

namespace {

Eigen::Matrix4d to_eigen(const Mat4<double>& m) {
  Eigen::Matrix4d e;
  for (int i = 0; i < kDim; ++i) {
    for (int j = 0; j < kDim; ++j) e(i, j) = m[i][j];
  }
  return e;
}

Mat4<double> from_eigen(const Eigen::Matrix4d& e) {
  Mat4<double> m;
  for (int i = 0; i < kDim; ++i) {
    for (int j = 0; j < kDim; ++j) m[i][j] = e(i, j);
  }
  return m;
}

Mat4<double> checked_inverse(const Mat4<double>& g, double max_condition) {
  const Eigen::Matrix4d ge = to_eigen(g);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> eig(ge, Eigen::EigenvaluesOnly);
  const double lo = eig.eigenvalues().minCoeff();
  const double hi = eig.eigenvalues().maxCoeff();
  if (!(lo > 0.0) || !(hi / lo <= max_condition)) {
    std::ostringstream os;
    os << "metric eigenvalues in [" << lo << ", " << hi << "]";
    throw GeometryError(ErrorKind::kSingularMetric, os.str());
  }
  return from_eigen(ge.inverse());
}

Mat4<double> fast_inverse(const Mat4<double>& g) {
  const Eigen::Matrix4d ge = to_eigen(g);
  const double det = ge.determinant();
  if (!(det > 0.0)) throw GeometryError(ErrorKind::kSingularMetric, "det g is not positive");
  return from_eigen(ge.inverse());
}

template <int Order>
Mat4<double> values_of(const Mat4<Jet<Order>>& m) {
  Mat4<double> v;
  for (int i = 0; i < kDim; ++i) {
    for (int j = 0; j < kDim; ++j) v[i][j] = m[i][j].value();
  }
  return v;
}

// Inverse of a jet-valued matrix: with g = g0 + N and N nilpotent in the jet
// algebra, g^{-1} = sum_k (-g0^{-1} N)^k g0^{-1} terminates at k = Order.
template <int Order>
Mat4<Jet<Order>> jet_inverse(const Mat4<Jet<Order>>& g, const Mat4<double>& g0_inv) {
  Mat4<Jet<Order>> step;  // -g0^{-1} N
  for (int i = 0; i < kDim; ++i) {
    for (int j = 0; j < kDim; ++j) {
      Jet<Order> acc;
      for (int k = 0; k < kDim; ++k) {
        Jet<Order> n = g[k][j];
        n[0] = 0.0;
        acc += n * (-g0_inv[i][k]);
      }
      step[i][j] = acc;
    }
  }
  Mat4<Jet<Order>> term;
  Mat4<Jet<Order>> out;
  for (int i = 0; i < kDim; ++i) {
    for (int j = 0; j < kDim; ++j) {
      term[i][j] = Jet<Order>(g0_inv[i][j]);
      out[i][j] = term[i][j];
    }
  }
  for (int k = 1; k <= Order; ++k) {
    Mat4<Jet<Order>> next;
    for (int i = 0; i < kDim; ++i) {
      for (int j = 0; j < kDim; ++j) {
        Jet<Order> acc;
        for (int l = 0; l < kDim; ++l) acc += step[i][l] * term[l][j];
        next[i][j] = acc;
      }
    }
    term = next;
    for (int i = 0; i < kDim; ++i) {
      for (int j = 0; j < kDim; ++j) out[i][j] += term[i][j];
    }
  }
  return out;
}

// Christoffel symbols of both kinds from first derivatives dg[l][i][j] = d_l g_ij.
template <class S>
void christoffel_from(const Mat4<S>& g_inv, const Tensor3<S>& dg, Tensor3<S>& first,
                      Tensor3<S>& second) {
  for (int l = 0; l < kDim; ++l) {
    for (int i = 0; i < kDim; ++i) {
      for (int j = i; j < kDim; ++j) {
        first[l][i][j] = (dg[i][j][l] + dg[j][i][l] - dg[l][i][j]) * 0.5;
        first[l][j][i] = first[l][i][j];
      }
    }
  }
  for (int k = 0; k < kDim; ++k) {
    for (int i = 0; i < kDim; ++i) {
      for (int j = i; j < kDim; ++j) {
        S acc = g_inv[k][0] * first[0][i][j];
        for (int l = 1; l < kDim; ++l) acc += g_inv[k][l] * first[l][i][j];
        second[k][i][j] = acc;
        second[k][j][i] = acc;
      }
    }
  }
}

// R_abcd = 1/2 (g_ad,bc + g_bc,ad - g_bd,ac - g_ac,bd)
//          + Gamma_{f,bc} Gamma^f_ad - Gamma_{f,bd} Gamma^f_ac
template <class S>
Tensor4<S> riemann_from(const Tensor4<S>& ddg, const Tensor3<S>& first, const Tensor3<S>& second) {
  Tensor4<S> r;
  for (int a = 0; a < kDim; ++a) {
    for (int b = 0; b < kDim; ++b) {
      for (int c = 0; c < kDim; ++c) {
        for (int d = 0; d < kDim; ++d) {
          S acc = (ddg[b][c][a][d] + ddg[a][d][b][c] - ddg[a][c][b][d] - ddg[b][d][a][c]) * 0.5;
          for (int f = 0; f < kDim; ++f) {
            acc += first[f][b][c] * second[f][a][d] - first[f][b][d] * second[f][a][c];
          }
          r[a][b][c][d] = acc;
        }
      }
    }
  }
  return r;
}

template <class S>
Mat4<S> ricci_from(const Tensor4<S>& r, const Mat4<S>& g_inv) {
  Mat4<S> ricci;
  for (int b = 0; b < kDim; ++b) {
    for (int d = 0; d < kDim; ++d) {
      S acc{};
      for (int a = 0; a < kDim; ++a) {
        for (int c = 0; c < kDim; ++c) acc += g_inv[a][c] * r[a][b][c][d];
      }
      ricci[b][d] = acc;
    }
  }
  return ricci;
}

template <class S>
S trace_with(const Mat4<S>& m, const Mat4<S>& g_inv) {
  S acc{};
  for (int i = 0; i < kDim; ++i) {
    for (int j = 0; j < kDim; ++j) acc += g_inv[i][j] * m[i][j];
  }
  return acc;
}

struct SecondOrderData {
  Mat4<double> g;
  Tensor3<double> dg;
  Tensor4<double> ddg;
};

SecondOrderData unpack(const Mat4<Jet<2>>& gj) {
  SecondOrderData d;
  for (int i = 0; i < kDim; ++i) {
    for (int j = 0; j < kDim; ++j) {
      const Jet<2>& c = gj[i][j];
      d.g[i][j] = c.value();
      for (int k = 0; k < kDim; ++k) {
        MultiIndex e{};
        e[k] = 1;
        d.dg[k][i][j] = c.partial(e);
        for (int l = 0; l < kDim; ++l) {
          MultiIndex e2{};
          ++e2[k];
          ++e2[l];
          d.ddg[k][l][i][j] = c.partial(e2);
        }
      }
    }
  }
  return d;
}

double full_norm4(const Tensor4<double>& t, const Mat4<double>& g_inv) {
  // Raise one index at a time: four passes of 4^5 work.
  Tensor4<double> a = t;
  Tensor4<double> b{};
  for (int slot = 0; slot < 4; ++slot) {
    for (int i = 0; i < kDim; ++i) {
      for (int j = 0; j < kDim; ++j) {
        for (int k = 0; k < kDim; ++k) {
          for (int l = 0; l < kDim; ++l) {
            double acc = 0.0;
            for (int m = 0; m < kDim; ++m) {
              switch (slot) {
                case 0: acc += g_inv[i][m] * a[m][j][k][l]; break;
                case 1: acc += g_inv[j][m] * a[i][m][k][l]; break;
                case 2: acc += g_inv[k][m] * a[i][j][m][l]; break;
                default: acc += g_inv[l][m] * a[i][j][k][m]; break;
              }
            }
            b[i][j][k][l] = acc;
          }
        }
      }
    }
    a = b;
  }
  double sum = 0.0;
  for (int i = 0; i < kDim; ++i) {
    for (int j = 0; j < kDim; ++j) {
      for (int k = 0; k < kDim; ++k) {
        for (int l = 0; l < kDim; ++l) sum += t[i][j][k][l] * a[i][j][k][l];
      }
    }
  }
  return sum;
}

double full_norm2(const Mat4<double>& m, const Mat4<double>& g_inv) {
  double sum = 0.0;
  for (int i = 0; i < kDim; ++i) {
    for (int j = 0; j < kDim; ++j) {
      double raised = 0.0;
      for (int k = 0; k < kDim; ++k) {
        for (int l = 0; l < kDim; ++l) raised += g_inv[i][k] * g_inv[j][l] * m[k][l];
      }
      sum += m[i][j] * raised;
    }
  }
  return sum;
}

// Laplacian of scalar curvature through a second-order jet of tau.
double laplacian_of_tau(const Mat4<Jet<4>>& gj4, const Mat4<double>& g_inv0,
                        const Tensor3<double>& gamma0) {
  Mat4<Jet<2>> g;
  Tensor3<Jet<2>> dg;
  Tensor4<Jet<2>> ddg;
  for (int i = 0; i < kDim; ++i) {
    for (int j = 0; j < kDim; ++j) {
      g[i][j] = gj4[i][j].truncate<2>();
      for (int k = 0; k < kDim; ++k) {
        const Jet<3> d1 = gj4[i][j].derivative(k);
        dg[k][i][j] = d1.truncate<2>();
        for (int l = 0; l < kDim; ++l) ddg[k][l][i][j] = d1.derivative(l);
      }
    }
  }
  const Mat4<Jet<2>> g_inv = jet_inverse(g, g_inv0);
  Tensor3<Jet<2>> first;
  Tensor3<Jet<2>> second;
  christoffel_from(g_inv, dg, first, second);
  const Tensor4<Jet<2>> r = riemann_from(ddg, first, second);
  const Mat4<Jet<2>> ricci = ricci_from(r, g_inv);
  const Jet<2> tau = trace_with(ricci, g_inv);

  std::array<double, kDim> grad{};
  for (int k = 0; k < kDim; ++k) {
    MultiIndex e{};
    e[k] = 1;
    grad[k] = tau.partial(e);
  }
  double lap = 0.0;
  for (int i = 0; i < kDim; ++i) {
    for (int j = 0; j < kDim; ++j) {
      MultiIndex e{};
      ++e[i];
      ++e[j];
      double hess = tau.partial(e);
      for (int k = 0; k < kDim; ++k) hess -= gamma0[k][i][j] * grad[k];
      lap += g_inv0[i][j] * hess;
    }
  }
  return lap;
}

}  // namespace

CurvatureInvariants CurvatureFrame::invariants() const {
  if (!laplacian_tau) {
    throw std::logic_error("curvature frame was computed without the scalar-curvature Laplacian");
  }
  return CurvatureInvariants{kDim, tau, norm_R2, norm_rho2, norm_W2, norm_rhoTilde2,
                             *laplacian_tau};
}

LocalGeometry local_geometry(const MetricField& metric, const ChartPoint& x) {
  const SecondOrderData d = unpack(metric.jet2_unchecked(x));
  LocalGeometry out;
  out.g = d.g;
  out.g_inv = fast_inverse(d.g);
  Tensor3<double> first;
  christoffel_from(out.g_inv, d.dg, first, out.gamma);
  out.riemann_lower = riemann_from(d.ddg, first, out.gamma);
  return out;
}

Tensor3<double> christoffel(const MetricField& metric, const ChartPoint& x, double max_condition) {
  const Mat4<Jet<1>> gj = metric.jet<1>(x);
  Mat4<double> g;
  Tensor3<double> dg;
  for (int i = 0; i < kDim; ++i) {
    for (int j = 0; j < kDim; ++j) {
      g[i][j] = gj[i][j].value();
      for (int k = 0; k < kDim; ++k) {
        MultiIndex e{};
        e[k] = 1;
        dg[k][i][j] = gj[i][j].partial(e);
      }
    }
  }
  const Mat4<double> g_inv = checked_inverse(g, max_condition);
  Tensor3<double> first;
  Tensor3<double> second;
  christoffel_from(g_inv, dg, first, second);
  return second;
}

CurvatureFrame curvature_frame(const MetricField& metric, const ChartPoint& x,
                               const FrameOptions& options) {
  CurvatureFrame f;
  f.point = x;

  Mat4<Jet<4>> gj4;
  Mat4<Jet<2>> gj2;
  if (options.laplacian) {
    gj4 = metric.jet<4>(x);
    for (int i = 0; i < kDim; ++i) {
      for (int j = 0; j < kDim; ++j) gj2[i][j] = gj4[i][j].truncate<2>();
    }
  } else {
    gj2 = metric.jet<2>(x);
  }

  const SecondOrderData d = unpack(gj2);
  f.g = d.g;
  f.g_inv = checked_inverse(d.g, options.max_condition);
  Tensor3<double> first;
  christoffel_from(f.g_inv, d.dg, first, f.gamma);
  f.riemann_lower = riemann_from(d.ddg, first, f.gamma);
  f.ricci = ricci_from(f.riemann_lower, f.g_inv);
  f.tau = trace_with(f.ricci, f.g_inv);

  constexpr double n = kDim;
  const double c1 = 1.0 / (n - 2.0);
  const double c2 = f.tau / ((n - 1.0) * (n - 2.0));
  const auto& g = f.g;
  const auto& rho = f.ricci;
  for (int a = 0; a < kDim; ++a) {
    for (int b = 0; b < kDim; ++b) {
      for (int c = 0; c < kDim; ++c) {
        for (int e = 0; e < kDim; ++e) {
          f.weyl_lower[a][b][c][e] =
              f.riemann_lower[a][b][c][e] -
              c1 * (rho[a][c] * g[b][e] + rho[b][e] * g[a][c] - rho[a][e] * g[b][c] -
                    rho[b][c] * g[a][e]) +
              c2 * (g[a][c] * g[b][e] - g[a][e] * g[b][c]);
        }
      }
    }
  }
  for (int i = 0; i < kDim; ++i) {
    for (int j = 0; j < kDim; ++j) f.traceless_ricci[i][j] = rho[i][j] - f.tau / n * g[i][j];
  }

  f.norm_R2 = full_norm4(f.riemann_lower, f.g_inv);
  f.norm_W2 = full_norm4(f.weyl_lower, f.g_inv);
  f.norm_rho2 = full_norm2(f.ricci, f.g_inv);
  f.norm_rhoTilde2 = full_norm2(f.traceless_ricci, f.g_inv);

  if (options.laplacian) f.laplacian_tau = laplacian_of_tau(gj4, f.g_inv, f.gamma);
  return f;
}

SpaceFormCheck check_space_form_pointwise(const CurvatureFrame& frame, double tol) {
  const double scale = 1.0 + frame.norm_R2;
  SpaceFormCheck out;
  out.is_space_form = frame.norm_W2 < tol * scale && frame.norm_rhoTilde2 < tol * scale;
  out.curvature = frame.tau / (kDim * (kDim - 1));
  return out;
}

double max_weyl_trace(const CurvatureFrame& frame) {
  const auto& w = frame.weyl_lower;
  const auto& gi = frame.g_inv;
  double worst = 0.0;
  // Contract index slots (p, q) for every pair p < q; the two free indices
  // run over the remaining slots in order.
  const std::array<std::array<int, 2>, 6> pairs{{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};
  for (const auto& pq : pairs) {
    std::array<int, 2> free{};
    int nf = 0;
    for (int s = 0; s < 4; ++s) {
      if (s != pq[0] && s != pq[1]) free[nf++] = s;
    }
    for (int u = 0; u < kDim; ++u) {
      for (int v = 0; v < kDim; ++v) {
        double acc = 0.0;
        for (int i = 0; i < kDim; ++i) {
          for (int j = 0; j < kDim; ++j) {
            std::array<int, 4> idx{};
            idx[pq[0]] = i;
            idx[pq[1]] = j;
            idx[free[0]] = u;
            idx[free[1]] = v;
            acc += gi[i][j] * w[idx[0]][idx[1]][idx[2]][idx[3]];
          }
        }
        worst = std::max(worst, std::abs(acc));
      }
    }
  }
  return worst;
}

}  // namespace geoball
