#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "geoball/ballvol.hpp"
#include "geoball/error.hpp"
#include "geoball/gray.hpp"
#include "geoball/quadrature.hpp"

using namespace geoball;

namespace {
constexpr double kPi = std::numbers::pi;

Vec4 unit_direction(const MetricField& m, const ChartPoint& p, std::array<double, 4> d) {
  double n = 0;
  for (double v : d) n += v * v;
  const Mat4<double> b = orthonormal_basis(m.components(p));
  Vec4 u{};
  for (int i = 0; i < kDim; ++i)
    for (int a = 0; a < kDim; ++a) u[i] += b[i][a] * d[a] / std::sqrt(n);
  return u;
}

// Ball volume in S^2(a) x S^2(b) as the double integral of the two geodesic
// circle lengths over the quarter disc x^2 + y^2 <= r^2.
double product_ball_oracle(double a, double b, double r) {
  const Rule1D qx = gauss_legendre(60, 0.0, r);
  double s = 0;
  for (std::size_t i = 0; i < qx.size(); ++i) {
    const double x = qx.nodes[i];
    const double ymax = std::sqrt(r * r - x * x);
    const Rule1D qy = gauss_legendre(60, 0.0, ymax);
    for (std::size_t j = 0; j < qy.size(); ++j) {
      const double y = qy.nodes[j];
      s += qx.weights[i] * qy.weights[j] * (2 * kPi * a * std::sin(x / a)) * (2 * kPi * b * std::sin(y / b));
    }
  }
  return s;
}
}  // namespace

TEST(BallVol, OrthonormalBasis) {
  const MetricField m = make_conformal_perturbation(make_round_sphere(1.0), {ProfileKind::kBump, 0.3});
  const ChartPoint p{{1.0, 1.2, 1.4, 0.5}};
  const auto g = m.components(p);
  const auto b = orthonormal_basis(g);
  for (int a = 0; a < 4; ++a)
    for (int c = 0; c < 4; ++c) {
      double s = 0;
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) s += b[i][a] * g[i][j] * b[j][c];
      EXPECT_NEAR(s, a == c ? 1.0 : 0.0, 1e-13);
    }
}

TEST(BallVol, FlatGeodesicIsStraight) {
  const MetricField t = make_flat_torus({2.0, 2.0, 2.0, 2.0});
  const ChartPoint p{{1.0, 1.0, 1.0, 1.0}};
  const Vec4 u{0.5, 0.5, 0.5, 0.5};
  const std::array<double, 2> times{0.5, 1.5};
  const auto s = shoot_geodesic(t, p, u, 1.5, times);
  ASSERT_EQ(s.size(), 2u);
  EXPECT_NEAR(s[0].position[0], 1.25, 1e-13);
  EXPECT_NEAR(s[1].position[0], 1.75, 1e-13);
  EXPECT_NEAR(s[1].density(), 1.5 * 1.5 * 1.5, 1e-12);
  EXPECT_NEAR(s[1].volume_integral, std::pow(1.5, 4) / 4, 1e-12);
}

TEST(BallVol, PeriodicWrapKeepsPositionInBox) {
  const MetricField t = make_flat_torus({1.0, 1.0, 1.0, 1.0});
  const auto s = shoot_geodesic(t, ChartPoint{{0.5, 0.5, 0.5, 0.5}}, Vec4{1, 0, 0, 0}, 2.25);
  EXPECT_NEAR(s.back().position[0], 0.75, 1e-12);
}

TEST(BallVol, SphereJacobiDeterminantIsSineCubed) {
  const MetricField s = make_round_sphere(1.0);
  const ChartPoint p = s.reference_point();
  for (auto d : {std::array<double, 4>{1, 0, 0, 0}, std::array<double, 4>{0.3, -0.5, 0.2, 0.7}}) {
    const Vec4 u = unit_direction(s, p, d);
    for (double t : {0.2, 0.9, 1.4}) {
      EXPECT_NEAR(volume_density(s, p, u, t), std::pow(std::sin(t), 3), 1e-10) << t;
    }
  }
}

TEST(BallVol, GeodesicStaysUnitSpeedAndFrameParallel) {
  const MetricField m = make_conformal_perturbation(make_round_sphere(1.0), {ProfileKind::kHeight, 0.2});
  const ChartPoint p = m.reference_point();
  const Vec4 u = unit_direction(m, p, {0.2, 0.4, -0.6, 0.3});
  const auto st = shoot_geodesic(m, p, u, 0.8).back();
  const auto g = m.components(st.position);
  auto ip = [&](const Vec4& a, const Vec4& b) {
    double s = 0;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) s += g[i][j] * a[i] * b[j];
    return s;
  };
  EXPECT_NEAR(ip(st.velocity, st.velocity), 1.0, 1e-9);
  for (int a = 0; a < 3; ++a) {
    EXPECT_NEAR(ip(st.frame[a], st.velocity), 0.0, 1e-9);
    for (int b = 0; b < 3; ++b) EXPECT_NEAR(ip(st.frame[a], st.frame[b]), a == b ? 1.0 : 0.0, 1e-9);
  }
}

TEST(BallVol, RejectsNonUnitDirection) {
  const MetricField s = make_round_sphere(1.0);
  EXPECT_THROW(shoot_geodesic(s, s.reference_point(), Vec4{2, 0, 0, 0}, 0.5), std::invalid_argument);
}

TEST(BallVol, LeavingTheChartIsReported) {
  // Straight through the pole of the hyperspherical chart.
  const MetricField s = make_round_sphere(1.0);
  try {
    (void)shoot_geodesic(s, s.reference_point(), Vec4{-1, 0, 0, 0}, 2.0);
    FAIL() << "expected GeometryError";
  } catch (const GeometryError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kChartExit);
  }
}

TEST(BallVol, RadiusPastConjugatePointIsReported) {
  const MetricField s = make_round_sphere(1.0);
  BallConfig cfg;
  cfg.rule.n_polar = cfg.rule.n_middle = cfg.rule.n_azimuth = 2;
  cfg.estimate_error = false;
  const std::array<double, 2> radii{1.0, 3.5};
  const BallVolumeSet set = ball_volumes(s, s.reference_point(), radii, cfg);
  EXPECT_EQ(set.estimates.size(), 1u);
  ASSERT_TRUE(set.first_conjugate);
  // End of the first accepted step past the zero of det A.
  EXPECT_GE(*set.first_conjugate, kPi - 1e-9);
  EXPECT_LT(*set.first_conjugate, kPi + 0.05);
  try {
    (void)ball_volume(s, s.reference_point(), 3.5, cfg);
    FAIL() << "expected GeometryError";
  } catch (const GeometryError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kConjugatePoint);
  }
}

TEST(BallVol, ModelSpaceVolumes) {
  const MetricField s = make_round_sphere(2.0);
  for (double r : {0.3, 1.0, 2.5}) {
    EXPECT_NEAR(ball_volume(s, s.reference_point(), r).value / model_ball_volume_exact(0.25, r), 1.0, 1e-9);
  }
  const MetricField h = make_hyperbolic(1.0);
  EXPECT_NEAR(ball_volume(h, h.reference_point(), 0.7).value / model_ball_volume_exact(-1.0, 0.7), 1.0, 1e-9);
  // Off-centre point of the Poincare ball: homogeneity.
  EXPECT_NEAR(ball_volume(h, ChartPoint{{0.2, -0.1, 0.3, 0.0}}, 0.7).value / model_ball_volume_exact(-1.0, 0.7),
              1.0, 1e-8);
}

TEST(BallVol, ProductOfSpheresMatchesDoubleIntegral) {
  for (auto [a, b] : {std::pair{1.0, 1.0}, std::pair{1.0, 0.6}}) {
    const MetricField m = make_product_spheres(a, b);
    for (double r : {0.4, 0.9}) {
      const double got = ball_volume(m, m.reference_point(), r).value;
      EXPECT_NEAR(got / product_ball_oracle(a, b, r), 1.0, 1e-7) << a << " " << b << " " << r;
    }
  }
}

TEST(BallVol, LowDiscrepancyRuleConvergesToSameVolume) {
  const MetricField m = make_product_spheres(1.0, 0.6);
  BallConfig cfg;
  cfg.rule.kind = SphereRuleSpec::Kind::kLowDiscrepancy;
  cfg.rule.pairs = 2000;
  cfg.estimate_error = false;
  const double got = ball_volume(m, m.reference_point(), 0.5, cfg).value;
  EXPECT_NEAR(got / product_ball_oracle(1.0, 0.6, 0.5), 1.0, 2e-3);
}

TEST(BallVol, ErrorEstimateBoundsActualError) {
  const MetricField m = make_product_spheres(1.0, 0.6);
  BallConfig cfg;
  cfg.rule.n_polar = 4;
  cfg.rule.n_middle = 4;
  cfg.rule.n_azimuth = 8;
  const BallVolumeEstimate e = ball_volume(m, m.reference_point(), 0.9, cfg);
  EXPECT_LE(std::abs(e.value - product_ball_oracle(1.0, 0.6, 0.9)), e.quadrature_error_estimate);
  EXPECT_EQ(e.directions_used, 4 * 4 * 8);
}

TEST(BallVol, WorkerCountDoesNotChangeBits) {
  const MetricField m = make_conformal_perturbation(make_round_sphere(1.0), {ProfileKind::kBump, 0.2});
  const std::array<double, 3> radii{0.2, 0.4, 0.6};
  BallConfig a;
  a.workers = 1;
  BallConfig b = a;
  b.workers = 5;
  const auto va = ball_volumes(m, m.reference_point(), radii, a);
  const auto vb = ball_volumes(m, m.reference_point(), radii, b);
  ASSERT_EQ(va.estimates.size(), vb.estimates.size());
  for (std::size_t i = 0; i < va.estimates.size(); ++i) {
    EXPECT_EQ(va.estimates[i].value, vb.estimates[i].value);
    EXPECT_EQ(va.estimates[i].quadrature_error_estimate, vb.estimates[i].quadrature_error_estimate);
  }
}

TEST(BallVol, FitRecoversSyntheticCoefficients) {
  std::vector<double> r, v;
  for (int i = 0; i < 10; ++i) {
    const double x = 0.05 + 0.05 * i;
    r.push_back(x);
    v.push_back(leading_ball_volume(4, x) * (1 - 0.2 * x * x + 0.03 * std::pow(x, 4) + 0.01 * std::pow(x, 6)));
  }
  const ExpansionFit f = fit_series(4, r, v, 1);
  EXPECT_NEAR(f.a2, -0.2, 1e-10);
  EXPECT_NEAR(f.a4, 0.03, 1e-9);
  ASSERT_EQ(f.nuisance.size(), 1u);
  EXPECT_NEAR(f.nuisance[0], 0.01, 1e-8);
  EXPECT_LT(f.residual_rms, 1e-13);
  EXPECT_THROW(fit_series(4, std::span(r).first(3), std::span(v).first(3), 1), std::invalid_argument);
}

TEST(BallVol, FitOnMeasuredHyperbolicVolumes) {
  const MetricField h = make_hyperbolic(1.0);
  std::vector<double> radii;
  for (int i = 0; i < 10; ++i) radii.push_back(0.05 * std::pow(10.0, i / 9.0));
  FitConfig cfg;
  cfg.ball.ode_tol = 1e-12;
  cfg.nuisance_terms = 2;
  const ExpansionFit f = fit_expansion(h, h.reference_point(), radii, cfg);
  EXPECT_NEAR(f.a2, 1.0 / 3.0, 1e-6);
  EXPECT_NEAR(f.a4, 13.0 / 240.0, 1e-4);
  EXPECT_THROW(fit_expansion(h, h.reference_point(), std::span(radii).first(5), cfg), std::invalid_argument);
}

TEST(BallVol, LogLogSlope) {
  std::vector<double> x{0.1, 0.2, 0.4, 0.8}, y;
  for (double v : x) y.push_back(-3.0 * std::pow(v, 6));
  EXPECT_NEAR(loglog_slope(x, y), 6.0, 1e-12);
}
