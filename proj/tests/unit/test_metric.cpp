#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "geoball/error.hpp"
#include "geoball/metric.hpp"
#include "oracles.hpp"

using namespace geoball;

namespace {
constexpr double kPi = std::numbers::pi;

std::vector<MetricField> all_metrics() {
  return {make_round_sphere(1.3),
          make_flat_torus({2.0, 3.0, 4.0, 5.0}),
          make_hyperbolic(0.8),
          make_product_spheres(1.0, 0.6),
          make_conformal_perturbation(make_flat_torus({kPi, kPi, 2 * kPi, 2 * kPi}), {ProfileKind::kWave, 0.2}),
          make_conformal_perturbation(make_round_sphere(1.0), {ProfileKind::kHeight, 0.15}),
          make_conformal_perturbation(make_round_sphere(1.0), {ProfileKind::kBump, 0.1})};
}
}  // namespace

TEST(Metric, FirstDerivativesMatchFiniteDifferences) {
  for (const MetricField& m : all_metrics()) {
    for (const ChartPoint& x : sample_chart_points(m, 10, 2)) {
      const DerivativeBlock d = metric_derivatives(m, x, 1);
      for (int a = 0; a < kDim; ++a) {
        const auto fd = oracle::d_metric(m, x, a, 1e-3);
        for (int i = 0; i < kDim; ++i) {
          for (int j = 0; j < kDim; ++j) {
            EXPECT_NEAR(d.partial(i, j, {a}), fd(i, j), 1e-8 * (1 + std::abs(fd(i, j)))) << m.name();
          }
        }
      }
    }
  }
}

TEST(Metric, FourthOrderJetIsSymmetricInAxes) {
  const MetricField m = make_conformal_perturbation(make_round_sphere(1.0), {ProfileKind::kBump, 0.3});
  const DerivativeBlock d = metric_derivatives(m, m.reference_point(), 4);
  EXPECT_DOUBLE_EQ(d.partial(0, 0, {0, 1, 2, 3}), d.partial(0, 0, {3, 2, 1, 0}));
  EXPECT_DOUBLE_EQ(d.partial(1, 2, {0, 0, 1, 3}), d.partial(2, 1, {3, 0, 1, 0}));
}

TEST(Metric, SecondDerivativeMatchesDifferenceOfFirst) {
  const MetricField m = make_product_spheres(1.0, 0.6);
  const ChartPoint x{{1.1, 0.4, 0.9, 2.0}};
  const DerivativeBlock d = metric_derivatives(m, x, 2);
  const double h = 1e-4;
  ChartPoint xp = x, xm = x;
  xp.coords[0] += h;
  xm.coords[0] -= h;
  const double fd = (metric_derivatives(m, xp, 1).partial(1, 1, {0}) -
                     metric_derivatives(m, xm, 1).partial(1, 1, {0})) / (2 * h);
  EXPECT_NEAR(d.partial(1, 1, {0, 0}), fd, 1e-7);
}

TEST(Metric, RejectsTooHighDerivativeOrder) {
  const MetricField m = make_round_sphere(1.0);
  try {
    (void)metric_derivatives(m, m.reference_point(), 5);
    FAIL() << "expected GeometryError";
  } catch (const GeometryError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kDerivativeOrder);
  }
  const DerivativeBlock d = metric_derivatives(m, m.reference_point(), 2);
  EXPECT_THROW((void)d.partial(0, 0, {0, 1, 2}), GeometryError);
}

TEST(Metric, OutsideChartIsAnError) {
  const MetricField s = make_round_sphere(1.0);
  EXPECT_THROW((void)s.components(ChartPoint{{0.0, 1.0, 1.0, 1.0}}), GeometryError);
  EXPECT_THROW((void)s.components(ChartPoint{{1.0, kPi, 1.0, 1.0}}), GeometryError);
  const MetricField h = make_hyperbolic(1.0);
  EXPECT_THROW((void)h.components(ChartPoint{{0.6, 0.6, 0.6, 0.0}}), GeometryError);
  EXPECT_NO_THROW((void)h.components(ChartPoint{{0.5, 0.5, 0.5, 0.0}}));
}

TEST(Metric, PeriodicAxesWrapAndRepeat) {
  const MetricField t = make_conformal_perturbation(make_flat_torus({2.0, 3.0, 4.0, 5.0}), {ProfileKind::kWave, 0.2});
  const ChartPoint x{{0.3, 0.4, 0.5, 0.6}};
  const ChartPoint y{{0.3 + 2.0, 0.4 - 3.0, 0.5 + 8.0, 0.6}};
  const auto gx = t.components(x);
  const auto gy = t.components(y);
  for (int i = 0; i < kDim; ++i) EXPECT_NEAR(gx[i][i], gy[i][i], 1e-12);
  const ChartPoint w = t.domain().wrap(y);
  for (int i = 0; i < kDim; ++i) EXPECT_NEAR(w[i], x[i], 1e-12);
}

TEST(Metric, ClosedFormComponents) {
  const MetricField s = make_round_sphere(2.0);
  const ChartPoint x{{0.5, 1.0, 1.5, 0.2}};
  const auto g = s.components(x);
  EXPECT_NEAR(g[0][0], 4.0, 1e-15);
  EXPECT_NEAR(g[1][1], 4.0 * std::pow(std::sin(0.5), 2), 1e-14);
  EXPECT_NEAR(g[3][3], 4.0 * std::pow(std::sin(0.5) * std::sin(1.0) * std::sin(1.5), 2), 1e-14);
  EXPECT_EQ(g[0][1], 0.0);

  const MetricField h = make_hyperbolic(1.0);
  const auto gh = h.components(ChartPoint{{0.3, 0.0, 0.0, 0.0}});
  EXPECT_NEAR(gh[2][2], 4.0 / std::pow(1 - 0.09, 2), 1e-14);
}

TEST(Metric, SamplingIsDeterministicAndInside) {
  for (const MetricField& m : all_metrics()) {
    const auto a = sample_chart_points(m, 40, 17);
    const auto b = sample_chart_points(m, 40, 17);
    ASSERT_EQ(a, b);
    for (const ChartPoint& x : a) EXPECT_TRUE(m.domain().contains(x)) << m.name();
    EXPECT_NE(sample_chart_points(m, 5, 18), sample_chart_points(m, 5, 17));
  }
}

TEST(Metric, CatalogAddressesEveryFactory) {
  EXPECT_EQ(metric_catalog().size(), 6u);
  for (const CatalogEntry& e : metric_catalog()) {
    std::vector<double> params(e.parameters.size(), 1.0);
    if (e.name == "perturbed_torus" || e.name == "perturbed_sphere") params.back() = 0.1;
    EXPECT_NO_THROW((void)make_catalog_metric(e.name, params)) << e.name;
    params.push_back(1.0);
    EXPECT_THROW((void)make_catalog_metric(e.name, params), std::invalid_argument) << e.name;
  }
  EXPECT_THROW((void)make_catalog_metric("klein_bottle", std::vector<double>{}), std::invalid_argument);
  EXPECT_THROW((void)make_catalog_metric("sphere", std::vector<double>{-1.0}), std::invalid_argument);
  EXPECT_THROW(make_flat_torus({1.0, 0.0, 1.0, 1.0}), std::invalid_argument);
}

TEST(Metric, WaveProfileNeedsPeriodicChart) {
  EXPECT_THROW(make_conformal_perturbation(make_round_sphere(1.0), {ProfileKind::kWave, 0.1}),
               std::invalid_argument);
}
