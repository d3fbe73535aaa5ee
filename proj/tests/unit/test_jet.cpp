#include <gtest/gtest.h>

#include <cmath>

#include "geoball/jet.hpp"

using namespace geoball;

namespace {

// f(x, y, z, w) = sin(x) exp(y) + z^3 w / (1 + x^2)
template <class T>
T sample_function(const std::array<T, 4>& v) {
  return sin(v[0]) * exp(v[1]) + v[2] * v[2] * v[2] * v[3] / (1.0 + v[0] * v[0]);
}

double plain(double x, double y, double z, double w) {
  return std::sin(x) * std::exp(y) + z * z * z * w / (1.0 + x * x);
}

}  // namespace

TEST(Jet, ValueMatchesPlainEvaluation) {
  const std::array<double, 4> p{0.3, -0.2, 0.7, 1.1};
  const auto j = sample_function(seed_variables<4>(p));
  EXPECT_NEAR(j.value(), plain(0.3, -0.2, 0.7, 1.1), 1e-15);
}

TEST(Jet, MixedPartialsMatchHandDerivatives) {
  const double x = 0.3, y = -0.2, z = 0.7, w = 1.1;
  const auto j = sample_function(seed_variables<4>({x, y, z, w}));
  // d/dx d/dy: cos(x) exp(y)
  EXPECT_NEAR(j.partial({1, 1, 0, 0}), std::cos(x) * std::exp(y), 1e-13);
  // d^3/dz^3: 6 w / (1 + x^2)
  EXPECT_NEAR(j.partial({0, 0, 3, 0}), 6.0 * w / (1.0 + x * x), 1e-13);
  // d^2/dz^2 d/dw: 6 z / (1 + x^2)
  EXPECT_NEAR(j.partial({0, 0, 2, 1}), 6.0 * z / (1.0 + x * x), 1e-13);
  // d^4/dx^4 of sin(x) exp(y) is sin(x) exp(y); the rational part too:
  // d^4/dx^4 1/(1+x^2) = 24 (5x^4 - 10x^2 + 1)/(1+x^2)^5
  const double q = 24.0 * (5 * std::pow(x, 4) - 10 * x * x + 1) / std::pow(1 + x * x, 5);
  EXPECT_NEAR(j.partial({4, 0, 0, 0}), std::sin(x) * std::exp(y) + z * z * z * w * q, 1e-11);
}

TEST(Jet, FiniteDifferenceAgreesOnSecondDerivatives) {
  const double x = 0.4, y = 0.1, z = -0.3, w = 0.8;
  const auto j = sample_function(seed_variables<2>({x, y, z, w}));
  const double h = 1e-4;
  const double fd = (plain(x + h, y, z + h, w) - plain(x + h, y, z - h, w) - plain(x - h, y, z + h, w) +
                     plain(x - h, y, z - h, w)) /
                    (4 * h * h);
  EXPECT_NEAR(j.partial({1, 0, 1, 0}), fd, 1e-6);
}

TEST(Jet, DerivativeLowersOrder) {
  const auto j = sample_function(seed_variables<4>({0.3, -0.2, 0.7, 1.1}));
  const Jet<3> dz = j.derivative(2);
  EXPECT_NEAR(dz.value(), j.partial({0, 0, 1, 0}), 1e-14);
  EXPECT_NEAR(dz.partial({0, 0, 2, 0}), j.partial({0, 0, 3, 0}), 1e-13);
  EXPECT_NEAR(dz.partial({1, 0, 1, 1}), j.partial({1, 0, 2, 1}), 1e-13);
}

TEST(Jet, TruncateKeepsLowOrderCoefficients) {
  const auto j = sample_function(seed_variables<4>({0.3, -0.2, 0.7, 1.1}));
  const Jet<2> t = j.truncate<2>();
  EXPECT_DOUBLE_EQ(t.partial({1, 1, 0, 0}), j.partial({1, 1, 0, 0}));
  EXPECT_DOUBLE_EQ(t.partial({0, 0, 0, 1}), j.partial({0, 0, 0, 1}));
}

TEST(Jet, ElementaryFunctionsInvertEachOther) {
  const auto v = seed_variables<4>({0.9, 0.2, 0.3, 0.4});
  const auto a = v[0] + 0.5 * v[1] * v[2] + v[3] * v[3];
  const auto round_trip = log(exp(a));
  for (int s = 0; s < Jet<4>::kSize; ++s) EXPECT_NEAR(round_trip[s], a[s], 1e-12);
  const auto sq = sqrt(a) * sqrt(a);
  for (int s = 0; s < Jet<4>::kSize; ++s) EXPECT_NEAR(sq[s], a[s], 1e-12);
  const auto one = a * reciprocal(a);
  EXPECT_NEAR(one.value(), 1.0, 1e-15);
  for (int s = 1; s < Jet<4>::kSize; ++s) EXPECT_NEAR(one[s], 0.0, 1e-12);
  const auto trig = sin(a) * sin(a) + cos(a) * cos(a);
  for (int s = 1; s < Jet<4>::kSize; ++s) EXPECT_NEAR(trig[s], 0.0, 1e-12);
}

TEST(Jet, PowMatchesRepeatedProduct) {
  const auto v = seed_variables<4>({1.3, 0.2, 0.3, 0.4});
  const auto a = v[0] + v[1] * v[2];
  const auto p = pow(a, 3.0);
  const auto q = a * a * a;
  for (int s = 0; s < Jet<4>::kSize; ++s) EXPECT_NEAR(p[s], q[s], 1e-12);
}
