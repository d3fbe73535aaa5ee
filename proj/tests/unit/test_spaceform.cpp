#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "geoball/spaceform.hpp"

using namespace geoball;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST(SpaceForm, Classification) {
  struct Case {
    MetricField m;
    SpaceFormKind kind;
    double curvature;
  };
  const std::vector<Case> cases = {
      {make_round_sphere(2.0), SpaceFormKind::kSphereLike, 0.25},
      {make_hyperbolic(1.0), SpaceFormKind::kHyperbolicLike, -1.0},
      {make_flat_torus({1, 2, 3, 4}), SpaceFormKind::kFlat, 0.0},
      {make_product_spheres(1.0, 1.0), SpaceFormKind::kNone, 1.0 / 3.0},
      {make_conformal_perturbation(make_round_sphere(1.0), {ProfileKind::kHeight, 0.1}), SpaceFormKind::kNone, 0.0},
  };
  for (const Case& c : cases) {
    const auto pts = sample_chart_points(c.m, 15, 1);
    const SpaceFormVerdict v = classify_space_form(c.m, pts, 1e-8);
    EXPECT_EQ(v.model, c.kind) << c.m.name();
    EXPECT_EQ(v.samples, 15);
    if (c.kind != SpaceFormKind::kNone || c.curvature != 0.0) EXPECT_NEAR(v.curvature, c.curvature, 1e-9) << c.m.name();
  }
}

TEST(SpaceForm, ModelConstants) {
  EXPECT_EQ(model_scalar_curvature(ModelSpace::kSphere), 12.0);
  EXPECT_EQ(model_scalar_curvature(ModelSpace::kHyperbolic), -12.0);
  EXPECT_EQ(model_from_string("hyperbolic"), ModelSpace::kHyperbolic);
  EXPECT_FALSE(model_from_string("Sphere"));
  EXPECT_EQ(hyperbolic_chi_formula(4 * kPi * kPi / 3), 1.0);
  EXPECT_THROW(hyperbolic_chi_formula(-1.0), std::invalid_argument);
}

TEST(SpaceForm, SphereBranch) {
  const MetricField m = make_round_sphere(1.0);
  const TheoremReport r = run_theorem1(m, ModelSpace::kSphere, sample_chart_points(m, 10, 2), {});
  EXPECT_EQ(r.volume_match, HypothesisStatus::kPass);
  EXPECT_EQ(r.euler_condition, HypothesisStatus::kPass);
  EXPECT_TRUE(r.conclusion_reached);
  EXPECT_EQ(r.conclusion, "constant sectional curvature 1");
  EXPECT_EQ(r.sphere_vs_projective, "S4");
  EXPECT_TRUE(r.conclusion_consistent);
  EXPECT_TRUE(r.failed_hypotheses.empty());
}

TEST(SpaceForm, WrongModelFailsOnScalarCurvature) {
  const MetricField m = make_round_sphere(1.0);
  const TheoremReport r = run_theorem1(m, ModelSpace::kHyperbolic, sample_chart_points(m, 3, 2), {});
  EXPECT_EQ(r.volume_match, HypothesisStatus::kFail);
  ASSERT_FALSE(r.failed_hypotheses.empty());
  EXPECT_NE(r.failed_hypotheses.front().find("tau - tau_model"), std::string::npos);
  EXPECT_FALSE(r.conclusion_reached);
}

TEST(SpaceForm, ProductSpheresFailOnWeylBalance) {
  // tau(S^2(r) x S^2(r)) = 4/r^2 equals 12 at r^2 = 1/3, so only the r^4 term fails.
  const MetricField m = make_product_spheres(std::sqrt(1.0 / 3.0), std::sqrt(1.0 / 3.0));
  const TheoremReport r = run_theorem1(m, ModelSpace::kSphere, std::vector{m.reference_point()}, {});
  EXPECT_EQ(r.volume_match, HypothesisStatus::kFail);
  ASSERT_FALSE(r.failed_hypotheses.empty());
  EXPECT_NE(r.failed_hypotheses.front().find("-3|W|^2 + 2|rhoTilde|^2"), std::string::npos);
}

TEST(SpaceForm, HyperbolicBranchUsesSyntheticEulerCheck) {
  const MetricField m = make_hyperbolic(1.0);
  const TheoremReport r = run_theorem1(m, ModelSpace::kHyperbolic, sample_chart_points(m, 5, 2), {});
  EXPECT_EQ(r.euler_condition, HypothesisStatus::kNotEvaluable);
  EXPECT_TRUE(r.synthetic_euler_check);
  EXPECT_TRUE(r.synthetic_euler_check_passed);
  EXPECT_TRUE(r.conclusion_reached);
  EXPECT_TRUE(r.conclusion_consistent);
}

TEST(SpaceForm, FlatBranch) {
  const MetricField m = make_flat_torus({2, 2, 2, 2});
  const TheoremReport r = run_theorem1(m, ModelSpace::kFlat, sample_chart_points(m, 5, 2), {});
  EXPECT_TRUE(r.conclusion_reached);
  EXPECT_EQ(r.conclusion, "M is flat");
  EXPECT_NEAR(r.gauss_bonnet->chi_form4, 0.0, 1e-12);
}
