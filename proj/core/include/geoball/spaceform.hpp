#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "geoball/curvature.hpp"
#include "geoball/gaussbonnet.hpp"
#include "geoball/gray.hpp"
#include "geoball/metric.hpp"

namespace geoball {

// Comparison model for the ball-volume hypothesis: the flat torus, the unit
// sphere or unit hyperbolic space.
enum class ModelSpace { kFlat = 1, kSphere = 2, kHyperbolic = 3 };

const char* to_string(ModelSpace model);
std::optional<ModelSpace> model_from_string(const std::string& name);
double model_curvature(ModelSpace model);
double model_scalar_curvature(ModelSpace model);  // 0, 12, -12

enum class SpaceFormKind { kFlat, kSphereLike, kHyperbolicLike, kNone };
const char* to_string(SpaceFormKind kind);

struct SpaceFormVerdict {
  bool is_space_form = false;
  double curvature = 0.0;  // mean tau / 12, reported even when not a space form
  SpaceFormKind model = SpaceFormKind::kNone;
  double max_W2 = 0.0;
  double max_rhoTilde2 = 0.0;
  double tau_min = 0.0;
  double tau_max = 0.0;
  double tolerance = 0.0;
  int samples = 0;
};

// Every sample passes check_space_form_pointwise and the spread of tau stays
// below tol * (1 + max |R|^2).
SpaceFormVerdict classify_space_form(const MetricField& metric,
                                     std::span<const ChartPoint> samples, double tol,
                                     int workers = 0);

struct Tolerances {
  double analytic = 1e-8;  // zero-tests on closed-form curvature quantities
  double fitted = 1e-6;    // zero-tests on quadrature and fitted quantities
};

enum class HypothesisStatus { kPass, kFail, kNotEvaluable };
const char* to_string(HypothesisStatus status);

struct SampleCheck {
  ChartPoint point;
  CurvatureInvariants invariants;
  VolumeMatch match;
};

struct TheoremReport {
  ModelSpace branch = ModelSpace::kFlat;
  std::vector<SampleCheck> samples;

  // Order-r^4 agreement of V_M(p, r) with the model at every sample.
  HypothesisStatus volume_match = HypothesisStatus::kFail;
  // Branch 1: chi >= 0. Branches 2 and 3: 32 pi^2 chi >= 24 vol.
  HypothesisStatus euler_condition = HypothesisStatus::kNotEvaluable;
  std::optional<GaussBonnetResult> gauss_bonnet;
  std::optional<double> euler_slack;    // 32 pi^2 chi - 24 vol (branches 2, 3)
  std::optional<double> balance_residual;
  // Non-compact charts (hyperbolic ball): the chi/vol relation is exercised
  // only on synthetic (chi, vol) pairs.
  bool synthetic_euler_check = false;
  bool synthetic_euler_check_passed = false;

  bool conclusion_reached = false;
  std::string conclusion;
  std::optional<std::string> sphere_vs_projective;
  std::vector<std::string> failed_hypotheses;

  // Independent classification of the same samples, used to confirm the conclusion.
  SpaceFormVerdict verdict;
  bool conclusion_consistent = false;
};

TheoremReport run_theorem1(const MetricField& metric, ModelSpace branch,
                           std::span<const ChartPoint> samples, const GridSpec& grid,
                           const Tolerances& tol = {}, int workers = 0);

// chi of a compact quotient of unit hyperbolic 4-space with the given volume.
double hyperbolic_chi_formula(double volume);

// Volume of the unit round 4-sphere, 8 pi^2 / 3.
double unit_sphere_volume();

}  // namespace geoball
