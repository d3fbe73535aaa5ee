#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "geoball/ballvol.hpp"
#include "geoball/metric.hpp"
#include "geoball/spaceform.hpp"

namespace geoball {

// Run description. Text format, one `key = value` per line:
//
//   # comment
//   manifold = sphere(1)
//   analyses = invariants, theorem1
//   points.count = 50
//   points.seed = 7
//   model = sphere
//   numeric.grid = 16
//
// Keys are case-sensitive, may appear once, and unknown keys are errors.
// See docs/manifest.md for the full grammar.
enum class Analysis { kInvariants, kBallVolumes, kFitExpansion, kGaussBonnet, kClassify, kTheorem1 };

const char* to_string(Analysis a);
std::optional<Analysis> analysis_from_string(const std::string& name);

struct Manifest {
  std::string manifold_name;
  std::vector<double> manifold_params;
  std::vector<Analysis> analyses;

  std::vector<ChartPoint> points;  // explicit list, if given
  std::optional<int> point_count;
  std::uint64_t point_seed = 0;
  std::optional<ChartPoint> center;

  std::vector<double> radii;  // explicit list, if given
  std::optional<double> radii_min;
  std::optional<double> radii_max;
  std::optional<int> radii_count;
  bool radii_log = true;

  std::optional<ModelSpace> model;

  double ode_tol = 1e-10;
  int grid_nodes = 16;
  SphereRuleSpec sphere_rule;
  double tol = 1e-8;
  double fit_tol = 1e-6;
  int fit_nuisance = 1;
  bool printed_variant = false;

  std::filesystem::path output = "geoball-report";

  // Normalised `key = value` lines in file order, echoed into reports.
  std::vector<std::pair<std::string, std::string>> entries;

  // Explicit radii, or the generated grid (default: 10 log-spaced in [0.05, 0.5]).
  std::vector<double> resolved_radii() const;
};

class ManifestError : public std::runtime_error {
 public:
  ManifestError(int line, std::string key, const std::string& message);

  int line() const { return line_; }
  const std::string& key() const { return key_; }

 private:
  int line_;
  std::string key_;
};

Manifest parse_manifest(std::string_view text);
Manifest load_manifest(const std::filesystem::path& path);

// Every key the parser accepts.
const std::vector<std::string>& manifest_keys();

}  // namespace geoball
