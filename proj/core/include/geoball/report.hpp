#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "geoball/curvature.hpp"
#include "geoball/metric.hpp"

namespace geoball {

struct PointRow {
  ChartPoint point;
  CurvatureInvariants invariants;
  double a2 = 0.0;
  double a4 = 0.0;
};

struct RadiusRow {
  double r = 0.0;
  double measured = 0.0;
  double series = 0.0;
  double residual = 0.0;  // measured - series
};

// Everything a run writes. Summary lines are emitted verbatim, in order.
struct Report {
  std::string tool_version;
  std::vector<std::pair<std::string, std::string>> manifest_echo;
  std::vector<std::pair<std::string, std::string>> seeds;
  std::vector<std::string> summary;

  bool has_point_table = false;
  std::vector<PointRow> points;
  bool has_radius_table = false;
  std::vector<RadiusRow> radii;

  void line(const std::string& key, const std::string& value);
  void line(const std::string& key, double value);
};

// 17 significant digits, "%.17g".
std::string format_real(double v);

const char* tool_version();

inline constexpr const char* kPointsHeader =
    "index\tx1\tx2\tx3\tx4\ttau\tnorm_R2\tnorm_rho2\tnorm_W2\tnorm_rhoTilde2\tlaplacian_tau\ta2\ta4";
inline constexpr const char* kRadiiHeader = "r\tV_measured\tV_series\tresidual";

std::string summary_text(const Report& report);
std::string points_tsv(const Report& report);
std::string radii_tsv(const Report& report);

// summary.txt always; points.tsv and radii.tsv only when their table was
// produced. Throws std::runtime_error when the directory is not writable.
void write_report(const Report& report, const std::filesystem::path& dir);

}  // namespace geoball
