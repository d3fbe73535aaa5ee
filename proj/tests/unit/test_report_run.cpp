#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "geoball/run.hpp"

using namespace geoball;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("geoball-unit-" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void put(const fs::path& p, const std::string& text) { std::ofstream(p, std::ios::binary) << text; }

}  // namespace

TEST(Report, RealsRoundTrip) {
  for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, 13.0 / 240.0}) {
    EXPECT_EQ(std::strtod(format_real(v).c_str(), nullptr), v);
  }
  EXPECT_EQ(format_real(0.5), "0.5");
}

TEST(Report, TableLayout) {
  Report r;
  r.tool_version = "x";
  r.radii.push_back({0.5, 1.0, 0.75, 0.25});
  EXPECT_EQ(radii_tsv(r), "r\tV_measured\tV_series\tresidual\n0.5\t1\t0.75\t0.25\n");
  r.points.push_back({ChartPoint{{1, 2, 3, 4}}, {}, -0.5, 0.125});
  const std::string p = points_tsv(r);
  EXPECT_EQ(p.substr(0, p.find('\n')), kPointsHeader);
  EXPECT_EQ(std::count(p.begin(), p.end(), '\t'), 2 * 12);
}

TEST(Run, EmptyAnalysisListWritesSummaryOnly) {
  const fs::path dir = scratch("empty");
  put(dir / "m.txt", "manifold = sphere(1)\noutput = " + (dir / "out").string() + "\n");
  // A stale table from an earlier run must disappear.
  fs::create_directories(dir / "out");
  put(dir / "out" / "radii.tsv", "old");
  std::string diag;
  EXPECT_EQ(run_manifest(dir / "m.txt", std::nullopt, &diag), kExitOk) << diag;
  EXPECT_TRUE(fs::exists(dir / "out" / "summary.txt"));
  EXPECT_FALSE(fs::exists(dir / "out" / "radii.tsv"));
  EXPECT_FALSE(fs::exists(dir / "out" / "points.tsv"));
  const std::string s = slurp(dir / "out" / "summary.txt");
  EXPECT_NE(s.find("manifold = sphere(1)"), std::string::npos);
  EXPECT_NE(s.find("exit_status: 0"), std::string::npos);
}

TEST(Run, ExitCodes) {
  const fs::path dir = scratch("codes");
  put(dir / "bad.txt", "manifold = sphere(1)\nnumeric.grdi = 4\n");
  std::string diag;
  EXPECT_EQ(run_manifest(dir / "bad.txt", dir / "o1", &diag), kExitParseError);
  EXPECT_NE(diag.find("line 2"), std::string::npos);
  EXPECT_EQ(run_manifest(dir / "missing.txt", dir / "o1"), kExitParseError);

  put(dir / "far.txt",
      "manifold = sphere(1)\nanalyses = ball_volumes\nradii = 1, 4\nnumeric.sphere_rule = product(2,2,2)\n");
  EXPECT_EQ(run_manifest(dir / "far.txt", dir / "o2", &diag), kExitNumericalFailure);
  EXPECT_NE(diag.find("conjugate"), std::string::npos);
  EXPECT_NE(slurp(dir / "o2" / "summary.txt").find("exit_status: 3"), std::string::npos);

  put(dir / "prod.txt",
      "manifold = product_spheres(1,1)\nanalyses = theorem1\nmodel = sphere\nnumeric.grid = 8\n");
  EXPECT_EQ(run_manifest(dir / "prod.txt", dir / "o3"), kExitHypothesisFailed);
  EXPECT_NE(slurp(dir / "o3" / "summary.txt").find("failed_hypothesis: volume_match"), std::string::npos);

  // Output path below a regular file cannot be created.
  put(dir / "blocker", "x");
  put(dir / "ok.txt", "manifold = sphere(1)\n");
  EXPECT_EQ(run_manifest(dir / "ok.txt", dir / "blocker" / "sub", &diag), kExitNumericalFailure);
}

TEST(Run, SectionsAndTables) {
  Manifest m = parse_manifest(
      "manifold = sphere(1)\n"
      "analyses = invariants, fit_expansion, classify\n"
      "points.count = 3\n"
      "points.seed = 11\n"
      "numeric.printed_variant = true\n");
  const RunOutcome out = execute_manifest(m, 2);
  EXPECT_EQ(out.exit_code, kExitOk) << out.error;
  EXPECT_EQ(out.report.points.size(), 3u);
  EXPECT_EQ(out.report.radii.size(), 10u);
  const std::string s = summary_text(out.report);
  EXPECT_LT(s.find("[invariants]"), s.find("[fit_expansion]"));
  EXPECT_LT(s.find("[fit_expansion]"), s.find("[classify]"));
  EXPECT_NE(s.find("points.seed: 11"), std::string::npos);
  EXPECT_NE(s.find("a4_printed_variant[0]: 0.00138888888"), std::string::npos);
  EXPECT_NE(s.find("model: sphere-like"), std::string::npos);
  for (const PointRow& p : out.report.points) {
    EXPECT_NEAR(p.invariants.tau, 12.0, 1e-10);
    EXPECT_NEAR(p.a4, 13.0 / 240.0, 1e-10);
  }
}
