#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "geoball/manifest.hpp"
#include "geoball/report.hpp"

namespace geoball {

enum ExitCode : int {
  kExitOk = 0,
  kExitParseError = 1,
  kExitHypothesisFailed = 2,
  kExitNumericalFailure = 3,
};

struct RunOutcome {
  int exit_code = kExitOk;
  Report report;
  std::string error;  // set for exit 3
};

// Executes the analyses in declared order. Worker count comes from
// GEOBALL_WORKERS when `workers` is 0 and never affects the report.
RunOutcome execute_manifest(const Manifest& manifest, int workers = 0);

// Load, execute, write. Diagnostics for exits 1 and 3 go to `diagnostics`.
int run_manifest(const std::filesystem::path& manifest_path,
                 const std::optional<std::filesystem::path>& out_override,
                 std::string* diagnostics = nullptr, int workers = 0);

}  // namespace geoball
