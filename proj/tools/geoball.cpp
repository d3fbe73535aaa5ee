#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>

#include "geoball/manifest.hpp"
#include "geoball/metric.hpp"
#include "geoball/report.hpp"
#include "geoball/run.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Geodesic-ball volume and space-form checks driven by a manifest file"};
  app.set_version_flag("--version", std::string(geoball::tool_version()));

  std::string manifest_path;
  std::string out_dir;
  bool check_only = false;
  bool list = false;
  app.add_option("manifest", manifest_path, "Run description (key = value lines)");
  app.add_option("--out", out_dir, "Output directory, overrides the manifest's `output` key");
  app.add_flag("--check", check_only, "Parse and validate the manifest, then exit");
  app.add_flag("--list-manifolds", list, "Print the metric catalog and exit");
  app.footer("Environment: GEOBALL_WORKERS sets the worker-thread count (default 1).\n"
             "Exit status: 0 ok, 1 manifest error, 2 hypothesis failed, 3 numerical failure.");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : geoball::kExitParseError;
  }

  if (list) {
    for (const geoball::CatalogEntry& e : geoball::metric_catalog()) {
      std::cout << e.name << "(";
      for (std::size_t i = 0; i < e.parameters.size(); ++i) {
        std::cout << (i ? ", " : "") << e.parameters[i];
      }
      std::cout << ")\t" << e.description << "\n";
    }
    return 0;
  }
  if (manifest_path.empty()) {
    std::cerr << "geoball: a manifest path is required (see --help)\n";
    return geoball::kExitParseError;
  }

  if (check_only) {
    try {
      const geoball::Manifest m = geoball::load_manifest(manifest_path);
      std::cout << manifest_path << ": ok (" << m.analyses.size() << " analyses)\n";
      return 0;
    } catch (const geoball::ManifestError& e) {
      std::cerr << manifest_path << ": " << e.what() << "\n";
      return geoball::kExitParseError;
    }
  }

  std::optional<std::filesystem::path> out;
  if (!out_dir.empty()) out = out_dir;
  std::string diagnostics;
  const int rc = geoball::run_manifest(manifest_path, out, &diagnostics);
  if (!diagnostics.empty()) std::cerr << "geoball: " << diagnostics << "\n";
  return rc;
}
