#include "geoball/report.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <system_error>

#ifndef GEOBALL_VERSION
#define GEOBALL_VERSION "unknown"
#endif

namespace geoball {

std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

const char* tool_version() { return GEOBALL_VERSION; }

void Report::line(const std::string& key, const std::string& value) {
  summary.push_back(key + ": " + value);
}

void Report::line(const std::string& key, double value) { line(key, format_real(value)); }

std::string summary_text(const Report& report) {
  std::string out = "geoball " + report.tool_version + "\n\n[manifest]\n";
  for (const auto& [k, v] : report.manifest_echo) out += k + " = " + v + "\n";
  out += "\n[seeds]\n";
  for (const auto& [k, v] : report.seeds) out += k + ": " + v + "\n";
  out += "\n";
  for (const std::string& s : report.summary) out += s + "\n";
  return out;
}

std::string points_tsv(const Report& report) {
  std::string out = std::string(kPointsHeader) + "\n";
  for (std::size_t i = 0; i < report.points.size(); ++i) {
    const PointRow& p = report.points[i];
    out += std::to_string(i);
    for (double c : p.point.coords) out += "\t" + format_real(c);
    const CurvatureInvariants& inv = p.invariants;
    for (double v : {inv.tau, inv.norm_R2, inv.norm_rho2, inv.norm_W2, inv.norm_rhoTilde2,
                     inv.laplacian_tau, p.a2, p.a4}) {
      out += "\t" + format_real(v);
    }
    out += "\n";
  }
  return out;
}

std::string radii_tsv(const Report& report) {
  std::string out = std::string(kRadiiHeader) + "\n";
  for (const RadiusRow& r : report.radii) {
    out += format_real(r.r) + "\t" + format_real(r.measured) + "\t" + format_real(r.series) +
           "\t" + format_real(r.residual) + "\n";
  }
  return out;
}

namespace {

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace

void write_report(const Report& report, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create " + dir.string() + ": " + ec.message());
  // Stale tables from an earlier run with different analyses would otherwise linger.
  for (const char* name : {"points.tsv", "radii.tsv"}) std::filesystem::remove(dir / name, ec);
  write_file(dir / "summary.txt", summary_text(report));
  if (report.has_point_table) write_file(dir / "points.tsv", points_tsv(report));
  if (report.has_radius_table) write_file(dir / "radii.tsv", radii_tsv(report));
}

}  // namespace geoball
