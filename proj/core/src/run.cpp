#include "geoball/run.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "geoball/ballvol.hpp"
#include "geoball/error.hpp"
#include "geoball/gaussbonnet.hpp"
#include "geoball/gray.hpp"
#include "geoball/parallel.hpp"
#include "geoball/spaceform.hpp"

namespace geoball {

namespace {

std::string point_text(const ChartPoint& p) {
  std::string s;
  for (int i = 0; i < kDim; ++i) s += (i ? "," : "") + format_real(p.coords[i]);
  return s;
}

std::vector<ChartPoint> resolve_points(const Manifest& m, const MetricField& metric) {
  if (!m.points.empty()) return m.points;
  if (m.point_count) return sample_chart_points(metric, *m.point_count, m.point_seed);
  return {metric.reference_point()};
}

class Runner {
 public:
  Runner(const Manifest& m, int workers)
      : m_(m),
        metric_(make_catalog_metric(m.manifold_name, m.manifold_params)),
        workers_(resolve_worker_count(workers)),
        points_(resolve_points(m, metric_)),
        center_(m.center.value_or(metric_.reference_point())) {}

  RunOutcome run() {
    RunOutcome out;
    Report& rep = out.report;
    rep.tool_version = tool_version();
    rep.manifest_echo = m_.entries;
    rep.seeds.emplace_back("points.seed", std::to_string(m_.point_seed));
    if (m_.sphere_rule.kind == SphereRuleSpec::Kind::kLowDiscrepancy) {
      rep.seeds.emplace_back("sphere_rule.seed", std::to_string(m_.sphere_rule.seed));
    }
    rep.line("manifold", metric_.name());
    rep.line("chart_covers_manifold", metric_.covers_manifold() ? "yes" : "no");
    if (!metric_.excluded_set().empty()) rep.line("chart_excluded_set", metric_.excluded_set());

    int code = kExitOk;
    try {
      for (Analysis a : m_.analyses) {
        rep.summary.push_back("");
        rep.summary.push_back(std::string("[") + to_string(a) + "]");
        switch (a) {
          case Analysis::kInvariants: invariants(rep); break;
          case Analysis::kBallVolumes: ball_volumes_section(rep); break;
          case Analysis::kFitExpansion: fit_section(rep); break;
          case Analysis::kGaussBonnet: gauss_bonnet_section(rep); break;
          case Analysis::kClassify: classify_section(rep); break;
          case Analysis::kTheorem1:
            if (!theorem_section(rep)) code = kExitHypothesisFailed;
            break;
        }
      }
    } catch (const GeometryError& e) {
      code = kExitNumericalFailure;
      out.error = std::string("numerical failure (") + to_string(e.kind()) + "): " + e.what();
    } catch (const std::invalid_argument& e) {
      code = kExitNumericalFailure;
      out.error = std::string("invalid request: ") + e.what();
    }
    rep.summary.push_back("");
    rep.summary.push_back("[outcome]");
    if (!out.error.empty()) rep.line("error", out.error);
    rep.line("exit_status", std::to_string(code));
    out.exit_code = code;
    return out;
  }

 private:
  const Manifest& m_;
  MetricField metric_;
  int workers_;
  std::vector<ChartPoint> points_;
  ChartPoint center_;
  std::optional<BallVolumeSet> measured_;

  void note_gray(Report& rep) {
    rep.line("gray.tau2_coefficient", tau2_coefficient(kDim));
    rep.line("gray.note",
             "a4 uses tau^2 coefficient 5 + 6/((n-1)(n-2)) + 8/n - 12/(n(n-2)) in the Weyl form; "
             "the 2/(n(n-1)) variant disagrees with the original form (1/720 vs 13/240 on unit S4)");
  }

  void fill_point_table(Report& rep) {
    if (rep.has_point_table) return;
    std::vector<PointRow> rows(points_.size());
    parallel_for(points_.size(), workers_, [&](std::size_t i) {
      const CurvatureFrame f = curvature_frame(metric_, points_[i]);
      const GrayCoefficients g = gray_coefficients(f);
      rows[i] = PointRow{points_[i], f.invariants(), g.a2, g.a4_original};
    });
    rep.points = std::move(rows);
    rep.has_point_table = true;
  }

  void invariants(Report& rep) {
    fill_point_table(rep);
    rep.line("points", std::to_string(rep.points.size()));
    note_gray(rep);
    double max_gap = 0.0;
    for (std::size_t i = 0; i < rep.points.size(); ++i) {
      const CurvatureInvariants& inv = rep.points[i].invariants;
      const GrayCoefficients g = gray_coefficients(inv);
      if (g.a4_rewritten) max_gap = std::max(max_gap, std::abs(*g.a4_rewritten - g.a4_original));
      if (m_.printed_variant) {
        rep.line("a4_printed_variant[" + std::to_string(i) + "]", printed_rewrite_a4(inv));
      }
    }
    rep.line("max |a4_rewritten - a4_original|", max_gap);
  }

  BallConfig ball_config() const {
    BallConfig cfg;
    cfg.rule = m_.sphere_rule;
    cfg.ode_tol = m_.ode_tol;
    cfg.workers = workers_;
    return cfg;
  }

  const BallVolumeSet& measure(Report& rep) {
    if (!measured_) {
      const std::vector<double> radii = m_.resolved_radii();
      measured_ = ball_volumes(metric_, center_, radii, ball_config());
      if (measured_->estimates.size() < radii.size()) {
        throw GeometryError(ErrorKind::kConjugatePoint,
                            "radius " + format_real(radii[measured_->estimates.size()]) +
                                " is past the first conjugate point at t = " +
                                format_real(measured_->first_conjugate.value_or(0.0)));
      }
      const BallVolumeSeries series{gray_coefficients(curvature_frame(metric_, center_))};
      rep.radii.clear();
      for (const BallVolumeEstimate& e : measured_->estimates) {
        const double s = series.eval(e.radius);
        rep.radii.push_back(RadiusRow{e.radius, e.value, s, e.value - s});
      }
      rep.has_radius_table = true;
    }
    return *measured_;
  }

  void ball_volumes_section(Report& rep) {
    const BallVolumeSet& set = measure(rep);
    rep.line("center", point_text(center_));
    rep.line("sphere_rule", ball_config().rule.build().description);
    rep.line("radii_measured", std::to_string(set.estimates.size()));
    rep.line("first_conjugate", set.first_conjugate ? format_real(*set.first_conjugate) : "none");
    double max_err = 0.0;
    for (const BallVolumeEstimate& e : set.estimates) {
      max_err = std::max(max_err, e.quadrature_error_estimate / e.value);
    }
    rep.line("max_relative_error_estimate", max_err);
  }

  void fit_section(Report& rep) {
    const BallVolumeSet& set = measure(rep);
    const double limit = set.first_conjugate ? 0.6 * *set.first_conjugate
                                             : std::numeric_limits<double>::infinity();
    std::vector<double> r;
    std::vector<double> v;
    for (const BallVolumeEstimate& e : set.estimates) {
      if (e.radius >= limit) continue;
      r.push_back(e.radius);
      v.push_back(e.value);
    }
    const ExpansionFit fit = fit_series(kDim, r, v, m_.fit_nuisance);
    const CurvatureFrame f = curvature_frame(metric_, center_);
    const GrayCoefficients g = gray_coefficients(f);
    rep.line("center", point_text(center_));
    rep.line("radii_used", std::to_string(r.size()));
    rep.line("nuisance_terms", std::to_string(m_.fit_nuisance));
    rep.line("fit.a2", fit.a2);
    rep.line("fit.a2_stderr", fit.a2_stderr);
    rep.line("fit.a4", fit.a4);
    rep.line("fit.a4_stderr", fit.a4_stderr);
    rep.line("fit.condition_number", fit.condition_number);
    rep.line("fit.residual_rms", fit.residual_rms);
    rep.line("analytic.a2", g.a2);
    rep.line("analytic.a4", g.a4_original);
    rep.line("fit.a2 - analytic.a2", fit.a2 - g.a2);
    rep.line("fit.a4 - analytic.a4", fit.a4 - g.a4_original);
    note_gray(rep);
    if (m_.printed_variant) {
      const double printed = printed_rewrite_a4(f.invariants());
      rep.line("analytic.a4_printed_variant", printed);
      rep.line("fit.a4 - analytic.a4_printed_variant", fit.a4 - printed);
    }
  }

  GridSpec grid() const {
    GridSpec g;
    g.nodes_per_axis = m_.grid_nodes;
    g.workers = workers_;
    return g;
  }

  void gauss_bonnet_section(Report& rep) {
    if (!metric_.covers_manifold()) {
      rep.line("status", "NOT-EVALUABLE: chart does not cover a compact manifold");
      return;
    }
    const GaussBonnetResult r = euler_characteristic(metric_, grid());
    rep.line("nodes_per_axis", std::to_string(r.nodes_per_axis));
    rep.line("chi_form4", r.chi_form4);
    rep.line("chi_form7", r.chi_form7);
    rep.line("chi_error_estimate", r.error_estimate);
    rep.line("volume", r.volume);
    rep.line("integral_rhoTilde2", r.integral_rhoTilde2);
    rep.line("balance_residual", r.balance_residual());
    rep.line("euler_slack (32 pi^2 chi - 24 vol)", euler_inequality(r.chi_form4, r.volume).slack);
  }

  void classify_section(Report& rep) {
    const SpaceFormVerdict v = classify_space_form(metric_, points_, m_.tol, workers_);
    rep.line("samples", std::to_string(v.samples));
    rep.line("is_space_form", v.is_space_form ? "yes" : "no");
    rep.line("model", to_string(v.model));
    rep.line("curvature", v.curvature);
    rep.line("max_W2", v.max_W2);
    rep.line("max_rhoTilde2", v.max_rhoTilde2);
    rep.line("tau_min", v.tau_min);
    rep.line("tau_max", v.tau_max);
    rep.line("tolerance", v.tolerance);
  }

  bool theorem_section(Report& rep) {
    fill_point_table(rep);
    const ModelSpace branch = *m_.model;
    const TheoremReport t =
        run_theorem1(metric_, branch, points_, grid(), Tolerances{m_.tol, m_.fit_tol}, workers_);
    rep.line("branch", std::to_string(static_cast<int>(branch)) + " (" + to_string(branch) + ")");
    rep.line("samples", std::to_string(t.samples.size()));
    rep.summary.push_back("hypothesis\tstatus");
    rep.summary.push_back(std::string("volume_match\t") + to_string(t.volume_match));
    rep.summary.push_back(std::string("euler_condition\t") + to_string(t.euler_condition));
    if (t.gauss_bonnet) {
      rep.line("chi", t.gauss_bonnet->chi_form4);
      rep.line("volume", t.gauss_bonnet->volume);
    }
    if (t.euler_slack) rep.line("euler_slack", *t.euler_slack);
    if (t.balance_residual) rep.line("balance_residual", *t.balance_residual);
    if (t.synthetic_euler_check) {
      rep.line("synthetic_euler_check", t.synthetic_euler_check_passed ? "PASS" : "FAIL");
    }
    for (const std::string& f : t.failed_hypotheses) rep.line("failed_hypothesis", f);
    rep.line("conclusion", t.conclusion);
    if (t.sphere_vs_projective) rep.line("sphere_vs_projective", *t.sphere_vs_projective);
    rep.line("independent_classification", to_string(t.verdict.model));
    rep.line("conclusion_consistent", t.conclusion_reached
                                          ? (t.conclusion_consistent ? "yes" : "no")
                                          : "n/a");
    return t.conclusion_reached;
  }
};

}  // namespace

RunOutcome execute_manifest(const Manifest& manifest, int workers) {
  return Runner(manifest, workers).run();
}

int run_manifest(const std::filesystem::path& manifest_path,
                 const std::optional<std::filesystem::path>& out_override,
                 std::string* diagnostics, int workers) {
  Manifest m;
  try {
    m = load_manifest(manifest_path);
  } catch (const ManifestError& e) {
    if (diagnostics) *diagnostics = manifest_path.string() + ": " + e.what();
    return kExitParseError;
  }
  RunOutcome out = execute_manifest(m, workers);
  try {
    write_report(out.report, out_override.value_or(m.output));
  } catch (const std::exception& e) {
    if (diagnostics) *diagnostics = e.what();
    return kExitNumericalFailure;
  }
  if (diagnostics) *diagnostics = out.error;
  return out.exit_code;
}

}  // namespace geoball
