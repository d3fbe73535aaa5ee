#include "geoball/manifest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace geoball {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? s.npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

struct LineContext {
  int line;
  std::string key;

  [[noreturn]] void fail(const std::string& message) const { throw ManifestError(line, key, message); }

  double real(const std::string& token) const {
    double v = 0.0;
    const char* begin = token.data();
    const char* end = begin + token.size();
    const auto [ptr, ec] = std::from_chars(begin, end, v);
    if (token.empty() || ec != std::errc() || ptr != end || !std::isfinite(v)) {
      fail("expected a real number, got '" + token + "'");
    }
    return v;
  }

  double positive(const std::string& token) const {
    const double v = real(token);
    if (!(v > 0.0)) fail("value must be positive, got '" + token + "'");
    return v;
  }

  long long integer(const std::string& token) const {
    long long v = 0;
    const char* begin = token.data();
    const char* end = begin + token.size();
    const auto [ptr, ec] = std::from_chars(begin, end, v);
    if (token.empty() || ec != std::errc() || ptr != end) {
      fail("expected an integer, got '" + token + "'");
    }
    return v;
  }

  int positive_int(const std::string& token) const {
    const long long v = integer(token);
    if (v <= 0 || v > 1'000'000) fail("value must be a positive integer, got '" + token + "'");
    return static_cast<int>(v);
  }

  bool boolean(const std::string& token) const {
    if (token == "true") return true;
    if (token == "false") return false;
    fail("expected true or false, got '" + token + "'");
  }

  std::vector<double> reals(const std::string& value) const {
    std::vector<double> out;
    for (const std::string& tok : split(value, ',')) out.push_back(real(tok));
    return out;
  }

  ChartPoint point(const std::string& value) const {
    const std::vector<double> c = reals(value);
    if (c.size() != kDim) fail("a chart point needs exactly 4 coordinates");
    return ChartPoint{{c[0], c[1], c[2], c[3]}};
  }

  // name(arg, arg, ...) or bare name.
  std::pair<std::string, std::vector<std::string>> call(const std::string& value) const {
    const auto open = value.find('(');
    if (open == std::string::npos) {
      if (value.empty()) fail("empty value");
      return {value, {}};
    }
    if (value.back() != ')') fail("missing closing parenthesis");
    std::string name = trim(std::string_view(value).substr(0, open));
    const std::string inner = value.substr(open + 1, value.size() - open - 2);
    std::vector<std::string> args;
    if (!trim(inner).empty()) args = split(inner, ',');
    if (name.empty()) fail("missing name before '('");
    return {name, args};
  }
};

}  // namespace

const char* to_string(Analysis a) {
  switch (a) {
    case Analysis::kInvariants: return "invariants";
    case Analysis::kBallVolumes: return "ball_volumes";
    case Analysis::kFitExpansion: return "fit_expansion";
    case Analysis::kGaussBonnet: return "gauss_bonnet";
    case Analysis::kClassify: return "classify";
    case Analysis::kTheorem1: return "theorem1";
  }
  return "unknown";
}

std::optional<Analysis> analysis_from_string(const std::string& name) {
  for (Analysis a : {Analysis::kInvariants, Analysis::kBallVolumes, Analysis::kFitExpansion,
                     Analysis::kGaussBonnet, Analysis::kClassify, Analysis::kTheorem1}) {
    if (name == to_string(a)) return a;
  }
  return std::nullopt;
}

ManifestError::ManifestError(int line, std::string key, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + (key.empty() ? "" : ", key '" + key + "'") +
                         ": " + message),
      line_(line),
      key_(std::move(key)) {}

const std::vector<std::string>& manifest_keys() {
  static const std::vector<std::string> keys = {
      "manifold",        "analyses",          "points",          "points.count",
      "points.seed",     "center",            "radii",           "radii.min",
      "radii.max",       "radii.count",       "radii.spacing",   "model",
      "output",          "numeric.ode_tol",   "numeric.grid",    "numeric.sphere_rule",
      "numeric.tol",     "numeric.fit_tol",   "numeric.fit_nuisance",
      "numeric.printed_variant",
  };
  return keys;
}

std::vector<double> Manifest::resolved_radii() const {
  if (!radii.empty()) return radii;
  const double lo = radii_min.value_or(0.05);
  const double hi = radii_max.value_or(0.5);
  const int n = radii_count.value_or(10);
  std::vector<double> out;
  for (int i = 0; i < n; ++i) {
    const double f = n == 1 ? 1.0 : static_cast<double>(i) / (n - 1);
    out.push_back(radii_log ? lo * std::pow(hi / lo, f) : lo + (hi - lo) * f);
  }
  return out;
}

Manifest parse_manifest(std::string_view text) {
  Manifest m;
  std::set<std::string> seen;
  const std::vector<std::string>& known = manifest_keys();
  int line_no = 0;
  int manifold_line = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const auto nl = text.find('\n', pos);
    const std::string_view raw =
        text.substr(pos, nl == std::string_view::npos ? text.npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;

    std::string line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ManifestError(line_no, "", "expected 'key = value'");
    const std::string key = trim(std::string_view(line).substr(0, eq));
    const std::string value = trim(std::string_view(line).substr(eq + 1));
    const LineContext ctx{line_no, key};
    if (std::find(known.begin(), known.end(), key) == known.end()) ctx.fail("unknown key");
    if (!seen.insert(key).second) ctx.fail("duplicate key");
    m.entries.emplace_back(key, value);

    if (key == "manifold") {
      auto [name, args] = ctx.call(value);
      m.manifold_name = name;
      for (const std::string& a : args) m.manifold_params.push_back(ctx.real(a));
      manifold_line = line_no;
    } else if (key == "analyses") {
      if (!value.empty()) {
        for (const std::string& tok : split(value, ',')) {
          const auto a = analysis_from_string(tok);
          if (!a) ctx.fail("unknown analysis '" + tok + "'");
          if (std::find(m.analyses.begin(), m.analyses.end(), *a) != m.analyses.end()) {
            ctx.fail("analysis listed twice: '" + tok + "'");
          }
          m.analyses.push_back(*a);
        }
      }
    } else if (key == "points") {
      for (const std::string& p : split(value, ';')) m.points.push_back(ctx.point(p));
    } else if (key == "points.count") {
      m.point_count = ctx.positive_int(value);
    } else if (key == "points.seed") {
      const long long s = ctx.integer(value);
      if (s < 0) ctx.fail("seed must be non-negative");
      m.point_seed = static_cast<std::uint64_t>(s);
    } else if (key == "center") {
      m.center = ctx.point(value);
    } else if (key == "radii") {
      for (const std::string& tok : split(value, ',')) m.radii.push_back(ctx.positive(tok));
    } else if (key == "radii.min") {
      m.radii_min = ctx.positive(value);
    } else if (key == "radii.max") {
      m.radii_max = ctx.positive(value);
    } else if (key == "radii.count") {
      m.radii_count = ctx.positive_int(value);
    } else if (key == "radii.spacing") {
      if (value == "log") {
        m.radii_log = true;
      } else if (value == "linear") {
        m.radii_log = false;
      } else {
        ctx.fail("spacing must be 'log' or 'linear'");
      }
    } else if (key == "model") {
      m.model = model_from_string(value);
      if (!m.model) ctx.fail("model must be flat, sphere or hyperbolic");
    } else if (key == "output") {
      if (value.empty()) ctx.fail("empty output path");
      m.output = value;
    } else if (key == "numeric.ode_tol") {
      m.ode_tol = ctx.positive(value);
    } else if (key == "numeric.grid") {
      m.grid_nodes = ctx.positive_int(value);
    } else if (key == "numeric.sphere_rule") {
      auto [name, args] = ctx.call(value);
      if (name == "product") {
        if (args.size() != 3) ctx.fail("product(n_polar, n_middle, n_azimuth) takes 3 sizes");
        m.sphere_rule.kind = SphereRuleSpec::Kind::kProduct;
        m.sphere_rule.n_polar = ctx.positive_int(args[0]);
        m.sphere_rule.n_middle = ctx.positive_int(args[1]);
        m.sphere_rule.n_azimuth = ctx.positive_int(args[2]);
        if (m.sphere_rule.n_azimuth % 2 != 0) ctx.fail("azimuthal node count must be even");
      } else if (name == "halton") {
        if (args.size() != 2) ctx.fail("halton(pairs, seed) takes 2 arguments");
        m.sphere_rule.kind = SphereRuleSpec::Kind::kLowDiscrepancy;
        m.sphere_rule.pairs = ctx.positive_int(args[0]);
        const long long s = ctx.integer(args[1]);
        if (s < 0) ctx.fail("seed must be non-negative");
        m.sphere_rule.seed = static_cast<std::uint64_t>(s);
      } else {
        ctx.fail("sphere rule must be product(...) or halton(...)");
      }
    } else if (key == "numeric.tol") {
      m.tol = ctx.positive(value);
    } else if (key == "numeric.fit_tol") {
      m.fit_tol = ctx.positive(value);
    } else if (key == "numeric.fit_nuisance") {
      const long long n = ctx.integer(value);
      if (n < 0 || n > 4) ctx.fail("fit_nuisance must be in 0..4");
      m.fit_nuisance = static_cast<int>(n);
    } else if (key == "numeric.printed_variant") {
      m.printed_variant = ctx.boolean(value);
    }
  }

  const int end_line = line_no;
  if (m.manifold_name.empty()) throw ManifestError(end_line, "manifold", "missing required key");
  try {
    (void)make_catalog_metric(m.manifold_name, m.manifold_params);
  } catch (const std::invalid_argument& e) {
    throw ManifestError(manifold_line, "manifold", e.what());
  }
  if (!m.points.empty() && m.point_count) {
    throw ManifestError(end_line, "points", "give either explicit points or points.count, not both");
  }
  const bool generated = m.radii_min || m.radii_max || m.radii_count;
  if (!m.radii.empty() && generated) {
    throw ManifestError(end_line, "radii", "give either explicit radii or radii.min/max/count");
  }
  if (generated && m.radii_min && m.radii_max && !(*m.radii_min < *m.radii_max)) {
    throw ManifestError(end_line, "radii.min", "radii.min must be below radii.max");
  }
  const bool wants_theorem =
      std::find(m.analyses.begin(), m.analyses.end(), Analysis::kTheorem1) != m.analyses.end();
  if (wants_theorem && !m.model) {
    throw ManifestError(end_line, "model", "theorem1 needs model = flat | sphere | hyperbolic");
  }
  return m;
}

Manifest load_manifest(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ManifestError(0, "", "cannot read manifest " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_manifest(ss.str());
}

}  // namespace geoball
