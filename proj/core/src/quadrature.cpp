#include "geoball/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace geoball {

namespace {
constexpr double kPi = std::numbers::pi;

void require_nodes(int n) {
  if (n < 1) throw std::invalid_argument("quadrature rule needs at least one node");
}

double radical_inverse(std::uint64_t index, int base) {
  double result = 0.0;
  double f = 1.0 / base;
  while (index > 0) {
    result += f * static_cast<double>(index % base);
    index /= base;
    f /= base;
  }
  return result;
}
}  // namespace

Rule1D gauss_legendre(int n) {
  require_nodes(n);
  Rule1D rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    double p0 = 1.0;
    double p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

Rule1D gauss_legendre(int n, double lo, double hi) {
  Rule1D rule = gauss_legendre(n);
  const double half = 0.5 * (hi - lo);
  const double mid = 0.5 * (hi + lo);
  for (std::size_t i = 0; i < rule.size(); ++i) {
    rule.nodes[i] = mid + half * rule.nodes[i];
    rule.weights[i] *= half;
  }
  return rule;
}

Rule1D chebyshev_second_kind(int n) {
  require_nodes(n);
  Rule1D rule;
  for (int k = 1; k <= n; ++k) {
    const double angle = k * kPi / (n + 1);
    const double s = std::sin(angle);
    rule.nodes.push_back(std::cos(angle));
    rule.weights.push_back(kPi / (n + 1) * s * s);
  }
  return rule;
}

Rule1D periodic_trapezoid(int n, double lo, double hi) {
  require_nodes(n);
  Rule1D rule;
  const double h = (hi - lo) / n;
  for (int j = 0; j < n; ++j) {
    rule.nodes.push_back(lo + (j + 0.5) * h);
    rule.weights.push_back(h);
  }
  return rule;
}

Rule1D axis_rule(const AxisRange& axis, int n) {
  return axis.periodic ? periodic_trapezoid(n, axis.lo, axis.hi)
                       : gauss_legendre(n, axis.lo, axis.hi);
}

SphereRule product_sphere_rule(int n_polar, int n_middle, int n_azimuth) {
  const Rule1D polar = chebyshev_second_kind(n_polar);
  const Rule1D middle = gauss_legendre(n_middle);
  const Rule1D azimuth = periodic_trapezoid(n_azimuth, 0.0, 2.0 * kPi);
  SphereRule rule;
  rule.description = "product(" + std::to_string(n_polar) + "x" + std::to_string(n_middle) + "x" +
                     std::to_string(n_azimuth) + ")";
  for (std::size_t i = 0; i < polar.size(); ++i) {
    const double ca = polar.nodes[i];
    const double sa = std::sqrt(1.0 - ca * ca);
    for (std::size_t j = 0; j < middle.size(); ++j) {
      const double cb = middle.nodes[j];
      const double sb = std::sqrt(1.0 - cb * cb);
      for (std::size_t k = 0; k < azimuth.size(); ++k) {
        const double c = azimuth.nodes[k];
        rule.directions.push_back({ca, sa * cb, sa * sb * std::cos(c), sa * sb * std::sin(c)});
        rule.weights.push_back(polar.weights[i] * middle.weights[j] * azimuth.weights[k]);
      }
    }
  }
  return rule;
}

SphereRule low_discrepancy_sphere_rule(int count, std::uint64_t seed) {
  require_nodes(count);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const std::array<double, 3> shift{unit(rng), unit(rng), unit(rng)};
  SphereRule rule;
  rule.description = "halton(" + std::to_string(count) + " pairs, seed " + std::to_string(seed) + ")";
  const double w = 2.0 * kPi * kPi / (2.0 * count);
  for (int i = 0; i < count; ++i) {
    const auto idx = static_cast<std::uint64_t>(i + 1);
    const double s = std::fmod(radical_inverse(idx, 2) + shift[0], 1.0);
    const double a = 2.0 * kPi * std::fmod(radical_inverse(idx, 3) + shift[1], 1.0);
    const double b = 2.0 * kPi * std::fmod(radical_inverse(idx, 5) + shift[2], 1.0);
    const double p = std::sqrt(1.0 - s);
    const double q = std::sqrt(s);
    const std::array<double, kDim> u{p * std::sin(a), p * std::cos(a), q * std::sin(b),
                                     q * std::cos(b)};
    rule.directions.push_back(u);
    rule.directions.push_back({-u[0], -u[1], -u[2], -u[3]});
    rule.weights.push_back(w);
    rule.weights.push_back(w);
  }
  return rule;
}

}  // namespace geoball
