#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "geoball/metric.hpp"

namespace geoball {

struct Rule1D {
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t size() const { return nodes.size(); }
};

// n-point Gauss-Legendre rule on (-1, 1), or mapped onto (lo, hi).
Rule1D gauss_legendre(int n);
Rule1D gauss_legendre(int n, double lo, double hi);

// Gauss rule for the weight sqrt(1 - x^2) on (-1, 1).
Rule1D chebyshev_second_kind(int n);

// Midpoint-offset trapezoid rule for a periodic axis; no node on the seam.
Rule1D periodic_trapezoid(int n, double lo, double hi);

// Gauss-Legendre for bounded axes, offset trapezoid for periodic ones.
Rule1D axis_rule(const AxisRange& axis, int n);

// Quadrature over the unit sphere S^3 in R^4. Weights sum to 2 pi^2.
struct SphereRule {
  std::vector<std::array<double, kDim>> directions;
  std::vector<double> weights;
  std::string description;

  std::size_t size() const { return directions.size(); }
};

// Product rule in hyperspherical angles u = (cos a, sin a cos b,
// sin a sin b cos c, sin a sin b sin c): Gauss-Chebyshev (second kind) in
// cos a, Gauss-Legendre in cos b, offset trapezoid in c. Exact for
// polynomials in u of degree < 2 min(n_polar, n_middle) that are also
// resolved by the azimuthal trapezoid; closed under u -> -u when n_azimuth
// is even.
SphereRule product_sphere_rule(int n_polar, int n_middle, int n_azimuth);

// Equal-weight, antipodally paired rule from a randomly shifted Halton
// sequence mapped uniformly onto S^3. `count` is the number of pairs.
SphereRule low_discrepancy_sphere_rule(int count, std::uint64_t seed);

}  // namespace geoball
