#include "geoball/gray.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace geoball {

namespace {
constexpr double kPi = std::numbers::pi;
}

double leading_ball_volume(int n, double r) {
  return std::pow(kPi * r * r, 0.5 * n) / std::tgamma(0.5 * n + 1.0);
}

double GrayCoefficients::lead(double r) const { return leading_ball_volume(n, r); }

double BallVolumeSeries::relative(double r) const {
  const double r2 = r * r;
  return 1.0 + coefficients.a2 * r2 + coefficients.a4_original * r2 * r2;
}

double BallVolumeSeries::eval(double r) const { return coefficients.lead(r) * relative(r); }

double tau2_coefficient(int n) {
  const double d = n;
  return 5.0 + 6.0 / ((d - 1.0) * (d - 2.0)) + 8.0 / d - 12.0 / (d * (d - 2.0));
}

double a4_prefactor(int n) { return 1.0 / (360.0 * (n + 2) * (n + 4)); }

double a4_bracket(const CurvatureInvariants& inv) {
  return -3.0 * inv.norm_R2 + 8.0 * inv.norm_rho2 + 5.0 * inv.tau * inv.tau -
         18.0 * inv.laplacian_tau;
}

GrayCoefficients gray_coefficients(const CurvatureInvariants& inv) {
  if (inv.n < 2) throw std::invalid_argument("dimension must be at least 2");
  GrayCoefficients c;
  c.n = inv.n;
  c.a2 = -inv.tau / (6.0 * (inv.n + 2));
  c.a4_original = a4_prefactor(inv.n) * a4_bracket(inv);
  if (inv.n >= 3) {
    const double d = inv.n;
    const double bracket = -3.0 * inv.norm_W2 + (8.0 - 12.0 / (d - 2.0)) * inv.norm_rhoTilde2 +
                           tau2_coefficient(inv.n) * inv.tau * inv.tau -
                           18.0 * inv.laplacian_tau;
    c.a4_rewritten = a4_prefactor(inv.n) * bracket;
  }
  return c;
}

GrayCoefficients gray_coefficients(const CurvatureFrame& frame) {
  return gray_coefficients(frame.invariants());
}

double printed_rewrite_a4(const CurvatureInvariants& inv) {
  const double d = inv.n;
  const double bracket = -3.0 * inv.norm_W2 + (8.0 - 12.0 / (d - 2.0)) * inv.norm_rhoTilde2 +
                         2.0 / (d * (d - 1.0)) * inv.tau * inv.tau - 18.0 * inv.laplacian_tau;
  return a4_prefactor(inv.n) * bracket;
}

double model_ball_volume_exact(double c, double r) {
  if (!(r > 0.0)) throw std::invalid_argument("radius must be positive");
  constexpr double two_pi2 = 2.0 * kPi * kPi;
  if (c == 0.0) return 0.5 * kPi * kPi * r * r * r * r;
  const double k = std::sqrt(std::abs(c));
  const double t = k * r;
  // Written in 1 - cos t and cosh t - 1 to avoid cancellation at small t.
  double unit = 0.0;
  if (c > 0.0) {
    if (!(t < kPi)) throw std::invalid_argument("radius beyond the injectivity radius pi/sqrt(c)");
    const double s = std::sin(0.5 * t);
    const double u = 2.0 * s * s;
    unit = two_pi2 * u * u * (3.0 - u) / 3.0;
  } else {
    const double s = std::sinh(0.5 * t);
    const double w = 2.0 * s * s;
    unit = two_pi2 * w * w * (3.0 + w) / 3.0;
  }
  return unit / (c * c);
}

GrayCoefficients model_coefficients(int n, double c) {
  const double d = n;
  CurvatureInvariants inv;
  inv.n = n;
  inv.tau = d * (d - 1.0) * c;
  inv.norm_R2 = 2.0 * d * (d - 1.0) * c * c;
  inv.norm_rho2 = d * (d - 1.0) * (d - 1.0) * c * c;
  inv.norm_W2 = 0.0;
  inv.norm_rhoTilde2 = 0.0;
  inv.laplacian_tau = 0.0;
  return gray_coefficients(inv);
}

VolumeMatch volumes_match_to_r4(const CurvatureInvariants& inv, double c, double tol) {
  const double d = inv.n;
  CurvatureInvariants model;
  model.n = inv.n;
  model.tau = d * (d - 1.0) * c;
  model.norm_R2 = 2.0 * d * (d - 1.0) * c * c;
  model.norm_rho2 = d * (d - 1.0) * (d - 1.0) * c * c;

  VolumeMatch m;
  m.scale = 1.0 + inv.norm_R2;
  m.tau_error = inv.tau - model.tau;
  m.bracket_error = a4_bracket(inv) - a4_bracket(model);
  m.weyl_balance = -3.0 * inv.norm_W2 + 2.0 * inv.norm_rhoTilde2;
  m.matches = std::abs(m.tau_error) < tol * m.scale && std::abs(m.bracket_error) < tol * m.scale;
  return m;
}

VolumeMatch volumes_match_to_r4(const CurvatureFrame& frame, double c, double tol) {
  return volumes_match_to_r4(frame.invariants(), c, tol);
}

}  // namespace geoball
