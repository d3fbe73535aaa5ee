#pragma once

#include <optional>

#include "geoball/curvature.hpp"

namespace geoball {

// Small-ball volume expansion V(r) = lead(r) (1 + a2 r^2 + a4 r^4 + O(r^6)),
// lead(r) = (pi r^2)^{n/2} / Gamma(n/2 + 1).
//
// a4 is carried in two algebraically equivalent forms: the original one in
// |R|^2, |rho|^2, tau^2 and the Weyl / traceless-Ricci form. They agree only
// with the tau^2 coefficient tau2_coefficient(n); see
// printed_rewrite_a4() for the variant that does not.
struct GrayCoefficients {
  int n = kDim;
  double a2 = 0.0;
  double a4_original = 0.0;
  // Empty for n < 3 where the Weyl tensor is not defined.
  std::optional<double> a4_rewritten;

  double lead(double r) const;
};

struct BallVolumeSeries {
  GrayCoefficients coefficients;

  double eval(double r) const;
  double relative(double r) const;  // eval(r) / lead(r)
};

double leading_ball_volume(int n, double r);

// c_tau(n) = 5 + 6/((n-1)(n-2)) + 8/n - 12/(n(n-2)); 13/2 at n = 4.
double tau2_coefficient(int n);

// The bracket -3|R|^2 + 8|rho|^2 + 5 tau^2 - 18 Delta tau, i.e. a4 without
// its 1/(360 (n+2)(n+4)) prefactor.
double a4_bracket(const CurvatureInvariants& inv);

double a4_prefactor(int n);

GrayCoefficients gray_coefficients(const CurvatureInvariants& inv);
GrayCoefficients gray_coefficients(const CurvatureFrame& frame);

// Weyl-form a4 with the tau^2 coefficient 2/(n(n-1)) substituted for
// tau2_coefficient(n). Kept as a diagnostic: at n = 4 it gives 1/720 on the
// unit sphere instead of 13/240.
double printed_rewrite_a4(const CurvatureInvariants& inv);

// Exact 4-dimensional model-space ball volume for constant curvature c.
// Throws std::invalid_argument when r >= pi / sqrt(c) for c > 0.
double model_ball_volume_exact(double c, double r);

// Coefficients of the constant-curvature model with curvature c in dimension n.
GrayCoefficients model_coefficients(int n, double c);

struct VolumeMatch {
  bool matches = false;
  double tau_error = 0.0;      // tau - n(n-1)c
  double bracket_error = 0.0;  // a4_bracket(frame) - a4_bracket(model)
  double weyl_balance = 0.0;   // -3|W|^2 + 2|rhoTilde|^2
  double scale = 1.0;          // 1 + |R|^2
};

// Order-r^4 agreement of the ball-volume expansion with the curvature-c model:
// tau and the a4 bracket both match within tol * (1 + |R|^2).
VolumeMatch volumes_match_to_r4(const CurvatureInvariants& inv, double c, double tol);
VolumeMatch volumes_match_to_r4(const CurvatureFrame& frame, double c, double tol);

}  // namespace geoball
