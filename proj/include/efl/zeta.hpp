#pragma once

#include <vector>

#include "efl/special.hpp"

namespace efl {

// Euler-Maclaurin and contour-quadrature settings.
struct ZetaEvalConfig {
  int cutoff_terms = 0;        // N; 0 selects 64 + 2|Im s|
  int correction_order = 20;   // M Bernoulli corrections
  double contour_radius = 0.5;
  int contour_points = 128;    // power of two
  int working_digits = 15;

  void validate() const;
  int cutoff_for(Complex s) const;
  double target_relative_error() const;
};

struct Constants {
  double euler_gamma;
  double log_pi;
  double log_2pi;
  double log_4pi;
};
const Constants& constants();

struct ZetaValue {
  Complex value;
  double error_estimate;     // truncation bound (plus rounding once returned)
  double rounding_estimate;
};

ZetaValue zeta_with_error(Complex s, const ZetaEvalConfig& cfg = {});
Complex zeta(Complex s, const ZetaEvalConfig& cfg = {});

// Hurwitz zeta sum_{n>=0} (n+a)^{-s}, a > 0, Re s > 0 region via
// Euler-Maclaurin (no continuation to Re s < 0).
Complex hurwitz_zeta(Complex s, double a, const ZetaEvalConfig& cfg = {});

// -zeta'(s)/zeta(s).
Complex neg_zeta_log_deriv(Complex s, const ZetaEvalConfig& cfg = {});

// -zeta'(s)/zeta(s) - 1/(s-1), finite at s = 1.
Complex neg_zeta_log_deriv_regular(Complex s, const ZetaEvalConfig& cfg = {});

// zeta(s) - 1/(s-1), entire.
Complex zeta_regular(Complex s, const ZetaEvalConfig& cfg = {});

// xi(s) = s(s-1) pi^{-s/2} Gamma(s/2) zeta(s) / 2.
Complex xi(Complex s, const ZetaEvalConfig& cfg = {});

enum class ExpansionTarget {
  NegLogDeriv,         // -zeta'/zeta
  NegLogDerivRegular,  // -zeta'/zeta - 1/(s-1)
  NegLogDerivReduced,  // -zeta'/zeta - 1/(s-1) + 1/(s+2), regular up to s = -4
  Zeta,
  ZetaRegular,         // zeta - 1/(s-1)
};

struct TaylorExpansion {
  ExpansionTarget target;
  Complex center;
  double radius;
  int points;
  std::vector<Complex> coefficients;    // target^(k)(center) / k!
  std::vector<double> error_estimates;  // per coefficient
  std::vector<double> imag_residuals;   // |Im c_k| discarded for real centers
};

// Trapezoidal Cauchy quadrature on |s - center| = radius.
TaylorExpansion taylor_expansion(ExpansionTarget target, Complex center, int k_max, double radius,
                                 int points, const ZetaEvalConfig& cfg = {});

// Taylor coefficients of -zeta'/zeta at s0 using cfg's contour; at s0 = 1 the
// pole 1/(s-1) is subtracted first.
TaylorExpansion derivatives_at(Complex s0, int k_max, const ZetaEvalConfig& cfg = {});

// Riemann-Siegel theta and Hardy Z on the critical line.
double hardy_theta(double t);
double hardy_z(double t, const ZetaEvalConfig& cfg = {});
double riemann_siegel_z(double t);

}  // namespace efl
