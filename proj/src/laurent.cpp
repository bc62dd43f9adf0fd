#include "efl/laurent.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "efl/errors.hpp"

namespace efl {
namespace {

constexpr double kEtaRadius = 4.0;
constexpr double kMuRadius = 3.0;
constexpr double kStieltjesRadius = 5.0;
constexpr int kPoints = 512;

}  // namespace

double LaurentCoefficients::error_estimate(int k) const {
  return std::max({eta_error.at(k), mu_error.at(k), stieltjes_error.at(k)});
}

LaurentCoefficients laurent_coefficients(int k, const ZetaEvalConfig& cfg) {
  if (k < 1) fail(ErrorKind::InvalidArgument, "laurent_coefficients needs K >= 1");
  if (k > kMaxLaurentOrder) fail(ErrorKind::OrderTooLarge, fmt::format("K = {} exceeds {}", k, kMaxLaurentOrder));
  const auto at_one = taylor_expansion(ExpansionTarget::NegLogDerivReduced, 1.0, k, kEtaRadius, kPoints, cfg);
  const auto at_zero = taylor_expansion(ExpansionTarget::NegLogDerivReduced, 0.0, k, kMuRadius, kPoints, cfg);
  const auto zeta_one = taylor_expansion(ExpansionTarget::ZetaRegular, 1.0, k, kStieltjesRadius, kPoints, cfg);

  LaurentCoefficients c;
  c.order = k;
  c.eta_radius = kEtaRadius;
  c.mu_radius = kMuRadius;
  c.stieltjes_radius = kStieltjesRadius;
  c.contour_points = kPoints;
  c.mu0_text_convention = -constants().log_pi;
  const auto n = static_cast<std::size_t>(k) + 1;
  c.eta.resize(n);
  c.mu.resize(n);
  c.mu_regular.resize(n);
  c.stieltjes.resize(n);
  c.eta_reduced.resize(n);
  c.mu_reduced.resize(n);
  c.eta_error.resize(n);
  c.mu_error.resize(n);
  c.stieltjes_error.resize(n);
  c.max_imag_residual.resize(n);
  double factorial = 1.0;
  for (int j = 0; j <= k; ++j) {
    if (j > 0) factorial *= j;
    const double sign = j % 2 == 0 ? 1.0 : -1.0;
    c.eta_reduced[j] = at_one.coefficients[j].real();
    c.mu_reduced[j] = at_zero.coefficients[j].real();
    c.eta[j] = c.eta_reduced[j] - sign * std::pow(3.0, -j - 1);
    c.mu_regular[j] = c.mu_reduced[j] - sign * std::ldexp(1.0, -j - 1);
    c.mu[j] = sign * (c.mu_regular[j] - 1.0);
    c.stieltjes[j] = sign * factorial * zeta_one.coefficients[j].real();
    c.eta_error[j] = at_one.error_estimates[j];
    c.mu_error[j] = at_zero.error_estimates[j];
    c.stieltjes_error[j] = factorial * zeta_one.error_estimates[j];
    c.max_imag_residual[j] =
        std::max({at_one.imag_residuals[j], at_zero.imag_residuals[j], factorial * zeta_one.imag_residuals[j]});
  }
  c.zeta_int.assign(static_cast<std::size_t>(k) + 3, 0.0);
  c.odd_tail.assign(static_cast<std::size_t>(k) + 3, 0.0);
  c.odd_tail_reduced.assign(static_cast<std::size_t>(k) + 3, 0.0);
  c.zeta_minus_one.assign(static_cast<std::size_t>(k) + 3, 0.0);
  for (int j = 2; j <= k + 2; ++j) {
    const double s = static_cast<double>(j);
    c.zeta_int[j] = zeta(s, cfg).real();
    c.odd_tail[j] = std::ldexp(hurwitz_zeta(s, 1.5, cfg).real(), -j);
    c.odd_tail_reduced[j] = std::ldexp(hurwitz_zeta(s, 2.5, cfg).real(), -j);
    c.zeta_minus_one[j] = hurwitz_zeta(s, 2.0, cfg).real();
  }
  return c;
}

}  // namespace efl
