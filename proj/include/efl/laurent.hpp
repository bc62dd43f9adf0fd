#pragma once

#include <vector>

#include "efl/zeta.hpp"

namespace efl {

inline constexpr int kMaxLaurentOrder = 60;

// Expansion constants at s = 1 and s = 0, k = 0..K.
struct LaurentCoefficients {
  int order = 0;  // K
  // Taylor coefficients at s = 1 of -zeta'/zeta(s) - 1/(s-1)
  std::vector<double> eta;
  // mu_k = ((-1)^k/k!) f~^(k)(0), f~ = -zeta'/zeta
  std::vector<double> mu;
  // Taylor coefficients at 0 of -zeta'/zeta(s) - 1/(s-1); mu_k = (-1)^k (h_k - 1)
  std::vector<double> mu_regular;
  std::vector<double> stieltjes;
  // Same expansions with the trivial-zero pole -1/(s+2) removed as well:
  // eta_k = eta_reduced_k - (1/3)(-1/3)^k, mu_regular_k = mu_reduced_k - (1/2)(-1/2)^k
  std::vector<double> eta_reduced;
  std::vector<double> mu_reduced;
  std::vector<double> eta_error;
  std::vector<double> mu_error;
  std::vector<double> stieltjes_error;
  std::vector<double> max_imag_residual;  // per k, over the three expansions
  // zeta(k) for k = 2..K+2 (index k); entries 0 and 1 unused
  std::vector<double> zeta_int;
  // (1 - 2^{-k}) zeta(k) - 1 = sum_{n>=1} (2n+1)^{-k}, same indexing
  std::vector<double> odd_tail;
  // sum_{n>=2} (2n+1)^{-k} and zeta(k) - 1, same indexing
  std::vector<double> odd_tail_reduced;
  std::vector<double> zeta_minus_one;
  double mu0_text_convention = 0.0;  // -log pi, printed alongside mu_0 = -log 2pi
  double eta_radius = 0.0;
  double mu_radius = 0.0;
  double stieltjes_radius = 0.0;
  int contour_points = 0;

  double error_estimate(int k) const;
};

LaurentCoefficients laurent_coefficients(int k, const ZetaEvalConfig& cfg = {});

}  // namespace efl
