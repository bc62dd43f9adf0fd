#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "efl/explicit_formula.hpp"
#include "efl/laurent.hpp"
#include "efl/testfn.hpp"
#include "efl/zeros.hpp"

namespace efl {

__extension__ typedef __int128 int128;
__extension__ typedef unsigned __int128 uint128;

inline constexpr int kMaxLiDirectOrder = 50;

// Exact binomials and sum_k C(n,k)(-1)^k, n <= 120.
uint128 exact_binomial(int n, int k);
int128 alternating_binomial_sum(int n);

struct ZeroPowerSum {
  int k = 0;
  double eta_route = 0.0;  // returned value
  double mu_route = 0.0;
  double difference = 0.0;
};
// sum_rho (-1/rho)^{k+1}
ZeroPowerSum zero_power_sum(int k, const LaurentCoefficients& coeffs);

// One conjugate pair of the Li sum: 2 - 2 Re (1 - 1/rho)^n = 4 sin^2(n atan(1/(2 gamma))).
double li_paired_term(int n, double gamma);

struct LiDirect {
  double value = 0.0;  // truncated paired sum
  double tail = 0.0;   // zero-density estimate beyond the table
  std::size_t zero_count = 0;
  double truncation_height = 0.0;
  double corrected() const { return value + tail; }
};
LiDirect li_direct(int n, const ZeroSet& zeros);

double li_eta(int n, const LaurentCoefficients& coeffs);
double li_mu(int n, const LaurentCoefficients& coeffs);

enum class LiRoute { direct, eta, mu };
std::string_view to_string(LiRoute r);

struct LiSequence {
  LiRoute route = LiRoute::eta;
  std::vector<double> values;           // lambda_1..lambda_N
  std::vector<double> tail_correction;  // direct route only
  std::size_t zero_count = 0;
  int coefficient_order = 0;
};
LiSequence li_sequence(LiRoute route, int n_max, const ZeroSet* zeros, const LaurentCoefficients* coeffs);

struct LiRow {
  int n = 0;
  double lambda_direct = 0.0;  // truncated
  double tail = 0.0;
  double lambda_eta = 0.0;
  double lambda_mu = 0.0;
  double max_disc = 0.0;  // max(|eta - mu|, |eta - (direct + tail)|)
};
std::vector<LiRow> li_table(int n_max, const ZeroSet& zeros, const LaurentCoefficients& coeffs);

struct WeilRhsTerms {
  std::string route;
  double pole_product = 0.0;   // finite part of g~(1) g~(0)
  double trivial_sum = 0.0;    // sum_n g~(-2n) g~(1+2n)
  double expectation = 0.0;    // finite part of <e^{-t} (g^ * g)(t)>
  double total = 0.0;
};

struct WeilFormReport {
  std::string test_function;
  double lhs_truncated = 0.0;
  double lhs_tail = 0.0;
  double lhs_zero_sum = 0.0;  // truncated + tail
  std::vector<std::size_t> checkpoint_counts;
  std::vector<double> partial_sums;
  bool partial_sums_monotone = true;
  WeilRhsTerms rhs;
  std::optional<double> rhs_sum_prod;  // s1 + involuted s1, when g~ g~(1-s) = g~ + g~(1-s)
  std::optional<double> li_identity_residual;  // lhs - 2 lambda_n (mu route)
  std::size_t zero_count = 0;
  double truncation_height = 0.0;
  bool on_critical_line = true;
};

WeilFormReport weil_form(const TestFunction& g, const ZeroSet& zeros, const LaurentCoefficients& coeffs,
                         int trivial_cutoff = kDefaultTrivialCutoff);

}  // namespace efl
