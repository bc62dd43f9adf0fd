#include "efl/li_weil.hpp"

#include <cmath>

#include <fmt/format.h>

#include "efl/errors.hpp"
#include "efl/summation.hpp"

namespace efl {
namespace {

constexpr int kMaxExactBinomial = 120;

double li_seed() {
  const auto& c = constants();
  return 1.0 + 0.5 * (c.euler_gamma - c.log_4pi);
}

void require_order(int needed, const LaurentCoefficients& coeffs, const char* what) {
  if (needed > coeffs.order) {
    fail(ErrorKind::CoefficientsTooShort, fmt::format("{} needs coefficients up to k = {}, have {}", what, needed, coeffs.order));
  }
}

double sign_of(int k) { return k % 2 == 0 ? 1.0 : -1.0; }

double binomial_double(int n, int k) { return static_cast<double>(exact_binomial(n, k)); }

// Partial fractions of 1/(s^a (1-s)^b): coefficients of s^{-i} and (1-s)^{-j}.
void add_partial_fraction(int a, int b, double weight, std::vector<double>& at_zero, std::vector<double>& at_one) {
  for (int i = 1; i <= a; ++i) at_zero[i] += weight * binomial_double(a + b - i - 1, b - 1);
  for (int j = 1; j <= b; ++j) at_one[j] += weight * binomial_double(a + b - j - 1, a - 1);
}

void li_order_check(int n) {
  if (n < 1) fail(ErrorKind::InvalidArgument, "Li coefficients start at n = 1");
}

}  // namespace

std::string_view to_string(LiRoute r) {
  switch (r) {
    case LiRoute::direct: return "direct";
    case LiRoute::eta: return "eta";
    case LiRoute::mu: return "mu";
  }
  return "unknown";
}

uint128 exact_binomial(int n, int k) {
  if (n < 0 || n > kMaxExactBinomial) fail(ErrorKind::OrderTooLarge, fmt::format("binomial order {} out of range", n));
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  uint128 r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
  return r;
}

int128 alternating_binomial_sum(int n) {
  int128 acc = 0;
  for (int k = 0; k <= n; ++k) {
    const auto c = static_cast<int128>(exact_binomial(n, k));
    acc += (k % 2 == 0) ? c : -c;
  }
  return acc;
}

ZeroPowerSum zero_power_sum(int k, const LaurentCoefficients& coeffs) {
  if (k < 0) fail(ErrorKind::InvalidArgument, "zero_power_sum needs k >= 0");
  ZeroPowerSum r;
  r.k = k;
  if (k == 0) {
    r.eta_route = r.mu_route = li_seed();
    return r;
  }
  require_order(k, coeffs, "zero_power_sum");
  // eta_k + (-1)^k ((1 - 2^{-k-1}) zeta(k+1) - 1); the n = 1 term of the odd sum
  // cancels the -1/(s+2) part of eta_k.
  r.eta_route = coeffs.eta_reduced[k] + sign_of(k) * coeffs.odd_tail_reduced[k + 1];
  // -mu_k - 2^{-k-1} zeta(k+1) - (-1)^k, with mu_k = (-1)^k (h_k - 1) and
  // h_k = mu_reduced_k - (1/2)(-1/2)^k
  r.mu_route = -sign_of(k) * coeffs.mu_reduced[k] - std::ldexp(coeffs.zeta_minus_one[k + 1], -(k + 1));
  r.difference = r.eta_route - r.mu_route;
  return r;
}

double li_paired_term(int n, double gamma) {
  const double s = std::sin(n * std::atan(0.5 / gamma));
  return 4.0 * s * s;
}

LiDirect li_direct(int n, const ZeroSet& zeros) {
  li_order_check(n);
  if (n > kMaxLiDirectOrder) fail(ErrorKind::OrderTooLarge, fmt::format("li_direct order {} exceeds {}", n, kMaxLiDirectOrder));
  if (zeros.empty()) fail(ErrorKind::EmptyZeroSet, "li_direct needs zeros");
  const PairedTerm paired = [n](double gamma) { return Complex{li_paired_term(n, gamma), 0.0}; };
  LiDirect r;
  r.value = paired_zero_sum(zeros, paired).real();
  r.tail = density_tail(paired, tail_start(zeros)).real();
  r.zero_count = zeros.size();
  r.truncation_height = zeros.ordinates.back();
  return r;
}

double li_eta(int n, const LaurentCoefficients& coeffs) {
  li_order_check(n);
  require_order(n - 1, coeffs, "li_eta");
  // (-1)^k (1 - 2^{-k}) zeta(k) = (-1)^k (1 + 3^{-k} + odd_tail_reduced_k): the integer
  // parts sum exactly and the 3^{-k} parts cancel against eta_{k-1}.
  BlockedPairwiseSum<double> acc;
  for (int k = 2; k <= n; ++k) {
    acc.add(binomial_double(n, k) * (sign_of(k) * coeffs.odd_tail_reduced[k] - coeffs.eta_reduced[k - 1]));
  }
  const int128 integer_part = alternating_binomial_sum(n) - 1 + n;  // sum_{k>=2} C(n,k)(-1)^k
  return li_seed() + 0.5 * (n - 1) * (constants().euler_gamma - constants().log_4pi) + acc.total() +
         static_cast<double>(integer_part);
}

double li_mu(int n, const LaurentCoefficients& coeffs) {
  li_order_check(n);
  require_order(n - 1, coeffs, "li_mu");
  // mu_{k-1} = (-1)^{k-1} h_{k-1} + (-1)^k, and the 2^{-k} part of h_{k-1}
  // cancels the leading term of 2^{-k} zeta(k)
  BlockedPairwiseSum<double> acc;
  for (int k = 2; k <= n; ++k) {
    acc.add(binomial_double(n, k) * (std::ldexp(coeffs.zeta_minus_one[k], -k) - sign_of(k) * coeffs.mu_reduced[k - 1]));
  }
  const int128 integer_part = alternating_binomial_sum(n) - 1 + n;
  return li_seed() + 0.5 * (n - 1) * (constants().euler_gamma - constants().log_4pi) + acc.total() +
         static_cast<double>(integer_part);
}

LiSequence li_sequence(LiRoute route, int n_max, const ZeroSet* zeros, const LaurentCoefficients* coeffs) {
  li_order_check(n_max);
  LiSequence seq;
  seq.route = route;
  for (int n = 1; n <= n_max; ++n) {
    switch (route) {
      case LiRoute::direct: {
        if (!zeros) fail(ErrorKind::EmptyZeroSet, "direct route needs zeros");
        const LiDirect d = li_direct(n, *zeros);
        seq.values.push_back(d.value);
        seq.tail_correction.push_back(d.tail);
        seq.zero_count = d.zero_count;
        break;
      }
      case LiRoute::eta:
      case LiRoute::mu:
        if (!coeffs) fail(ErrorKind::CoefficientsTooShort, "eta/mu routes need Laurent coefficients");
        seq.values.push_back(route == LiRoute::eta ? li_eta(n, *coeffs) : li_mu(n, *coeffs));
        seq.coefficient_order = coeffs->order;
        break;
    }
  }
  return seq;
}

std::vector<LiRow> li_table(int n_max, const ZeroSet& zeros, const LaurentCoefficients& coeffs) {
  std::vector<LiRow> rows;
  for (int n = 1; n <= n_max; ++n) {
    LiRow row;
    row.n = n;
    const LiDirect d = li_direct(n, zeros);
    row.lambda_direct = d.value;
    row.tail = d.tail;
    row.lambda_eta = li_eta(n, coeffs);
    row.lambda_mu = li_mu(n, coeffs);
    row.max_disc = std::max(std::abs(row.lambda_eta - row.lambda_mu), std::abs(row.lambda_eta - d.corrected()));
    rows.push_back(row);
  }
  return rows;
}

WeilFormReport weil_form(const TestFunction& g, const ZeroSet& zeros, const LaurentCoefficients& coeffs,
                         int trivial_cutoff) {
  if (g.involuted() || !(g.is_polynomial_family() || g.family() == Family::exponential)) {
    fail(ErrorKind::UnsupportedFamily, fmt::format("weil_form does not support {}", g.label()));
  }
  if (zeros.empty()) fail(ErrorKind::EmptyZeroSet, "weil_form needs zeros");
  WeilFormReport r;
  r.test_function = g.label();
  r.zero_count = zeros.size();
  r.truncation_height = zeros.ordinates.back();
  r.on_critical_line = zeros.on_critical_line;

  // g~(1 - rho) = conj g~(rho) on the critical line, so each pair gives 2|g~(rho)|^2.
  const PairedTerm paired = [&g](double gamma) { return Complex{2.0 * std::norm(g.transform_eval(Complex{0.5, gamma})), 0.0}; };
  BlockedPairwiseSum<double> acc;
  double running = 0.0;
  std::size_t next_checkpoint = 1;
  for (std::size_t j = 0; j < zeros.size(); ++j) {
    const double term = paired(zeros.ordinates[j]).real();
    acc.add(term);
    const double next = running + term;
    if (next < running) r.partial_sums_monotone = false;
    running = next;
    if (j + 1 == next_checkpoint || j + 1 == zeros.size()) {
      r.checkpoint_counts.push_back(j + 1);
      r.partial_sums.push_back(acc.total());
      if (r.partial_sums.size() > 1 && r.partial_sums.back() < r.partial_sums[r.partial_sums.size() - 2]) {
        r.partial_sums_monotone = false;
      }
      while (next_checkpoint <= j + 1) next_checkpoint *= 10;
    }
  }
  r.lhs_truncated = acc.total();
  r.lhs_tail = density_tail(paired, tail_start(zeros)).real();
  r.lhs_zero_sum = r.lhs_truncated + r.lhs_tail;

  const auto w = [&g](Complex s) { return g.transform_eval(s) * g.transform_eval(1.0 - s); };
  const TrivialSeries triv = trivial_series([&](double n) { return w(1.0 + 2.0 * n); }, trivial_cutoff);
  r.rhs.trivial_sum = triv.total().real();

  if (g.is_polynomial_family()) {
    const auto m = g.transform_moments();
    const int degree = static_cast<int>(m.size()) - 1;
    require_order(degree, coeffs, "weil_form");
    // W(s) = sum_{k,l} m_k m_l / (s^{k+1} (1-s)^{l+1}) = sum_i a_i s^{-i} + sum_j b_j (1-s)^{-j}
    std::vector<double> a(2 * m.size() + 2, 0.0), b(2 * m.size() + 2, 0.0);
    for (std::size_t k = 0; k < m.size(); ++k) {
      for (std::size_t l = 0; l < m.size(); ++l) {
        if (m[k] == 0.0 || m[l] == 0.0) continue;
        add_partial_fraction(static_cast<int>(k) + 1, static_cast<int>(l) + 1, m[k] * m[l], a, b);
      }
    }
    BlockedPairwiseSum<double> pole, expectation;
    for (std::size_t i = 1; i < a.size(); ++i) {
      if (a[i] != 0.0) expectation.add(a[i] * sign_of(static_cast<int>(i) - 1) * coeffs.eta[i - 1]);
    }
    for (std::size_t j = 1; j < b.size(); ++j) {
      if (b[j] == 0.0) continue;
      pole.add(b[j]);
      expectation.add(b[j] * sign_of(static_cast<int>(j)) * coeffs.mu[j - 1]);
    }
    r.rhs.route = "partial fractions (eta/mu finite parts)";
    r.rhs.pole_product = pole.total();
    r.rhs.expectation = expectation.total();
    r.rhs.total = r.rhs.pole_product - r.rhs.trivial_sum - r.rhs.expectation;
  } else {
    const double alpha = g.exponential_rate();
    if (std::abs(1.0 - 2.0 * alpha) < 1e-12) fail(ErrorKind::TransformPole, "weil_form for exp(t/2) is degenerate");
    r.rhs.route = "exponential closed form";
    r.rhs.pole_product = w(0.0).real();
    r.rhs.expectation =
        ((neg_zeta_log_deriv(1.0 - alpha) - neg_zeta_log_deriv(alpha)) / (1.0 - 2.0 * alpha)).real();
    r.rhs.total = r.rhs.pole_product - r.rhs.trivial_sum - r.rhs.expectation;
  }

  if (g.family() == Family::assoc_laguerre) {
    ExpectationContext ctx;
    ctx.coeffs = &coeffs;
    const auto s1 = s1_value(g, zeros, ctx, trivial_cutoff);
    const auto inv = involuted_s1_value(g, zeros, ctx, trivial_cutoff);
    r.rhs_sum_prod = (s1.total + inv.total).real();
    r.li_identity_residual = r.lhs_zero_sum - 2.0 * li_mu(g.order(), coeffs);
  }
  return r;
}

}  // namespace efl
