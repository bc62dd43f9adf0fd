#include "efl/explicit_formula.hpp"

#include <cmath>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss.hpp>
#include <fmt/format.h>

#include "efl/errors.hpp"
#include "efl/summation.hpp"

namespace efl {
namespace {

constexpr double kJumpTolerance = 1e-6;

Complex half_gamma_log_pi_atom(double g0) {
  const auto& c = constants();
  return 0.5 * (c.euler_gamma + c.log_pi) * g0;
}

void require_zeros(const ZeroSet& zeros) {
  if (zeros.empty()) fail(ErrorKind::EmptyZeroSet, "explicit formula needs at least one zero");
}

void fill_zero_metadata(ExplicitFormulaReport& r, const ZeroSet& zeros) {
  r.zero_count = zeros.size();
  r.truncation_height = zeros.ordinates.back();
  r.assumptions.on_critical_line = zeros.on_critical_line;
  if (zeros.on_critical_line) r.assumptions.notes.push_back("zeros taken as 1/2 + i*gamma (critical-line assumption)");
}

// Sum and tail of a paired zero-side series.
void zero_side(const ZeroSet& zeros, const PairedTerm& paired, bool include_tail, Complex& sum, Complex& tail) {
  sum = paired_zero_sum(zeros, paired);
  tail = include_tail ? density_tail(paired, tail_start(zeros)) : Complex{0.0, 0.0};
}

bool supported_s1_family(const TestFunction& g) {
  return !g.involuted() && (g.is_polynomial_family() || g.family() == Family::exponential);
}

const LaurentCoefficients& coefficients_for(const ExpectationContext& ctx, int order,
                                            std::optional<LaurentCoefficients>& storage) {
  if (ctx.coeffs && ctx.coeffs->order >= order) return *ctx.coeffs;
  storage = laurent_coefficients(std::max(order, 1), ctx.cfg);
  return *storage;
}

}  // namespace

std::string_view to_string(ReportKind k) {
  switch (k) {
    case ReportKind::psi: return "psi";
    case ReportKind::general: return "general";
    case ReportKind::s1: return "s1";
    case ReportKind::involuted_s1: return "involuted_s1";
  }
  return "unknown";
}

Complex ExplicitFormulaReport::signed_sum() const {
  Complex t{0.0, 0.0};
  t += static_cast<double>(signs.pole) * pole_term;
  t += static_cast<double>(signs.trivial) * trivial_zero_sum;
  t += static_cast<double>(signs.nontrivial) * nontrivial_zero_sum;
  t += static_cast<double>(signs.atom) * atom_term;
  t += static_cast<double>(signs.expectation) * expectation_term;
  return t;
}

bool is_prime_power(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      return n == 1;
    }
  }
  return true;
}

Complex paired_zero_sum(const ZeroSet& zeros, const PairedTerm& paired) {
  BlockedPairwiseSum<Complex> acc;
  for (double gamma : zeros.ordinates) acc.add(paired(gamma));
  return acc.total();
}

double tail_start(const ZeroSet& zeros) {
  const double last = zeros.ordinates.back();
  return last + kPi / std::log(last / (2.0 * kPi));
}

Complex density_tail(const PairedTerm& paired, double t) {
  boost::math::quadrature::exp_sinh<double> integrator;
  const auto density = [](double gamma) { return std::log(gamma / (2.0 * kPi)) / (2.0 * kPi); };
  // shift to [0, inf) for exp_sinh
  const double re = integrator.integrate([&](double u) { return paired(t + u).real() * density(t + u); });
  const double im = integrator.integrate([&](double u) { return paired(t + u).imag() * density(t + u); });
  return {re, im};
}

TrivialSeries trivial_series(const std::function<Complex(double n)>& term, int cutoff, bool tail) {
  if (cutoff < 1) fail(ErrorKind::InvalidArgument, "trivial cutoff must be positive");
  TrivialSeries r;
  r.cutoff = cutoff;
  BlockedPairwiseSum<Complex> acc;
  for (int n = 1; n <= cutoff; ++n) acc.add(term(static_cast<double>(n)));
  r.direct = acc.total();
  if (tail) {
    const double big_n = static_cast<double>(cutoff);
    // int_N^inf term = int_0^1 term(N/v) N/v^2 dv
    const auto integrand = [&](double v) { return term(big_n / v) * (big_n / (v * v)); };
    using GL = boost::math::quadrature::gauss<double, 30>;
    const double re = GL::integrate([&](double v) { return integrand(v).real(); }, 0.0, 1.0);
    const double im = GL::integrate([&](double v) { return integrand(v).imag(); }, 0.0, 1.0);
    const double h = 1e-3 * big_n;
    const Complex deriv = (term(big_n + h) - term(big_n - h)) / (2.0 * h);
    r.tail = Complex{re, im} - 0.5 * term(big_n) - deriv / 12.0;
  }
  return r;
}

ExplicitFormulaReport psi_analytic(double x, const ZeroSet& zeros, int trivial_cutoff) {
  if (!(x > 1.0)) fail(ErrorKind::InvalidArgument, "psi_analytic needs x > 1");
  require_zeros(zeros);
  const double nearest = std::round(x);
  if (std::abs(x - nearest) < kJumpTolerance && is_prime_power(static_cast<std::uint64_t>(nearest))) {
    fail(ErrorKind::AtJumpPoint, fmt::format("x = {} is within {} of the prime power {}", x, kJumpTolerance, nearest));
  }
  ExplicitFormulaReport r;
  r.kind = ReportKind::psi;
  r.test_function = "1 (Chebyshev psi)";
  r.x = x;
  r.signs = {1, 1, -1, -1, 0};
  r.pole_term = x;
  const double lx = std::log(x);
  const TrivialSeries triv = trivial_series(
      [lx](double n) { return Complex{std::exp(-2.0 * n * lx) / (2.0 * n), 0.0}; }, trivial_cutoff, false);
  r.trivial_cutoff = trivial_cutoff;
  r.trivial_paired_with_atom = false;
  const double closed = -0.5 * std::log1p(-std::exp(-2.0 * lx));
  r.trivial_tail = closed - triv.direct.real();
  r.trivial_zero_sum = triv.direct + r.trivial_tail;
  fill_zero_metadata(r, zeros);
  const PairedTerm paired = [lx](double gamma) {
    const Complex rho{0.5, gamma};
    return Complex{2.0 * (std::exp(rho * lx) / rho).real(), 0.0};
  };
  r.nontrivial_zero_sum = paired_zero_sum(zeros, paired);
  r.assumptions.notes.push_back("no tail estimate for the oscillatory sum x^rho/rho");
  r.atom_term = constants().log_2pi;
  r.total = r.signed_sum();
  return r;
}

ExplicitFormulaReport general_rhs(const TestFunction& g, Complex s, const ZeroSet& zeros, int trivial_cutoff,
                                  bool include_tail) {
  require_zeros(zeros);
  ExplicitFormulaReport r;
  r.kind = ReportKind::general;
  r.test_function = g.label();
  r.s = s;
  r.signs = {1, -1, -1, -1, 0};
  r.pole_term = g.transform_eval(s - 1.0);
  const double g0 = g.value_at_zero();
  const TrivialSeries triv = trivial_series(
      [&](double n) { return g.transform_eval(s + 2.0 * n) - g0 / (2.0 * n); }, trivial_cutoff);
  r.trivial_cutoff = trivial_cutoff;
  r.trivial_zero_sum = triv.total();
  r.trivial_tail = triv.tail;
  fill_zero_metadata(r, zeros);
  const PairedTerm paired = [&](double gamma) {
    return g.transform_eval(s - Complex{0.5, gamma}) + g.transform_eval(s - Complex{0.5, -gamma});
  };
  Complex sum, tail;
  zero_side(zeros, paired, include_tail, sum, tail);
  r.zero_tail_estimate = tail;
  r.zero_tail_included = include_tail;
  r.nontrivial_zero_sum = sum + tail;
  r.atom_term = half_gamma_log_pi_atom(g0);
  r.total = r.signed_sum();
  return r;
}

ExplicitFormulaReport s1_value(const TestFunction& g, const ZeroSet& zeros, const ExpectationContext& ctx,
                               int trivial_cutoff) {
  if (!supported_s1_family(g)) fail(ErrorKind::UnsupportedFamily, fmt::format("s1_value does not support {}", g.label()));
  require_zeros(zeros);
  ExplicitFormulaReport r;
  r.kind = ReportKind::s1;
  r.test_function = g.label();
  r.s = 1.0;
  r.signs = {1, -1, 0, -1, -1};
  const double g0 = g.value_at_zero();

  if (g.is_polynomial_family()) {
    const auto m = g.transform_moments();
    std::optional<LaurentCoefficients> storage;
    const auto& c = coefficients_for(ctx, static_cast<int>(m.size()) - 1, storage);
    BlockedPairwiseSum<double> acc;
    for (std::size_t k = 0; k < m.size(); ++k) acc.add(m[k] * (k % 2 == 0 ? 1.0 : -1.0) * c.eta[k]);
    r.pole_term = 0.0;
    r.expectation_term = acc.total();
    r.assumptions.regularized = true;
    r.assumptions.expectation_formal_divergent = true;
    r.assumptions.expectation_route = "eta finite part";
    r.assumptions.notes.push_back("pole term g~(0) and <e^{-t} g(t)> combined into their finite part");
  } else {
    const double a = g.exponential_rate();
    r.pole_term = g.transform_eval(0.0);
    if (a < 0.0 && ctx.table) {
      const PrimeExpectation pe = prime_expectation(g, 1.0, *ctx.table);
      r.expectation_term = pe.corrected();
      r.assumptions.expectation_route = "arithmetic";
      r.assumptions.notes.push_back(fmt::format("prime sum over n <= {} with tail estimate", ctx.table->limit()));
    } else {
      r.expectation_term = neg_zeta_log_deriv(1.0 - a, ctx.cfg);
      r.assumptions.expectation_route = "analytic";
      r.assumptions.expectation_formal_divergent = a >= 0.0;
      r.assumptions.regularized = a >= 0.0;
    }
  }

  const TrivialSeries triv = trivial_series(
      [&](double n) { return g.transform_eval(1.0 + 2.0 * n) - g0 / (2.0 * n); }, trivial_cutoff);
  r.trivial_cutoff = trivial_cutoff;
  r.trivial_zero_sum = triv.total();
  r.trivial_tail = triv.tail;
  r.atom_term = half_gamma_log_pi_atom(g0);

  fill_zero_metadata(r, zeros);
  const PairedTerm paired = [&](double gamma) {
    return g.transform_eval(Complex{0.5, -gamma}) + g.transform_eval(Complex{0.5, gamma});
  };
  Complex sum, tail;
  zero_side(zeros, paired, true, sum, tail);
  r.zero_tail_estimate = tail;
  r.zero_tail_included = true;
  r.nontrivial_zero_sum = sum + tail;
  r.direct_zero_sum = r.nontrivial_zero_sum;
  r.total = r.signed_sum();
  r.difference = r.total - r.nontrivial_zero_sum;
  return r;
}

ExplicitFormulaReport involuted_s1_value(const TestFunction& g, const ZeroSet& zeros, const ExpectationContext& ctx,
                                         int trivial_cutoff) {
  (void)involution(g);
  if (!supported_s1_family(g)) {
    fail(ErrorKind::UnsupportedFamily, fmt::format("involuted_s1_value does not support {}", g.label()));
  }
  require_zeros(zeros);
  ExplicitFormulaReport r;
  r.kind = ReportKind::involuted_s1;
  r.test_function = g.label();
  r.s = 1.0;
  r.signs = {1, -1, 0, 1, 1};
  const double g0 = g.value_at_zero();
  r.pole_term = g.transform_eval(1.0);

  if (g.is_polynomial_family()) {
    const auto m = g.transform_moments();
    std::optional<LaurentCoefficients> storage;
    const auto& c = coefficients_for(ctx, static_cast<int>(m.size()) - 1, storage);
    BlockedPairwiseSum<double> acc;
    for (std::size_t k = 0; k < m.size(); ++k) acc.add(m[k] * (k % 2 == 0 ? 1.0 : -1.0) * c.mu[k]);
    r.expectation_term = acc.total();
    r.assumptions.regularized = true;
    r.assumptions.expectation_formal_divergent = true;
    r.assumptions.expectation_route = "mu finite part";
    r.assumptions.notes.push_back("<g(-t)> replaced by its analytic continuation sum m_k (-1)^k mu_k");
  } else {
    const double a = g.exponential_rate();
    if (a > 1.0 && ctx.table) {
      const PrimeExpectation pe = prime_expectation(exp_tf(-a), 0.0, *ctx.table);
      r.expectation_term = pe.corrected();
      r.assumptions.expectation_route = "arithmetic";
      r.assumptions.notes.push_back(fmt::format("prime sum over n <= {} with tail estimate", ctx.table->limit()));
    } else {
      r.expectation_term = neg_zeta_log_deriv(a, ctx.cfg);
      r.assumptions.expectation_route = "analytic";
      r.assumptions.expectation_formal_divergent = a <= 1.0;
      r.assumptions.regularized = a <= 1.0;
    }
  }

  const TrivialSeries triv = trivial_series(
      [&](double n) { return g.transform_eval(-2.0 * n) + g0 / (2.0 * n); }, trivial_cutoff);
  r.trivial_cutoff = trivial_cutoff;
  r.trivial_zero_sum = triv.total();
  r.trivial_tail = triv.tail;
  r.atom_term = half_gamma_log_pi_atom(g0);

  fill_zero_metadata(r, zeros);
  const PairedTerm paired = [&](double gamma) {
    return g.transform_eval(Complex{0.5, gamma}) + g.transform_eval(Complex{0.5, -gamma});
  };
  Complex sum, tail;
  zero_side(zeros, paired, true, sum, tail);
  r.zero_tail_estimate = tail;
  r.zero_tail_included = true;
  r.nontrivial_zero_sum = sum + tail;
  r.direct_zero_sum = r.nontrivial_zero_sum;
  r.total = r.signed_sum();
  r.difference = r.total - r.nontrivial_zero_sum;
  return r;
}

}  // namespace efl
