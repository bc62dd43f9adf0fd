#include <algorithm>
#include <cmath>
#include <numbers>

#include <doctest.h>

#include "efl/arith.hpp"
#include "efl/explicit_formula.hpp"
#include "efl/laurent.hpp"
#include "efl/li_weil.hpp"
#include "efl/testfn.hpp"
#include "efl/zeta.hpp"
#include "support.hpp"

using namespace efl;
using efl::test::kind_of;

namespace {

const VonMangoldtTable& table() {
  static const VonMangoldtTable t = sieve(1'000'000);
  return t;
}

const LaurentCoefficients& coeffs() {
  static const LaurentCoefficients c = laurent_coefficients(30);
  return c;
}

// sum over rho of f(rho), conjugate pairs, ascending ordinates.
Complex direct_sum(const ZeroSet& zs, const std::function<Complex(Complex)>& f) {
  Complex acc = 0.0;
  for (double g : zs.ordinates) acc += f(Complex{0.5, g}) + f(Complex{0.5, -g});
  return acc;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return v.size() % 2 ? v[v.size() / 2] : 0.5 * (v[v.size() / 2 - 1] + v[v.size() / 2]);
}

std::vector<double> sweep_points() {
  std::mt19937_64 gen(20231107);
  std::uniform_real_distribution<double> xs(5.0, 500.0);
  std::vector<double> pts;
  while (pts.size() < 20) {
    const double x = xs(gen);
    const double nearest = std::round(x);
    if (std::abs(x - nearest) < 0.01 && is_prime_power(static_cast<std::uint64_t>(nearest))) continue;
    pts.push_back(x);
  }
  return pts;
}

}  // namespace

TEST_SUITE("xf-engine") {

TEST_CASE("psi_analytic at 10.5") {
  const ZeroSet& zs = test::table_zeros();
  const double psi105 = psi_arith(10.5, table());
  const ExplicitFormulaReport r = psi_analytic(10.5, zs.prefix(1000));
  CHECK(std::abs(r.total.real() - psi105) < 0.05);
  CHECK(r.zero_count == 1000);
  CHECK(r.truncation_height == zs.ordinates[999]);
  CHECK(r.assumptions.on_critical_line);
}

TEST_CASE("psi_analytic at 100.5 with 2000 zeros") {
  const ZeroSet& zs = test::table_zeros();
  std::vector<double> errs;
  for (std::size_t n : {250UL, 1000UL, 2000UL}) {
    errs.push_back(std::abs(psi_analytic(100.5, zs.prefix(n)).total.real() - psi_arith(100.5, table())));
  }
  CHECK(errs.back() < 0.1);
  const int rises = (errs[1] > errs[0]) + (errs[2] > errs[1]);
  CHECK(rises <= 1);
}

TEST_CASE("psi trivial-zero series at x = 2") {
  const double x = 2.0;
  const TrivialSeries t = trivial_series([&](double n) { return std::pow(x, -2.0 * n) / (2.0 * n); }, 1000);
  CHECK(std::abs(t.total() - std::log(4.0 / 3.0) / 2.0) < 1e-15);
  CHECK(kind_of([&] { psi_analytic(2.0, test::computed_zeros()); }) == ErrorKind::AtJumpPoint);
  CHECK(kind_of([&] { psi_analytic(10.5, ZeroSet{}); }) == ErrorKind::EmptyZeroSet);
}

TEST_CASE("psi sweep truncation monotonicity") {
  const ZeroSet& zs = test::table_zeros();
  const auto pts = sweep_points();
  std::vector<double> medians;
  for (std::size_t n : {500UL, 2000UL, 5000UL}) {
    const ZeroSet sub = zs.prefix(n);
    std::vector<double> errs;
    for (double x : pts) errs.push_back(std::abs(psi_analytic(x, sub).total.real() - psi_arith(x, table())));
    medians.push_back(median(errs));
  }
  CHECK(medians[1] < medians[0]);
  CHECK(medians[2] < medians[1]);
}

TEST_CASE("psi sweep bound with 5000 zeros") {
  const ZeroSet sub = test::table_zeros().prefix(5000);
  for (double x : sweep_points()) {
    CHECK_MESSAGE(std::abs(psi_analytic(x, sub).total.real() - psi_arith(x, table())) < 0.1, "x = " << x);
  }
}

TEST_CASE("general_rhs with g = 1") {
  const ZeroSet zs = test::table_zeros().prefix(10000);
  const ExplicitFormulaReport r = general_rhs(poly_tf(0), 2.0, zs);
  CHECK(std::abs(r.total - neg_zeta_log_deriv(2.0)) < 1e-4);
  CHECK(std::abs(r.pole_term - 1.0) < 1e-15);
  CHECK(std::abs(r.trivial_zero_sum + 0.5) < 1e-12);
  CHECK(r.zero_tail_included);
  CHECK(r.trivial_paired_with_atom);
  CHECK(r.trivial_cutoff == kDefaultTrivialCutoff);

  const ExplicitFormulaReport lin = general_rhs(poly_tf(1), 2.0, zs);
  CHECK(std::abs(lin.total + derivatives_at(2.0, 1).coefficients[1]) < 1e-4);
}

TEST_CASE("g = 1 identity at s in {2, 3, 4}") {
  const ZeroSet zs = test::table_zeros().prefix(10000);
  for (double s : {2.0, 3.0, 4.0}) {
    const PrimeExpectation pe = prime_expectation(poly_tf(0), s, table());
    const ExplicitFormulaReport r = general_rhs(poly_tf(0), s, zs);
    const double tails = std::abs(pe.tail_estimate) + std::abs(r.zero_tail_estimate) + std::abs(r.trivial_tail);
    CHECK_MESSAGE(std::abs(pe.corrected() - r.total) <= tails, "s = " << s);
  }
}

TEST_CASE("report re-addition and realness") {
  const ZeroSet zs = test::table_zeros().prefix(2000);
  const ExpectationContext ctx{&table(), &coeffs(), {}};
  std::vector<ExplicitFormulaReport> reports{
      psi_analytic(57.3, zs),
      general_rhs(laguerre_tf(3), 2.5, zs),
      s1_value(assoc_laguerre_tf(4), zs, ctx),
      involuted_s1_value(assoc_laguerre_tf(4), zs, ctx),
      s1_value(exp_tf(-1.0), zs, ctx),
  };
  for (const auto& r : reports) {
    const double scale = std::abs(r.pole_term) + std::abs(r.trivial_zero_sum) + std::abs(r.nontrivial_zero_sum) +
                         std::abs(r.atom_term) + std::abs(r.expectation_term);
    CHECK(std::abs(r.total - r.signed_sum()) <= 1e-15 * (1.0 + scale));
    CHECK(std::abs(r.nontrivial_zero_sum.imag()) < 1e-12);
  }
}

TEST_CASE("s1_value") {
  const ZeroSet& zs = test::table_zeros();
  const ExpectationContext ctx{&table(), &coeffs(), {}};
  const auto& c = constants();
  const double seed = 1.0 + 0.5 * (c.euler_gamma - c.log_4pi);

  const ExplicitFormulaReport one = s1_value(assoc_laguerre_tf(1), zs, ctx);
  CHECK(std::abs(one.total.real() - seed) < 1e-12);
  CHECK(std::abs(one.total.real() - 0.0230957) < 1e-7);
  REQUIRE(one.direct_zero_sum.has_value());
  CHECK(std::abs(*one.direct_zero_sum - one.total) < 1e-4);
  CHECK(one.assumptions.regularized);

  const TestFunction g3 = assoc_laguerre_tf(3);
  const Complex at_rho = direct_sum(zs, [&](Complex r) { return g3.transform_eval(r); });
  const Complex at_one_minus = direct_sum(zs, [&](Complex r) { return g3.transform_eval(1.0 - r); });
  CHECK(std::abs(at_rho - at_one_minus) < 1e-12);

  const ZeroSet z4 = zs.prefix(10000);
  const ExplicitFormulaReport e = s1_value(exp_tf(-1.0), z4, ctx);
  CHECK(e.assumptions.expectation_route == "arithmetic");
  const Complex direct = direct_sum(z4, [](Complex r) { return 1.0 / (2.0 - r); });
  CHECK(std::abs(e.total - direct) < 1e-3);
  CHECK(kind_of([&] { s1_value(convolve(poly_tf(1), exp_tf(-1.0)), z4, ctx); }) == ErrorKind::UnsupportedFamily);
}

TEST_CASE("involuted_s1_value") {
  const ZeroSet& zs = test::table_zeros();
  const ExpectationContext ctx{&table(), &coeffs(), {}};
  const TestFunction g1 = assoc_laguerre_tf(1);
  CHECK(std::abs(involuted_s1_value(g1, zs, ctx).total - s1_value(g1, zs, ctx).total) < 1e-12);

  // sum (-1/rho)^2
  const ExplicitFormulaReport t = involuted_s1_value(poly_tf(1), zs, ctx);
  CHECK(std::abs(t.total.real() - zero_power_sum(1, coeffs()).eta_route) < 1e-9);

  const ZeroSet z4 = zs.prefix(10000);
  const ExplicitFormulaReport e = involuted_s1_value(exp_tf(-0.5), z4, ctx);
  const Complex direct = direct_sum(z4, [](Complex r) { return 1.0 / (r + 0.5); });
  CHECK(std::abs(e.total - direct) < 1e-3);
}

TEST_CASE("paired sums and tails") {
  const ZeroSet zs = test::computed_zeros();
  const PairedTerm t = [](double g) { return Complex{1.0 / (0.25 + g * g), 0.0}; };
  CHECK(std::abs(paired_zero_sum(zs, t) - direct_sum(zs, [](Complex r) { return 1.0 / r; })) < 1e-15);
  CHECK(tail_start(zs) > zs.ordinates.back());
  CHECK(density_tail(t, tail_start(zs)).real() > 0.0);
  CHECK(is_prime_power(2));
  CHECK(is_prime_power(81));
  CHECK(!is_prime_power(1));
  CHECK(!is_prime_power(12));
}

}  // TEST_SUITE
