#include <cmath>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/binomial.hpp>
#include <boost/math/special_functions/factorials.hpp>
#include <boost/math/special_functions/laguerre.hpp>
#include <doctest.h>

#include "efl/testfn.hpp"
#include "support.hpp"

using namespace efl;
using efl::test::kind_of;

namespace {

// Numerical Laplace transform of g.time_eval at s.
Complex laplace(const TestFunction& g, Complex s) {
  boost::math::quadrature::exp_sinh<double> integrator;
  const double sr = s.real(), si = s.imag();
  // e^{-sr t} g(t), zero once the decay underflows (g may overflow there)
  const auto weighted = [&](double t) {
    const double decay = std::exp(-sr * t);
    return decay == 0.0 ? 0.0 : decay * g.time_eval(t);
  };
  const double re = integrator.integrate([&](double t) { return weighted(t) * std::cos(si * t); });
  const double im = integrator.integrate([&](double t) { return -weighted(t) * std::sin(si * t); });
  return {re, im};
}

std::vector<Complex> sample_points(double threshold, int count) {
  std::uniform_real_distribution<double> re(threshold + 0.5, threshold + 3.0), im(-3.0, 3.0);
  std::vector<Complex> pts;
  for (int i = 0; i < count; ++i) pts.emplace_back(re(test::rng()), im(test::rng()));
  return pts;
}

void check_fidelity(const TestFunction& g, double tol = 1e-8, int count = 20) {
  CHECK(g.value_at_zero() == doctest::Approx(g.time_eval(0.0)).epsilon(1e-12));
  for (Complex s : sample_points(std::max(0.0, g.growth_rate()), count)) {
    const Complex want = laplace(g, s);
    CHECK_MESSAGE(std::abs(g.transform_eval(s) - want) <= tol * std::max(1.0, std::abs(want)),
                  g.label() << " at s = " << s);
  }
}

Complex random_point(double radius) {
  std::uniform_real_distribution<double> ang(0.0, 6.283185307179586);
  return std::polar(radius, ang(test::rng()));
}

}  // namespace

TEST_SUITE("testfn") {

TEST_CASE("poly_tf") {
  CHECK(poly_tf(0).transform_eval(2.0) == Complex(0.5));
  CHECK(std::abs(poly_tf(3).transform_eval(2.0) - 0.375) < 1e-15);
  CHECK(poly_tf(2).growth() == Growth::polynomial);
  CHECK(std::abs(poly_tf(2).transform_eval(3.0) - laplace(poly_tf(2), 3.0)) < 1e-8);
  CHECK(kind_of([] { poly_tf(61); }) == ErrorKind::OrderTooLarge);
  CHECK(kind_of([] { poly_tf(1).transform_eval(0.0); }) == ErrorKind::TransformPole);
}

TEST_CASE("exp_tf") {
  CHECK(std::abs(exp_tf(-1.0).transform_eval(0.0) - 1.0) < 1e-15);
  CHECK(exp_tf(0.0).family() == Family::polynomial);
  CHECK(std::abs(exp_tf(0.0).transform_eval(2.0) - poly_tf(0).transform_eval(2.0)) == 0.0);
  CHECK(std::abs(exp_tf(-2.0).transform_eval(1.0) - 1.0 / 3.0) < 1e-15);
  CHECK(std::abs(laplace(exp_tf(-2.0), 1.0) - 1.0 / 3.0) < 1e-10);
  CHECK(exp_tf(1.5).growth() == Growth::exponential);
  CHECK(exp_tf(-1.0).growth() == Growth::decaying);
}

TEST_CASE("laguerre_tf") {
  CHECK(laguerre_tf(0).time_eval(3.7) == 1.0);
  CHECK(std::abs(laguerre_tf(0).transform_eval(2.0) - 0.5) < 1e-15);
  CHECK(std::abs(laguerre_tf(1).time_eval(0.3) - 0.7) < 1e-15);
  CHECK(std::abs(laguerre_tf(1).transform_eval(2.0) - 0.25) < 1e-15);
  // g~ of sum_k C(n,k) (-t)^k / k! is sum_k C(n,k) (-1)^k / s^{k+1}
  Complex coef = 0.0;
  const double s = 1.7;
  for (int k = 0; k <= 5; ++k) coef += boost::math::binomial_coefficient<double>(5, k) * std::pow(-1.0, k) / std::pow(s, k + 1);
  CHECK(std::abs(laguerre_tf(5).transform_eval(s) - coef) < 1e-12);
  CHECK(kind_of([] { laguerre_tf(61); }) == ErrorKind::OrderTooLarge);
}

TEST_CASE("laguerre evaluation against boost and the recurrence") {
  std::uniform_real_distribution<double> ts(0.0, 10.0);
  for (int i = 0; i < 20; ++i) {
    const double t = ts(test::rng());
    for (int n = 0; n <= 30; ++n) {
      CHECK(std::abs(laguerre(n, t) - boost::math::laguerre(static_cast<unsigned>(n), t)) < 1e-10);
      if (n >= 1 && n < 30) {
        const double lhs = (n + 1) * laguerre(n + 1, t);
        const double rhs = (2 * n + 1 - t) * laguerre(n, t) - n * laguerre(n - 1, t);
        CHECK_MESSAGE(std::abs(lhs - rhs) < 1e-10, "n = " << n << " t = " << t);
      }
      if (n <= 20) CHECK(std::abs(laguerre_binomial(n, t) - laguerre_recurrence(n, t)) < 1e-8);
    }
  }
}

TEST_CASE("assoc_laguerre_tf") {
  CHECK(assoc_laguerre_tf(1).time_eval(5.0) == 1.0);
  CHECK(std::abs(assoc_laguerre_tf(1).transform_eval(3.0) - 1.0 / 3.0) < 1e-15);
  CHECK(std::abs(assoc_laguerre_tf(2).transform_eval(2.0) - 0.75) < 1e-15);
  CHECK(assoc_laguerre_tf(7).value_at_zero() == 7.0);
  CHECK(std::abs(assoc_laguerre_tf(4).time_eval(1.3) - boost::math::laguerre(3u, 1u, 1.3)) < 1e-12);
  for (int i = 0; i < 50; ++i) {
    const Complex s = random_point(0.5 + 5.0 * i / 50.0) + Complex{0.3, 0.0};
    for (int n : {1, 3, 10}) {
      Complex geo = 0.0;
      for (int k = 0; k < n; ++k) geo += std::pow(1.0 - 1.0 / s, k);
      geo /= s;
      CHECK(std::abs(assoc_laguerre_tf(n).transform_eval(s) - geo) <= 1e-12 * std::max(1.0, std::abs(geo)));
    }
  }
  CHECK(kind_of([] { assoc_laguerre_tf(0); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("transform fidelity for built-in families") {
  for (int k = 0; k <= 5; ++k) check_fidelity(poly_tf(k));
  for (double a : {-2.0, -0.5, 1.0}) check_fidelity(exp_tf(a));
  for (int n : {0, 1, 5, 10}) check_fidelity(laguerre_tf(n));
  for (int n : {1, 2, 6, 10}) check_fidelity(assoc_laguerre_tf(n));
  check_fidelity(polynomial_tf({1.0, -2.0, 0.5}));
}

TEST_CASE("involution") {
  const TestFunction one = poly_tf(0);
  const TestFunction hat = involution(one);
  CHECK(std::abs(hat.time_eval(0.7) + std::exp(0.7)) < 1e-15);
  CHECK(std::abs(hat.transform_eval(3.0) - 1.0 / (1.0 - 3.0)) < 1e-15);
  CHECK(hat.value_at_zero() == -1.0);
  CHECK(hat.involuted());

  for (const TestFunction& g : {assoc_laguerre_tf(3), laguerre_tf(4), exp_tf(-1.0), poly_tf(2)}) {
    const TestFunction back = involution(involution(g));
    CHECK(!back.involuted());
    for (int i = 0; i < 20; ++i) {
      const Complex s = random_point(3.0) + Complex{0.5, 0.0};
      CHECK(std::abs(back.transform_eval(s) - g.transform_eval(s)) <= 1e-13 * std::max(1.0, std::abs(g.transform_eval(s))));
    }
  }
  CHECK(involution(assoc_laguerre_tf(3)).transform_eval(0.3) == assoc_laguerre_tf(3).transform_eval(0.7));

  TestFunction::Parts p;
  p.label = "positive-time only";
  p.time = [](double t) { return std::sqrt(t); };
  p.transform = [](Complex s) { return 0.886226925452758 / std::pow(s, 1.5); };
  const TestFunction root(std::move(p));
  CHECK(kind_of([&] { involution(root); }) == ErrorKind::TimeDomainUndefined);
  CHECK(kind_of([&] { root.time_eval(-1.0); }) == ErrorKind::TimeDomainUndefined);
}

TEST_CASE("convolve_transform") {
  const TransformFn sq = convolve_transform(poly_tf(0), poly_tf(0));
  for (Complex s : {Complex{2.0, 0.0}, Complex{1.0, 3.0}}) CHECK(std::abs(sq(s) - poly_tf(1).transform_eval(s)) < 1e-15);
  CHECK(std::abs(convolve_transform(exp_tf(-1.0), exp_tf(-2.0))(0.0) - 0.5) < 1e-15);

  // (a * b)(t) by quadrature, then transformed numerically
  const TestFunction a = poly_tf(1), b = polynomial_tf({1.0, 0.0, 1.0});
  const auto conv_time = [&](double t) {
    if (t == 0.0) return 0.0;
    return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
        [&](double u) { return a.time_eval(u) * b.time_eval(t - u); }, 0.0, t);
  };
  boost::math::quadrature::exp_sinh<double> outer;
  const double numeric = outer.integrate([&](double t) {
    const double decay = std::exp(-3.0 * t);
    return decay == 0.0 ? 0.0 : decay * conv_time(t);
  });
  CHECK(std::abs(convolve_transform(a, b)(3.0).real() - numeric) < 1e-7);
  check_fidelity(convolve(a, b), 1e-8, 5);
}

TEST_CASE("sum_prod_check") {
  CHECK(std::abs(assoc_laguerre_tf(2).transform_eval(-1.0) + 3.0) < 1e-15);
  CHECK(sum_prod_check(2, 2.0) < 1e-15);
  CHECK(sum_prod_check(1, Complex{0.3, 4.0}) < 1e-13);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) worst = std::max(worst, sum_prod_check(25, random_point(10.0)));
  CHECK(worst < 1e-11);
  for (int n = 1; n <= 40; ++n) {
    const Complex s = random_point(10.0);
    const double g = std::abs(assoc_laguerre_tf(n).transform_eval(s));
    CHECK(sum_prod_check(n, s) <= 1e-12 * (1.0 + g * g));
  }
  CHECK(kind_of([] { sum_prod_check(3, 0.0); }) == ErrorKind::PoleInput);
  CHECK(kind_of([] { sum_prod_check(3, 1.0); }) == ErrorKind::PoleInput);
}

TEST_CASE("transform pair rules, three instances each") {
  REQUIRE(transform_pair_rules().size() == 10);
  const TestFunction bases[] = {poly_tf(2), laguerre_tf(3), exp_tf(-1.0)};
  const Complex s{2.5, 0.7};
  for (const TestFunction& g : bases) {
    const Complex gs = g.transform_eval(s);
    // G1
    CHECK(std::abs(exp_shift(g, 0.5).transform_eval(s) - g.transform_eval(s + 0.5)) < 1e-15);
    check_fidelity(exp_shift(g, 0.5), 1e-8, 3);
    // G2
    CHECK(std::abs(derivative_tf(g).transform_eval(s) - (s * gs - g.value_at_zero())) < 1e-14);
    check_fidelity(derivative_tf(g), 1e-8, 3);
    // G3: t g(t) has transform -g~'(s)
    const double h = 1e-4;
    const Complex dg = (g.transform_eval(s + h) - g.transform_eval(s - h)) / (2 * h);
    CHECK(std::abs(power_multiply(g, 1).transform_eval(s) + dg) < 1e-7);
    check_fidelity(power_multiply(g, 2), 1e-8, 3);
    // G4
    CHECK(std::abs(integral_tf(g).transform_eval(s) - gs / s) < 1e-15);
    check_fidelity(integral_tf(g), 1e-8, 3);
    // G5
    CHECK(std::abs(scale_tf(g, 2.0).transform_eval(s) - g.transform_eval(2.0 * s)) < 1e-15);
    check_fidelity(scale_tf(g, 2.0), 1e-8, 3);
    // G6
    CHECK(std::abs(convolve(g, exp_tf(-2.0)).transform_eval(s) - gs / (s + 2.0)) < 1e-15);
  }
  // S1, S2
  for (int k : {0, 1, 4}) {
    CHECK(std::abs(poly_tf(k).transform_eval(s) - boost::math::factorial<double>(k) / std::pow(s, k + 1)) < 1e-14);
  }
  for (double a : {-1.0, 0.5, 2.0}) CHECK(std::abs(exp_tf(a).transform_eval(s) - 1.0 / (s - a)) < 1e-15);
  // S3, S4
  for (double a : {0.0, 0.5, 2.0}) CHECK(std::abs(delta_transform(a)(s) - std::exp(-a * s)) < 1e-15);
  for (double a : {0.25, 1.0, 3.0}) {
    Complex comb = 0.0;
    for (int n = 0; n < 2000; ++n) comb += std::exp(-a * n * s);
    CHECK(std::abs(delta_comb_transform(a)(s) - comb) < 1e-12);
  }
  CHECK(kind_of([] { scale_tf(poly_tf(1), -1.0); }) == ErrorKind::InvalidArgument);
}

}  // TEST_SUITE
