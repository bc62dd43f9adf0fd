#include "efl/testfn.hpp"

#include <array>
#include <cmath>
#include <utility>

#include <boost/math/quadrature/gauss.hpp>
#include <fmt/format.h>

#include "efl/errors.hpp"

namespace efl {
namespace {

constexpr double kPoleGuard = 1e-8;
constexpr int kBinomialLimit = 20;

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return std::round(r);
}

double factorial(int k) {
  double r = 1.0;
  for (int i = 2; i <= k; ++i) r *= i;
  return r;
}

void check_order(int n, int lo, const char* what) {
  if (n < lo) fail(ErrorKind::InvalidArgument, fmt::format("{} order {} below {}", what, n, lo));
  if (n > kMaxTestFunctionOrder) fail(ErrorKind::OrderTooLarge, fmt::format("{} order {} exceeds {}", what, n, kMaxTestFunctionOrder));
}

void guard_zero(Complex s, const std::string& label) {
  if (std::abs(s) < kPoleGuard) fail(ErrorKind::TransformPole, fmt::format("{} transform evaluated at its pole s = 0", label));
}

// log(1 + z), principal branch; atanh series 2 sum u^{2k+1}/(2k+1), u = z/(2+z), for small z.
Complex log1p_complex(Complex z) {
  if (std::abs(z) >= 0.5) return std::log(1.0 + z);
  const Complex u = z / (2.0 + z);
  const Complex u2 = u * u;
  Complex acc{0.0, 0.0};
  Complex power = u;
  for (int k = 0; k < 40; ++k) {
    acc += power / (2.0 * k + 1.0);
    power *= u2;
    if (std::abs(power) < 1e-18 * std::abs(acc)) break;
  }
  return 2.0 * acc;
}

// (1 - 1/s)^n via n log(1 - 1/s), principal branch.
Complex laguerre_power(Complex s, int n) {
  const Complex w = 1.0 - 1.0 / s;
  if (w == Complex{0.0, 0.0}) return n == 0 ? Complex{1.0, 0.0} : Complex{0.0, 0.0};
  return std::exp(static_cast<double>(n) * log1p_complex(-1.0 / s));
}

// 1 - (1 - 1/s)^n without cancellation at large |s|.
Complex one_minus_laguerre_power(Complex s, int n) {
  const Complex w = 1.0 - 1.0 / s;
  if (w == Complex{0.0, 0.0}) return n == 0 ? Complex{0.0, 0.0} : Complex{1.0, 0.0};
  const Complex x = static_cast<double>(n) * log1p_complex(-1.0 / s);
  return -x * exprel(x);
}

Complex eval_moments(std::span<const double> moments, Complex s) {
  const Complex inv = 1.0 / s;
  Complex acc{0.0, 0.0};
  for (std::size_t k = moments.size(); k-- > 0;) acc = acc * inv + moments[k];
  return acc * inv;
}

double eval_monomials(std::span<const double> coeffs, double t) {
  double acc = 0.0;
  for (std::size_t k = coeffs.size(); k-- > 0;) acc = acc * t + coeffs[k];
  return acc;
}

std::vector<double> moments_to_coeffs(std::span<const double> moments) {
  std::vector<double> c(moments.size());
  for (std::size_t k = 0; k < moments.size(); ++k) c[k] = moments[k] / factorial(static_cast<int>(k));
  return c;
}

TestFunction from_moments(std::vector<double> moments, std::string label) {
  TestFunction::Parts p;
  p.label = std::move(label);
  const std::vector<double> coeffs = moments_to_coeffs(moments);
  p.time = [coeffs](double t) { return eval_monomials(coeffs, t); };
  p.transform = [moments, lbl = p.label](Complex s) {
    guard_zero(s, lbl);
    return eval_moments(moments, s);
  };
  p.value_at_zero = moments.empty() ? 0.0 : moments[0];
  p.growth_rate = 0.0;
  p.negative_time_ok = true;
  p.family = Family::polynomial;
  p.order = static_cast<int>(moments.size()) - 1;
  p.moments = std::move(moments);
  return TestFunction(std::move(p));
}

// Gauss-Legendre on [0, t] split into unit-ish panels.
double integrate_panels(const RealFn& f, double t) {
  if (t == 0.0) return 0.0;
  const int panels = std::max(1, static_cast<int>(std::ceil(std::abs(t))));
  const double h = t / panels;
  double acc = 0.0;
  for (int i = 0; i < panels; ++i) {
    acc += boost::math::quadrature::gauss<double, 20>::integrate(f, i * h, (i + 1) * h);
  }
  return acc;
}

constexpr std::array<TransformPairRule, 10> kRules = {{
    {TransformRule::G1, "e^{-at} f(t)", "f~(s+a)"},
    {TransformRule::G2, "f'(t)", "s f~(s) - f(+0)"},
    {TransformRule::G3, "t^n f(t)", "(-1)^n f~^{(n)}(s)"},
    {TransformRule::G4, "int_0^t f(u) du", "f~(s)/s"},
    {TransformRule::G5, "f(t/a)/a", "f~(as)"},
    {TransformRule::G6, "(f*g)(t)", "f~(s) g~(s)"},
    {TransformRule::S1, "t^n/n!", "1/s^{n+1}"},
    {TransformRule::S2, "e^{at}", "1/(s-a)"},
    {TransformRule::S3, "delta(t-a), a >= 0", "e^{-as}"},
    {TransformRule::S4, "sum_{n>=0} delta(t-na)", "1/(1-e^{-as})"},
}};

}  // namespace

std::string_view to_string(Growth g) {
  switch (g) {
    case Growth::decaying: return "decaying";
    case Growth::polynomial: return "polynomial";
    case Growth::exponential: return "exponential";
  }
  return "unknown";
}

std::string_view to_string(Family f) {
  switch (f) {
    case Family::polynomial: return "polynomial";
    case Family::exponential: return "exponential";
    case Family::laguerre: return "laguerre";
    case Family::assoc_laguerre: return "assoc_laguerre";
    case Family::custom: return "custom";
  }
  return "unknown";
}

std::string_view to_string(TransformRule r) {
  static constexpr std::array<std::string_view, 10> names = {"G1", "G2", "G3", "G4", "G5", "G6", "S1", "S2", "S3", "S4"};
  return names[static_cast<std::size_t>(r)];
}

TestFunction::TestFunction(Parts parts) : p_(std::move(parts)) {
  if (!p_.time || !p_.transform) fail(ErrorKind::InvalidArgument, "test function needs time and transform evaluators");
}

double TestFunction::time_eval(double t) const {
  if (t < 0.0 && !p_.negative_time_ok) {
    fail(ErrorKind::TimeDomainUndefined, fmt::format("{} is not defined for t < 0", p_.label));
  }
  return p_.time(t);
}

Complex TestFunction::transform_eval(Complex s) const {
  const Complex v = p_.transform(s);
  if (!is_finite(v)) fail(ErrorKind::TransformPole, fmt::format("{} transform not finite at s = {}{:+}i", p_.label, s.real(), s.imag()));
  return v;
}

Growth TestFunction::growth() const {
  if (p_.growth_rate < 0.0) return Growth::decaying;
  if (p_.growth_rate == 0.0) return Growth::polynomial;
  return Growth::exponential;
}

bool TestFunction::is_polynomial_family() const {
  return p_.family == Family::polynomial || p_.family == Family::laguerre || p_.family == Family::assoc_laguerre;
}

TestFunction poly_tf(int k) {
  check_order(k, 0, "poly_tf");
  std::vector<double> moments(static_cast<std::size_t>(k) + 1, 0.0);
  moments[static_cast<std::size_t>(k)] = factorial(k);
  TestFunction::Parts p;
  p.label = fmt::format("t^{}", k);
  p.time = [k](double t) { return k == 0 ? 1.0 : std::pow(t, k); };
  const double kf = factorial(k);
  p.transform = [k, kf, lbl = p.label](Complex s) {
    guard_zero(s, lbl);
    return kf / std::pow(s, k + 1);
  };
  p.value_at_zero = k == 0 ? 1.0 : 0.0;
  p.growth_rate = 0.0;
  p.negative_time_ok = true;
  p.family = Family::polynomial;
  p.order = k;
  p.moments = std::move(moments);
  return TestFunction(std::move(p));
}

TestFunction exp_tf(double a) {
  if (a == 0.0) {
    TestFunction::Parts p = poly_tf(0).parts();
    p.label = "exp(0t)";
    return TestFunction(std::move(p));
  }
  TestFunction::Parts p;
  p.label = fmt::format("exp({}t)", a);
  p.time = [a](double t) { return std::exp(a * t); };
  p.transform = [a, lbl = p.label](Complex s) {
    const Complex d = s - a;
    if (std::abs(d) < 1e-14 * std::max(1.0, std::abs(a))) fail(ErrorKind::TransformPole, fmt::format("{} transform at s = {}", lbl, a));
    return 1.0 / d;
  };
  p.value_at_zero = 1.0;
  p.growth_rate = a;
  p.negative_time_ok = true;
  p.family = Family::exponential;
  p.exp_rate = a;
  return TestFunction(std::move(p));
}

// Binomial sums in quad precision.
using Quad = __float128;

double laguerre_binomial(int n, double t) {
  Quad acc = 0;
  Quad power = 1;  // (-t)^k / k!
  for (int k = 0; k <= n; ++k) {
    acc += static_cast<Quad>(binomial(n, k)) * power;
    power *= -static_cast<Quad>(t) / (k + 1);
  }
  return static_cast<double>(acc);
}

double laguerre_recurrence(int n, double t) {
  if (n == 0) return 1.0;
  double prev = 1.0;
  double cur = 1.0 - t;
  for (int k = 1; k < n; ++k) {
    const double next = ((2.0 * k + 1.0 - t) * cur - k * prev) / (k + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

double laguerre(int n, double t) { return n <= kBinomialLimit ? laguerre_binomial(n, t) : laguerre_recurrence(n, t); }

double assoc_laguerre_sum(int n, double t) {
  if (n <= 0) return 0.0;
  if (n - 1 <= kBinomialLimit) {
    Quad acc = 0;
    Quad power = 1;  // (-t)^k / k!
    for (int k = 0; k < n; ++k) {
      acc += static_cast<Quad>(binomial(n, k + 1)) * power;
      power *= -static_cast<Quad>(t) / (k + 1);
    }
    return static_cast<double>(acc);
  }
  double prev = 1.0;
  double cur = 1.0 - t;
  double acc = prev + (n > 1 ? cur : 0.0);
  for (int k = 1; k + 1 < n; ++k) {
    const double next = ((2.0 * k + 1.0 - t) * cur - k * prev) / (k + 1.0);
    prev = cur;
    cur = next;
    acc += cur;
  }
  return acc;
}

TestFunction laguerre_tf(int n) {
  check_order(n, 0, "laguerre_tf");
  TestFunction::Parts p;
  p.label = fmt::format("L_{}", n);
  p.time = [n](double t) { return laguerre(n, t); };
  p.transform = [n, lbl = p.label](Complex s) {
    guard_zero(s, lbl);
    return laguerre_power(s, n) / s;
  };
  p.value_at_zero = 1.0;
  p.growth_rate = 0.0;
  p.negative_time_ok = true;
  p.family = Family::laguerre;
  p.order = n;
  p.moments.resize(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) p.moments[k] = (k % 2 == 0 ? 1.0 : -1.0) * binomial(n, k);
  return TestFunction(std::move(p));
}

TestFunction assoc_laguerre_tf(int n) {
  check_order(n, 1, "assoc_laguerre_tf");
  TestFunction::Parts p;
  p.label = fmt::format("L^1_{}", n - 1);
  p.time = [n](double t) { return assoc_laguerre_sum(n, t); };
  p.transform = [n, lbl = p.label](Complex s) {
    guard_zero(s, lbl);
    return one_minus_laguerre_power(s, n);
  };
  p.value_at_zero = static_cast<double>(n);
  p.growth_rate = 0.0;
  p.negative_time_ok = true;
  p.family = Family::assoc_laguerre;
  p.order = n;
  p.moments.resize(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) p.moments[k] = (k % 2 == 0 ? 1.0 : -1.0) * binomial(n, k + 1);
  return TestFunction(std::move(p));
}

TestFunction polynomial_tf(std::vector<double> coeffs, std::string label) {
  if (coeffs.empty()) fail(ErrorKind::InvalidArgument, "polynomial_tf needs at least one coefficient");
  if (coeffs.size() > kMaxTestFunctionOrder + 1) fail(ErrorKind::OrderTooLarge, "polynomial degree too large");
  std::vector<double> moments(coeffs.size());
  for (std::size_t k = 0; k < coeffs.size(); ++k) moments[k] = coeffs[k] * factorial(static_cast<int>(k));
  return from_moments(std::move(moments), std::move(label));
}

TestFunction involution(const TestFunction& g) {
  if (!g.evaluable_at_negative_time()) {
    fail(ErrorKind::TimeDomainUndefined, fmt::format("involution of {} needs g(t) for t < 0", g.label()));
  }
  TestFunction::Parts p = g.parts();
  const RealFn base_time = g.parts().time;
  const TransformFn base_transform = g.parts().transform;
  p.label = g.involuted() && g.label().rfind("inv(", 0) == 0 ? g.label().substr(4, g.label().size() - 5)
                                                              : fmt::format("inv({})", g.label());
  p.time = [base_time](double t) { return -std::exp(t) * base_time(-t); };
  p.transform = [base_transform](Complex s) { return base_transform(1.0 - s); };
  p.value_at_zero = -g.value_at_zero();
  p.growth_rate = 1.0 - g.growth_rate();
  p.negative_time_ok = true;
  p.involuted = !g.involuted();
  return TestFunction(std::move(p));
}

TransformFn convolve_transform(const TestFunction& a, const TestFunction& b) {
  return [a, b](Complex s) { return a.transform_eval(s) * b.transform_eval(s); };
}

double sum_prod_check(int n, Complex s) {
  if (std::abs(s) < kPoleGuard || std::abs(s - 1.0) < kPoleGuard) {
    fail(ErrorKind::PoleInput, "sum_prod_check needs s outside {0, 1}");
  }
  const TestFunction g = assoc_laguerre_tf(n);
  const Complex a = g.transform_eval(s);
  const Complex b = g.transform_eval(1.0 - s);
  return std::abs(a * b - a - b);
}

std::span<const TransformPairRule> transform_pair_rules() { return kRules; }

TestFunction exp_shift(const TestFunction& g, double a) {
  TestFunction::Parts p;
  p.label = fmt::format("exp({}t)*{}", -a, g.label());
  p.time = [g, a](double t) { return std::exp(-a * t) * g.time_eval(t); };
  p.transform = [g, a](Complex s) { return g.transform_eval(s + a); };
  p.value_at_zero = g.value_at_zero();
  p.growth_rate = g.growth_rate() - a;
  p.negative_time_ok = g.evaluable_at_negative_time();
  if (g.family() == Family::exponential && !g.involuted()) {
    p.family = Family::exponential;
    p.exp_rate = g.exponential_rate() - a;
  }
  return TestFunction(std::move(p));
}

TestFunction derivative_tf(const TestFunction& g) {
  if (g.involuted()) fail(ErrorKind::UnsupportedFamily, "derivative of an involuted function");
  if (g.is_polynomial_family()) {
    // t^k/k! -> t^{k-1}/(k-1)!: moments shift down by one
    auto m = g.transform_moments();
    std::vector<double> moments(m.size() > 1 ? m.begin() + 1 : m.end(), m.end());
    if (moments.empty()) moments.push_back(0.0);
    return from_moments(std::move(moments), fmt::format("d/dt {}", g.label()));
  }
  if (g.family() == Family::exponential) {
    const double a = g.exponential_rate();
    TestFunction::Parts p = exp_tf(a).parts();
    p.label = fmt::format("d/dt {}", g.label());
    const RealFn base = p.time;
    const TransformFn bt = p.transform;
    p.time = [base, a](double t) { return a * base(t); };
    p.transform = [bt, a](Complex s) { return a * bt(s); };
    p.value_at_zero = a;
    p.family = Family::custom;
    return TestFunction(std::move(p));
  }
  fail(ErrorKind::UnsupportedFamily, fmt::format("derivative of {} has no closed form here", g.label()));
}

TestFunction power_multiply(const TestFunction& g, int n) {
  if (n < 0) fail(ErrorKind::InvalidArgument, "power_multiply needs n >= 0");
  if (g.involuted()) fail(ErrorKind::UnsupportedFamily, "power_multiply of an involuted function");
  if (g.is_polynomial_family()) {
    auto m = g.transform_moments();
    std::vector<double> moments(m.size() + static_cast<std::size_t>(n), 0.0);
    for (std::size_t k = 0; k < m.size(); ++k) {
      // coefficient c_k = m_k/k! moves to t^{k+n}: moment (k+n)! c_k
      double r = m[k];
      for (int i = 1; i <= n; ++i) r *= static_cast<double>(k + i);
      moments[k + static_cast<std::size_t>(n)] = r;
    }
    return from_moments(std::move(moments), fmt::format("t^{}*{}", n, g.label()));
  }
  if (g.family() == Family::exponential) {
    const double a = g.exponential_rate();
    const double nf = factorial(n);
    TestFunction::Parts p;
    p.label = fmt::format("t^{}*{}", n, g.label());
    p.time = [a, n](double t) { return std::pow(t, n) * std::exp(a * t); };
    p.transform = [a, n, nf](Complex s) { return nf / std::pow(s - a, n + 1); };
    p.value_at_zero = n == 0 ? 1.0 : 0.0;
    p.growth_rate = a;
    p.negative_time_ok = true;
    return TestFunction(std::move(p));
  }
  fail(ErrorKind::UnsupportedFamily, fmt::format("power_multiply of {} has no closed form here", g.label()));
}

TestFunction integral_tf(const TestFunction& g) {
  TestFunction::Parts p;
  p.label = fmt::format("int {}", g.label());
  const RealFn f = [g](double u) { return g.time_eval(u); };
  p.time = [f](double t) { return integrate_panels(f, t); };
  p.transform = [g](Complex s) { return g.transform_eval(s) / s; };
  p.value_at_zero = 0.0;
  p.growth_rate = std::max(g.growth_rate(), 0.0);
  p.negative_time_ok = g.evaluable_at_negative_time();
  return TestFunction(std::move(p));
}

TestFunction scale_tf(const TestFunction& g, double a) {
  if (!(a > 0.0)) fail(ErrorKind::InvalidArgument, "scale_tf needs a > 0 (a = -1 is the involution)");
  TestFunction::Parts p;
  p.label = fmt::format("{}(t/{})/{}", g.label(), a, a);
  p.time = [g, a](double t) { return g.time_eval(t / a) / a; };
  p.transform = [g, a](Complex s) { return g.transform_eval(a * s); };
  p.value_at_zero = g.value_at_zero() / a;
  p.growth_rate = g.growth_rate() / a;
  p.negative_time_ok = g.evaluable_at_negative_time();
  return TestFunction(std::move(p));
}

TestFunction convolve(const TestFunction& a, const TestFunction& b) {
  TestFunction::Parts p;
  p.label = fmt::format("({})*({})", a.label(), b.label());
  p.time = [a, b](double t) {
    if (t <= 0.0) return 0.0;
    return integrate_panels([&](double u) { return a.time_eval(u) * b.time_eval(t - u); }, t);
  };
  p.transform = convolve_transform(a, b);
  p.value_at_zero = 0.0;
  p.growth_rate = std::max(a.growth_rate(), b.growth_rate());
  p.negative_time_ok = false;
  return TestFunction(std::move(p));
}

TransformFn delta_transform(double a) {
  if (a < 0.0) fail(ErrorKind::InvalidArgument, "delta_transform needs a >= 0");
  return [a](Complex s) { return std::exp(-a * s); };
}

TransformFn delta_comb_transform(double a) {
  if (!(a > 0.0)) fail(ErrorKind::InvalidArgument, "delta_comb_transform needs a > 0");
  return [a](Complex s) { return 1.0 / (1.0 - std::exp(-a * s)); };
}

}  // namespace efl
