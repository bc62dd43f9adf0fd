#include "efl/special.hpp"

#include <array>
#include <cmath>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "efl/errors.hpp"

namespace efl {
namespace {

using boost::multiprecision::cpp_rational;

// Akiyama-Tanigawa, exact. Produces B_0..B_n with B_1 = +1/2 convention; only
// even indices are used.
std::vector<double> compute_even_bernoulli() {
  const int n_max = 2 * kMaxBernoulliIndex;
  std::vector<cpp_rational> a(n_max + 1);
  std::vector<double> even(kMaxBernoulliIndex + 1);
  for (int m = 0; m <= n_max; ++m) {
    a[m] = cpp_rational(1, m + 1);
    for (int j = m; j >= 1; --j) a[j - 1] = j * (a[j - 1] - a[j]);
    if (m % 2 == 0) even[m / 2] = static_cast<double>(a[0]);
  }
  return even;
}

const std::vector<double>& even_bernoulli() {
  static const std::vector<double> table = compute_even_bernoulli();
  return table;
}

constexpr double kStirlingShift = 12.0;

}  // namespace

double bernoulli_b2n(int j) {
  if (j < 0 || j > kMaxBernoulliIndex) fail(ErrorKind::InvalidArgument, "Bernoulli index out of range");
  return even_bernoulli()[static_cast<std::size_t>(j)];
}

bool is_finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

Complex log_gamma(Complex z) {
  if (!(z.real() > 0.0)) fail(ErrorKind::InvalidArgument, "log_gamma requires Re z > 0");
  Complex shift_log{0.0, 0.0};
  while (std::abs(z) < kStirlingShift) {
    shift_log += std::log(z);
    z += 1.0;
  }
  const Complex inv = 1.0 / z;
  const Complex inv2 = inv * inv;
  Complex series{0.0, 0.0};
  Complex power = inv;
  for (int j = 1; j <= 12; ++j) {
    series += bernoulli_b2n(j) / (2.0 * j * (2.0 * j - 1.0)) * power;
    power *= inv2;
  }
  return (z - 0.5) * std::log(z) - z + 0.5 * std::log(2.0 * kPi) + series - shift_log;
}

Complex digamma(Complex z) {
  if (!(z.real() > 0.0)) fail(ErrorKind::InvalidArgument, "digamma requires Re z > 0");
  Complex shift{0.0, 0.0};
  while (std::abs(z) < kStirlingShift) {
    shift += 1.0 / z;
    z += 1.0;
  }
  const Complex inv = 1.0 / z;
  const Complex inv2 = inv * inv;
  Complex series{0.0, 0.0};
  Complex power = inv2;
  for (int j = 1; j <= 12; ++j) {
    series += bernoulli_b2n(j) / (2.0 * j) * power;
    power *= inv2;
  }
  return std::log(z) - 0.5 * inv - series - shift;
}

Complex log_sin(Complex z) {
  if (z.imag() < 0.0) return std::conj(log_sin(std::conj(z)));
  if (z.imag() < 1.0) return std::log(std::sin(z));
  // sin z = (i/2) e^{-iz} (1 - e^{2iz}), |e^{2iz}| < 1 for Im z > 0
  const Complex i{0.0, 1.0};
  return -i * z + std::log(Complex{0.0, 0.5}) + std::log(1.0 - std::exp(2.0 * i * z));
}

Complex cot(Complex z) {
  if (z.imag() < 0.0) return std::conj(cot(std::conj(z)));
  if (z.imag() < 1.0) return std::cos(z) / std::sin(z);
  const Complex i{0.0, 1.0};
  const Complex q = std::exp(2.0 * i * z);
  return -i * (1.0 + q) / (1.0 - q);
}

Complex exprel(Complex x) {
  if (std::abs(x) < 1e-2) {
    // 1 + x/2 + x^2/6 + ...; ten terms reach double precision for |x| < 1e-2
    Complex term{1.0, 0.0};
    Complex sum{1.0, 0.0};
    for (int k = 2; k <= 11; ++k) {
      term *= x / static_cast<double>(k);
      sum += term;
    }
    return sum;
  }
  return (std::exp(x) - 1.0) / x;
}

}  // namespace efl
