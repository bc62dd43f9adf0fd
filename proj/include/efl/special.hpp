#pragma once

#include <complex>
#include <numbers>

namespace efl {

using Complex = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;

// Bernoulli number B_{2j} as a double, rounded once from the exact rational.
// Valid for 0 <= j <= kMaxBernoulliIndex.
inline constexpr int kMaxBernoulliIndex = 80;
double bernoulli_b2n(int j);

// log Gamma(z) for Re z > 0, continuous in z (principal logs of the shift
// factors, all of which have positive real part).
Complex log_gamma(Complex z);

// digamma psi(z) for Re z > 0.
Complex digamma(Complex z);

// log sin(z), branch irrelevant (only exponentiated), stable for large |Im z|.
Complex log_sin(Complex z);

// cot(z), stable for large |Im z|.
Complex cot(Complex z);

// (e^x - 1) / x, accurate near x = 0.
Complex exprel(Complex x);

bool is_finite(Complex z);

}  // namespace efl
