#pragma once

#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "efl/special.hpp"

namespace efl {

using RealFn = std::function<double(double)>;
using TransformFn = std::function<Complex(Complex)>;

enum class Growth { decaying, polynomial, exponential };
enum class Family { polynomial, exponential, laguerre, assoc_laguerre, custom };

std::string_view to_string(Growth g);
std::string_view to_string(Family f);

inline constexpr int kMaxTestFunctionOrder = 60;

// A closed-form pair (g(t), g~(s)). Immutable once built.
//
// growth_rate r means g(t) = O(t^m e^{r t}); the Laplace integral converges for
// Re s > r and the prime-side sum sum Lambda(n) n^{-s} g(log n) for Re s > 1 + r.
class TestFunction {
 public:
  struct Parts {
    std::string label;
    RealFn time;
    TransformFn transform;
    double value_at_zero = 0.0;
    double growth_rate = 0.0;
    bool negative_time_ok = false;
    Family family = Family::custom;
    bool involuted = false;
    int order = 0;
    double exp_rate = 0.0;
    std::vector<double> moments;  // g~(s) = sum_k moments[k] s^{-k-1}
  };

  explicit TestFunction(Parts parts);

  double time_eval(double t) const;
  Complex transform_eval(Complex s) const;
  double value_at_zero() const { return p_.value_at_zero; }
  double growth_rate() const { return p_.growth_rate; }
  Growth growth() const;
  const std::string& label() const { return p_.label; }
  Family family() const { return p_.family; }
  bool involuted() const { return p_.involuted; }
  int order() const { return p_.order; }
  double exponential_rate() const { return p_.exp_rate; }
  bool evaluable_at_negative_time() const { return p_.negative_time_ok; }
  bool is_polynomial_family() const;
  // Moments of the un-involuted base function (polynomial families only).
  std::span<const double> transform_moments() const { return p_.moments; }
  const Parts& parts() const { return p_; }

 private:
  Parts p_;
};

TestFunction poly_tf(int k);
TestFunction exp_tf(double a);
TestFunction laguerre_tf(int n);
TestFunction assoc_laguerre_tf(int n);
// g(t) = sum_k coeffs[k] t^k
TestFunction polynomial_tf(std::vector<double> coeffs, std::string label = "polynomial");

TestFunction involution(const TestFunction& g);

TransformFn convolve_transform(const TestFunction& a, const TestFunction& b);

// |g~_n(s) g~_n(1-s) - g~_n(s) - g~_n(1-s)| for the associated Laguerre family.
double sum_prod_check(int n, Complex s);

// Laguerre polynomials.
double laguerre_binomial(int n, double t);
double laguerre_recurrence(int n, double t);
double laguerre(int n, double t);
double assoc_laguerre_sum(int n, double t);  // sum_{k<n} L_k(t) = L^1_{n-1}(t)

// Laplace transform pairs used by the explicit-formula machinery.
enum class TransformRule { G1, G2, G3, G4, G5, G6, S1, S2, S3, S4 };

struct TransformPairRule {
  TransformRule id;
  std::string_view time_domain;
  std::string_view transform;
};

std::span<const TransformPairRule> transform_pair_rules();
std::string_view to_string(TransformRule r);

TestFunction exp_shift(const TestFunction& g, double a);       // G1: e^{-at} g(t)
TestFunction derivative_tf(const TestFunction& g);             // G2: g'(t)
TestFunction power_multiply(const TestFunction& g, int n);     // G3: t^n g(t)
TestFunction integral_tf(const TestFunction& g);               // G4: int_0^t g
TestFunction scale_tf(const TestFunction& g, double a);        // G5: g(t/a)/a, a > 0
TestFunction convolve(const TestFunction& a, const TestFunction& b);  // G6
TransformFn delta_transform(double a);                          // S3: delta(t-a)
TransformFn delta_comb_transform(double a);                     // S4: sum_n delta(t-na)

}  // namespace efl
