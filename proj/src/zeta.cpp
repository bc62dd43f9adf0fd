#include "efl/zeta.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

#include <fmt/format.h>

#include "efl/errors.hpp"
#include "efl/summation.hpp"

namespace efl {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kPoleTolerance = 1e-14;
constexpr double kZeroTolerance = 1e-12;

// zeta(s) = R + A^{1-s}/(s-1) for the Hurwitz parameter a = 1.
struct EulerMaclaurinParts {
  Complex rest;        // everything except the pole term
  Complex rest_deriv;  // d/ds of rest
  Complex a_pow;       // A^{-s}
  double cutoff_base;  // A = N + a
  double log_base;     // log A
  double error;        // remainder bound
  double rounding;     // floating-point accumulation estimate
};

EulerMaclaurinParts euler_maclaurin(Complex s, double a, const ZetaEvalConfig& cfg, bool with_derivative) {
  const int n_terms = cfg.cutoff_for(s);
  const int order = cfg.correction_order;

  BlockedPairwiseSum<Complex> sum;
  BlockedPairwiseSum<Complex> dsum;
  double magnitude = 0.0;  // sum |term| (1 + |s| log n): argument and accumulation rounding
  const double abs_s = std::abs(s);
  for (int n = 0; n < n_terms; ++n) {
    const double log_n = std::log(n + a);
    const Complex term = std::exp(-s * log_n);
    magnitude += std::abs(term) * (1.0 + abs_s * log_n);
    sum.add(term);
    if (with_derivative) dsum.add(-log_n * term);
  }

  EulerMaclaurinParts parts{};
  parts.cutoff_base = n_terms + a;
  parts.log_base = std::log(parts.cutoff_base);
  const double big_a = parts.cutoff_base;
  const double log_a = parts.log_base;
  const Complex w = std::exp(-s * log_a);
  parts.a_pow = w;

  Complex rest = sum.total() + 0.5 * w;
  Complex drest = dsum.total() - 0.5 * log_a * w;

  // T_j = B_{2j}/(2j)! * s(s+1)...(s+2j-2) * A^{-s-2j+1}
  Complex poly = s;
  Complex dpoly{1.0, 0.0};
  double factorial = 1.0;
  const double inv_a2 = 1.0 / (big_a * big_a);
  double a_inv_pow = 1.0 / big_a;
  Complex last_term{0.0, 0.0};
  for (int j = 1; j <= order + 1; ++j) {
    factorial *= (2.0 * j - 1.0) * (2.0 * j);
    const double coef = bernoulli_b2n(j) / factorial;
    const Complex term = coef * poly * w * a_inv_pow;
    if (j <= order) {
      rest += term;
      if (with_derivative) drest += coef * (dpoly - log_a * poly) * w * a_inv_pow;
    } else {
      last_term = term;
    }
    const Complex f1 = s + (2.0 * j - 1.0);
    const Complex f2 = s + 2.0 * j;
    dpoly = dpoly * f1 * f2 + poly * (f1 + f2);
    poly = poly * f1 * f2;
    a_inv_pow *= inv_a2;
  }
  const double sigma_shift = s.real() + 2.0 * order + 1.0;
  parts.rest = rest;
  parts.rest_deriv = drest;
  parts.error = std::abs(last_term) * std::abs(s + (2.0 * order + 1.0)) / std::max(sigma_shift, 1.0);
  parts.rounding = kEps * (magnitude + 4.0 * std::abs(rest));
  return parts;
}

Complex clean_real_axis(Complex s, Complex value) {
  if (s.imag() == 0.0) return {value.real(), 0.0};
  return value;
}

void check_finite(Complex value, const char* what) {
  if (!is_finite(value)) fail(ErrorKind::ConfigTooWeak, std::string(what) + " produced a non-finite value");
}

// log chi(s) where zeta(s) = chi(s) zeta(1-s).
Complex log_chi(Complex s) {
  const Constants& c = constants();
  return s * std::log(2.0) + (s - 1.0) * c.log_pi + log_sin(0.5 * kPi * s) + log_gamma(1.0 - s);
}

Complex chi_log_deriv(Complex s) {
  return constants().log_2pi + 0.5 * kPi * cot(0.5 * kPi * s) - digamma(1.0 - s);
}

bool use_functional_equation(Complex s) { return s.real() < 0.0; }

// Reflection near s = 0 with the 1/s pole of zeta(1 - s) cancelled analytically.
bool near_origin(Complex s) { return std::abs(s) < 0.5; }

// (pi/2) cot(pi s/2) - 1/s
Complex cot_remainder(Complex s) {
  const Complex x = 0.5 * kPi * s;
  if (std::abs(x) >= 0.5) return 0.5 * kPi * cot(x) - 1.0 / s;
  // cot x - 1/x = sum_n (-1)^n 2^{2n} B_{2n} x^{2n-1} / (2n)!
  Complex acc{0.0, 0.0};
  Complex power = x;
  double scale = 4.0 / 2.0;  // 2^{2n} / (2n)! at n = 1
  for (int n = 1; n <= 14; ++n) {
    acc += (n % 2 ? -1.0 : 1.0) * scale * bernoulli_b2n(n) * power;
    power *= x * x;
    scale *= 4.0 / ((2.0 * n + 1.0) * (2.0 * n + 2.0));
  }
  return 0.5 * kPi * acc;
}

Complex zeta_regular_upper(Complex s, const ZetaEvalConfig& cfg);
Complex log_deriv_regular_upper(Complex s, const ZetaEvalConfig& cfg);

// chi(s) zeta(1-s) with zeta(1-s) = -1/s + regular part
Complex zeta_near_origin(Complex s, const ZetaEvalConfig& cfg) {
  const Constants& c = constants();
  const Complex x = 0.5 * kPi * s;
  const Complex sinc = std::abs(x) < 1e-8 ? Complex{1.0, 0.0} : std::sin(x) / x;
  const Complex front = std::exp(s * std::log(2.0) + (s - 1.0) * c.log_pi + log_gamma(1.0 - s));
  return front * (std::sin(x) * zeta_regular_upper(1.0 - s, cfg) - 0.5 * kPi * sinc);
}

ZetaValue zeta_upper(Complex s, const ZetaEvalConfig& cfg) {
  if (std::abs(s - 1.0) < kPoleTolerance) fail(ErrorKind::PoleAtOne, "zeta evaluated at s = 1");
  if (use_functional_equation(s)) {
    const ZetaValue mirror = zeta_upper(1.0 - s, cfg);
    const Complex chi = std::exp(log_chi(s));
    const Complex value = near_origin(s) ? zeta_near_origin(s, cfg) : chi * mirror.value;
    return {value, std::abs(chi) * mirror.error_estimate, std::abs(chi) * mirror.rounding_estimate + 64.0 * kEps * std::abs(value)};
  }
  const EulerMaclaurinParts p = euler_maclaurin(s, 1.0, cfg, false);
  const Complex value = p.rest + p.cutoff_base * p.a_pow / (s - 1.0);
  return {value, p.error, p.rounding};
}

struct ZetaAndLogDeriv {
  Complex zeta;
  Complex neg_log_deriv;
};

ZetaAndLogDeriv log_deriv_upper(Complex s, const ZetaEvalConfig& cfg) {
  if (std::abs(s - 1.0) < kPoleTolerance) fail(ErrorKind::PoleAtOne, "-zeta'/zeta evaluated at s = 1");
  if (use_functional_equation(s)) {
    const ZetaAndLogDeriv mirror = log_deriv_upper(1.0 - s, cfg);
    const Complex z = std::exp(log_chi(s)) * mirror.zeta;
    if (std::abs(z) < kZeroTolerance) {
      fail(ErrorKind::NearZeroOfZeta, fmt::format("|zeta(s)| = {:.3e} at s = {}{:+}i", std::abs(z), s.real(), s.imag()));
    }
    if (near_origin(s)) {
      const Complex d = -constants().log_2pi - cot_remainder(s) + digamma(1.0 - s) - log_deriv_regular_upper(1.0 - s, cfg);
      return {zeta_near_origin(s, cfg), d};
    }
    const Complex d = -chi_log_deriv(s) - mirror.neg_log_deriv;
    return {z, d};
  }
  const EulerMaclaurinParts p = euler_maclaurin(s, 1.0, cfg, true);
  const Complex u = s - 1.0;
  const Complex pole = p.cutoff_base * p.a_pow / u;
  const Complex z = p.rest + pole;
  const Complex dz = p.rest_deriv + pole * (-p.log_base - 1.0 / u);
  if (std::abs(z) < kZeroTolerance * std::max(1.0, std::abs(dz))) {
    fail(ErrorKind::NearZeroOfZeta, fmt::format("|zeta(s)| = {:.3e} at s = {}{:+}i", std::abs(z), s.real(), s.imag()));
  }
  return {z, -dz / z};
}

Complex log_deriv_regular_upper(Complex s, const ZetaEvalConfig& cfg) {
  if (use_functional_equation(s)) return log_deriv_upper(s, cfg).neg_log_deriv - 1.0 / (s - 1.0);
  // Y = (s-1) zeta(s); -zeta'/zeta - 1/(s-1) = -Y'/Y
  const EulerMaclaurinParts p = euler_maclaurin(s, 1.0, cfg, true);
  const Complex u = s - 1.0;
  const Complex a_term = p.cutoff_base * p.a_pow;
  const Complex y = u * p.rest + a_term;
  const Complex dy = p.rest + u * p.rest_deriv - p.log_base * a_term;
  if (std::abs(y) < kZeroTolerance * std::max(1.0, std::abs(dy))) {
    fail(ErrorKind::NearZeroOfZeta, fmt::format("zeta vanishes near s = {}{:+}i", s.real(), s.imag()));
  }
  return -dy / y;
}

Complex zeta_regular_upper(Complex s, const ZetaEvalConfig& cfg) {
  if (use_functional_equation(s)) return zeta_upper(s, cfg).value - 1.0 / (s - 1.0);
  const EulerMaclaurinParts p = euler_maclaurin(s, 1.0, cfg, false);
  // (A^{1-s} - 1)/(s-1) = -log A * exprel((1-s) log A)
  return p.rest - p.log_base * exprel((1.0 - s) * p.log_base);
}

Complex xi_upper(Complex s, const ZetaEvalConfig& cfg) {
  if (s.real() < 0.5) s = 1.0 - s;
  const EulerMaclaurinParts p = euler_maclaurin(s, 1.0, cfg, false);
  const Complex y = (s - 1.0) * p.rest + p.cutoff_base * p.a_pow;
  return 0.5 * s * y * std::exp(-0.5 * s * constants().log_pi + log_gamma(0.5 * s));
}

template <typename F>
Complex with_reflection(Complex s, F&& f) {
  if (s.imag() < 0.0) return std::conj(f(std::conj(s)));
  return clean_real_axis(s, f(s));
}

// Riemann-Siegel correction terms C0..C4 as Taylor polynomials in u = p - 1/2.
struct RiemannSiegelCoefficients {
  static constexpr int kDegree = 72;
  std::array<std::array<double, kDegree + 1>, 5> poly{};

  RiemannSiegelCoefficients() {
    // Taylor coefficients of Psi(1/2 + u), Psi(p) = cos(2 pi (p^2 - p - 1/16)) / cos(2 pi p).
    constexpr int kPoints = 512;
    constexpr int kTaylor = kDegree + 12;
    std::array<double, kTaylor + 1> a{};
    std::vector<Complex> values(kPoints);
    for (int l = 0; l < kPoints; ++l) {
      const Complex u = std::polar(1.0, 2.0 * kPi * l / kPoints);
      const Complex p = 0.5 + u;
      values[l] = std::cos(2.0 * kPi * (p * p - p - 1.0 / 16.0)) / std::cos(2.0 * kPi * p);
    }
    for (int j = 0; j <= kTaylor; ++j) {
      BlockedPairwiseSum<Complex> acc;
      for (int l = 0; l < kPoints; ++l) acc.add(values[l] * std::polar(1.0, -2.0 * kPi * ((j * l) % kPoints) / kPoints));
      a[j] = acc.total().real() / kPoints;
    }
    // derivative polynomials: Psi^{(m)}(1/2+u) = sum_i a_{i+m} (i+m)!/i! u^i
    auto deriv = [&](int m) {
      std::array<double, kDegree + 1> d{};
      for (int i = 0; i <= kDegree; ++i) {
        double falling = 1.0;
        for (int r = 1; r <= m; ++r) falling *= i + r;
        d[i] = a[i + m] * falling;
      }
      return d;
    };
    const double pi2 = kPi * kPi;
    const double pi4 = pi2 * pi2;
    const double pi6 = pi4 * pi2;
    const double pi8 = pi4 * pi4;
    struct Term {
      int order;
      double weight;
    };
    const std::array<std::vector<Term>, 5> combos = {{
        {{0, 1.0}},
        {{3, -1.0 / (96.0 * pi2)}},
        {{2, 1.0 / (64.0 * pi2)}, {6, 1.0 / (18432.0 * pi4)}},
        {{1, -1.0 / (64.0 * pi2)}, {5, -1.0 / (3840.0 * pi4)}, {9, -1.0 / (5308416.0 * pi6)}},
        {{0, 1.0 / (128.0 * pi2)},
         {4, 19.0 / (24576.0 * pi4)},
         {8, 11.0 / (5898240.0 * pi6)},
         {12, 1.0 / (2038431744.0 * pi8)}},
    }};
    for (int k = 0; k < 5; ++k) {
      for (const Term& term : combos[k]) {
        const auto d = deriv(term.order);
        for (int i = 0; i <= kDegree; ++i) poly[k][i] += term.weight * d[i];
      }
    }
  }

  double eval(int k, double u) const {
    double acc = 0.0;
    for (int i = kDegree; i >= 0; --i) acc = acc * u + poly[k][i];
    return acc;
  }
};

const RiemannSiegelCoefficients& rs_coefficients() {
  static const RiemannSiegelCoefficients coeffs;
  return coeffs;
}

}  // namespace

void ZetaEvalConfig::validate() const {
  if (cutoff_terms < 0) fail(ErrorKind::InvalidArgument, "cutoff_terms must be positive (or 0 for automatic)");
  if (correction_order < 1 || correction_order > kMaxBernoulliIndex - 1) {
    fail(ErrorKind::InvalidArgument, "correction_order out of range");
  }
  if (!(contour_radius > 0.0)) fail(ErrorKind::InvalidArgument, "contour_radius must be positive");
  if (contour_points < 8 || (contour_points & (contour_points - 1)) != 0) {
    fail(ErrorKind::InvalidArgument, "contour_points must be a power of two >= 8");
  }
  if (working_digits < 15) fail(ErrorKind::InvalidArgument, "working_digits must be >= 15");
}

int ZetaEvalConfig::cutoff_for(Complex s) const {
  if (cutoff_terms > 0) return cutoff_terms;
  return 64 + 2 * static_cast<int>(std::ceil(std::abs(s.imag())));
}

double ZetaEvalConfig::target_relative_error() const { return std::pow(10.0, 2 - working_digits); }

const Constants& constants() {
  static const Constants c{
      0.577215664901532860606512090082402431,
      std::log(kPi),
      std::log(2.0 * kPi),
      std::log(4.0 * kPi),
  };
  return c;
}

ZetaValue zeta_with_error(Complex s, const ZetaEvalConfig& cfg) {
  cfg.validate();
  ZetaValue v = (s.imag() < 0.0) ? zeta_upper(std::conj(s), cfg) : zeta_upper(s, cfg);
  if (s.imag() < 0.0) v.value = std::conj(v.value);
  v.value = clean_real_axis(s, v.value);
  check_finite(v.value, "zeta");
  const double target = cfg.target_relative_error() * std::max(1.0, std::abs(v.value));
  if (v.error_estimate > target) {
    fail(ErrorKind::ConfigTooWeak, fmt::format("zeta truncation estimate {:.3e} exceeds target {:.3e}", v.error_estimate, target));
  }
  v.error_estimate += v.rounding_estimate;
  return v;
}

Complex zeta(Complex s, const ZetaEvalConfig& cfg) { return zeta_with_error(s, cfg).value; }

Complex hurwitz_zeta(Complex s, double a, const ZetaEvalConfig& cfg) {
  cfg.validate();
  if (!(a > 0.0)) fail(ErrorKind::InvalidArgument, "hurwitz_zeta requires a > 0");
  if (s.real() < 0.0) fail(ErrorKind::InvalidArgument, "hurwitz_zeta implemented for Re s >= 0");
  if (std::abs(s - 1.0) < kPoleTolerance) fail(ErrorKind::PoleAtOne, "hurwitz_zeta at s = 1");
  return with_reflection(s, [&](Complex z) {
    const EulerMaclaurinParts p = euler_maclaurin(z, a, cfg, false);
    return p.rest + p.cutoff_base * p.a_pow / (z - 1.0);
  });
}

Complex neg_zeta_log_deriv(Complex s, const ZetaEvalConfig& cfg) {
  cfg.validate();
  const Complex v = with_reflection(s, [&](Complex z) { return log_deriv_upper(z, cfg).neg_log_deriv; });
  check_finite(v, "-zeta'/zeta");
  return v;
}

Complex neg_zeta_log_deriv_regular(Complex s, const ZetaEvalConfig& cfg) {
  cfg.validate();
  const Complex v = with_reflection(s, [&](Complex z) { return log_deriv_regular_upper(z, cfg); });
  check_finite(v, "-zeta'/zeta - 1/(s-1)");
  return v;
}

Complex zeta_regular(Complex s, const ZetaEvalConfig& cfg) {
  cfg.validate();
  const Complex v = with_reflection(s, [&](Complex z) { return zeta_regular_upper(z, cfg); });
  check_finite(v, "zeta - 1/(s-1)");
  return v;
}

Complex xi(Complex s, const ZetaEvalConfig& cfg) {
  cfg.validate();
  const Complex v = with_reflection(s, [&](Complex z) { return xi_upper(z, cfg); });
  check_finite(v, "xi");
  return v;
}

TaylorExpansion taylor_expansion(ExpansionTarget target, Complex center, int k_max, double radius, int points,
                                 const ZetaEvalConfig& cfg) {
  cfg.validate();
  if (k_max < 0) fail(ErrorKind::InvalidArgument, "k_max must be non-negative");
  if (!(radius > 0.0)) fail(ErrorKind::InvalidArgument, "contour radius must be positive");
  if (points < 8 || (points & (points - 1)) != 0) fail(ErrorKind::InvalidArgument, "contour points must be a power of two");
  if (points < 4 * std::max(k_max, 1)) {
    fail(ErrorKind::QuadratureNotConverged, fmt::format("{} contour points cannot resolve order {}", points, k_max));
  }

  const bool pole_ok = target == ExpansionTarget::NegLogDerivRegular || target == ExpansionTarget::NegLogDerivReduced ||
                       target == ExpansionTarget::ZetaRegular;
  const bool log_target = target == ExpansionTarget::NegLogDeriv || target == ExpansionTarget::NegLogDerivRegular ||
                          target == ExpansionTarget::NegLogDerivReduced;
  const int first_trivial = target == ExpansionTarget::NegLogDerivReduced ? 2 : 1;
  constexpr double kMargin = 1e-9;
  if (!pole_ok && std::abs(center - 1.0) <= radius + kMargin) {
    fail(ErrorKind::ContourHitsSingularity, "contour encloses or touches the pole at s = 1");
  }
  if (log_target) {
    for (int m = first_trivial; -2.0 * m >= center.real() - radius - 1.0; ++m) {
      if (std::abs(center + 2.0 * m) <= radius + kMargin) {
        fail(ErrorKind::ContourHitsSingularity, fmt::format("contour reaches the trivial zero s = {}", -2 * m));
      }
    }
    // first nontrivial zero has ordinate > 14
    const bool meets_strip = center.real() - radius < 1.0 && center.real() + radius > 0.0;
    if (meets_strip && std::abs(center.imag()) + radius >= 14.0) {
      fail(ErrorKind::ContourHitsSingularity, "contour reaches the critical strip above height 14");
    }
  }

  auto evaluate = [&](Complex s) -> Complex {
    try {
      switch (target) {
        case ExpansionTarget::NegLogDeriv: return neg_zeta_log_deriv(s, cfg);
        case ExpansionTarget::NegLogDerivRegular: return neg_zeta_log_deriv_regular(s, cfg);
        case ExpansionTarget::NegLogDerivReduced: return neg_zeta_log_deriv_regular(s, cfg) + 1.0 / (s + 2.0);
        case ExpansionTarget::Zeta: return zeta(s, cfg);
        case ExpansionTarget::ZetaRegular: return zeta_regular(s, cfg);
      }
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::NearZeroOfZeta || e.kind() == ErrorKind::PoleAtOne) {
        fail(ErrorKind::ContourHitsSingularity, e.what());
      }
      throw;
    }
    return {};
  };

  std::vector<Complex> values(static_cast<std::size_t>(points));
  std::vector<Complex> roots(static_cast<std::size_t>(points));
  for (int j = 0; j <= points / 2; ++j) roots[j] = std::polar(1.0, -2.0 * kPi * j / points);
  for (int j = points / 2 + 1; j < points; ++j) roots[j] = std::conj(roots[points - j]);
  const bool real_center = center.imag() == 0.0;
  double max_abs = 0.0;
  for (int j = 0; j < points; ++j) {
    if (real_center && j > points / 2) {
      values[j] = std::conj(values[points - j]);
    } else {
      values[j] = evaluate(center + radius * std::conj(roots[j]));
    }
    max_abs = std::max(max_abs, std::abs(values[j]));
  }

  TaylorExpansion out{target, center, radius, points, {}, {}, {}};
  out.coefficients.resize(static_cast<std::size_t>(k_max) + 1);
  out.error_estimates.resize(static_cast<std::size_t>(k_max) + 1);
  out.imag_residuals.resize(static_cast<std::size_t>(k_max) + 1);
  double scale = 1.0;
  for (int k = 0; k <= k_max; ++k) {
    BlockedPairwiseSum<Complex> full;
    BlockedPairwiseSum<Complex> half;
    for (int j = 0; j < points; ++j) {
      const Complex contrib = values[j] * roots[(static_cast<long>(j) * k) % points];
      full.add(contrib);
      if (j % 2 == 0) half.add(contrib);
    }
    const Complex c_full = full.total() / (points * scale);
    const Complex c_half = half.total() / ((points / 2) * scale);
    const double rounding = 8.0 * kEps * max_abs / scale;
    const double aliasing = std::abs(c_full - c_half);
    if (aliasing > 1e-6 * max_abs / scale) {
      fail(ErrorKind::QuadratureNotConverged, fmt::format("coefficient {} not converged (delta {:.3e})", k, aliasing));
    }
    Complex c = c_full;
    out.imag_residuals[k] = real_center ? std::abs(c.imag()) : 0.0;
    if (real_center) c = {c.real(), 0.0};
    out.coefficients[k] = c;
    out.error_estimates[k] = aliasing + rounding;
    scale *= radius;
  }
  return out;
}

TaylorExpansion derivatives_at(Complex s0, int k_max, const ZetaEvalConfig& cfg) {
  const ExpansionTarget target =
      std::abs(s0 - 1.0) < kPoleTolerance ? ExpansionTarget::NegLogDerivRegular : ExpansionTarget::NegLogDeriv;
  return taylor_expansion(target, s0, k_max, cfg.contour_radius, cfg.contour_points, cfg);
}

double hardy_theta(double t) {
  if (t < 0.0) return -hardy_theta(-t);
  if (t < 100.0) return log_gamma(Complex{0.25, 0.5 * t}).imag() - 0.5 * t * constants().log_pi;
  const double inv = 1.0 / t;
  const double inv2 = inv * inv;
  return 0.5 * t * std::log(t / (2.0 * kPi)) - 0.5 * t - kPi / 8.0 +
         inv * (1.0 / 48.0 + inv2 * (7.0 / 5760.0 + inv2 * (31.0 / 80640.0 + inv2 * (127.0 / 430080.0))));
}

double hardy_z(double t, const ZetaEvalConfig& cfg) {
  const Complex z = zeta(Complex{0.5, t}, cfg);
  return (std::polar(1.0, hardy_theta(t)) * z).real();
}

double riemann_siegel_z(double t) {
  if (t < 10.0) fail(ErrorKind::InvalidArgument, "Riemann-Siegel formula used below t = 10");
  const double tau = t / (2.0 * kPi);
  const double root = std::sqrt(tau);
  const int n_terms = static_cast<int>(std::floor(root));
  const double p = root - n_terms;
  const double theta = hardy_theta(t);
  double main = 0.0;
  for (int n = 1; n <= n_terms; ++n) main += std::cos(theta - t * std::log(static_cast<double>(n))) / std::sqrt(static_cast<double>(n));
  main *= 2.0;

  const RiemannSiegelCoefficients& rs = rs_coefficients();
  const double u = p - 0.5;
  const double a = 1.0 / root;
  double correction = 0.0;
  for (int k = 4; k >= 0; --k) correction = correction * a + rs.eval(k, u);
  const double sign = (n_terms % 2 == 1) ? 1.0 : -1.0;  // (-1)^{N-1}
  return main + sign * std::pow(tau, -0.25) * correction;
}

}  // namespace efl
