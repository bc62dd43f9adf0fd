#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "efl/arith.hpp"
#include "efl/laurent.hpp"
#include "efl/testfn.hpp"
#include "efl/zeros.hpp"

namespace efl {

enum class ReportKind { psi, general, s1, involuted_s1 };
std::string_view to_string(ReportKind k);

// Sign of each stored term in the total; 0 marks a term reported but not added.
struct TermSigns {
  int pole = 1;
  int trivial = -1;
  int nontrivial = -1;
  int atom = -1;
  int expectation = 0;
};

struct Assumptions {
  bool on_critical_line = true;
  bool regularized = false;
  bool expectation_formal_divergent = false;
  std::string expectation_route;  // "arithmetic", "analytic", "eta finite part", "mu finite part", or empty
  std::string zero_order = "ascending ordinate, conjugate pairs";
  std::vector<std::string> notes;
};

struct ExplicitFormulaReport {
  ReportKind kind = ReportKind::general;
  std::string test_function;
  Complex s{0.0, 0.0};
  double x = 0.0;  // psi reports only

  Complex pole_term{0.0, 0.0};
  Complex trivial_zero_sum{0.0, 0.0};
  Complex nontrivial_zero_sum{0.0, 0.0};
  Complex atom_term{0.0, 0.0};
  Complex expectation_term{0.0, 0.0};
  TermSigns signs;
  Complex total{0.0, 0.0};

  int trivial_cutoff = 0;
  bool trivial_paired_with_atom = true;
  Complex trivial_tail{0.0, 0.0};  // part of trivial_zero_sum beyond the cutoff

  std::size_t zero_count = 0;
  double truncation_height = 0.0;
  Complex zero_tail_estimate{0.0, 0.0};
  bool zero_tail_included = false;

  // s = 1 variants: direct zero-side evaluation and its difference to total
  std::optional<Complex> direct_zero_sum;
  Complex difference{0.0, 0.0};

  Assumptions assumptions;

  Complex signed_sum() const;
};

struct ExpectationContext {
  const VonMangoldtTable* table = nullptr;
  const LaurentCoefficients* coeffs = nullptr;
  ZetaEvalConfig cfg{};
};

inline constexpr int kDefaultTrivialCutoff = 1000;

ExplicitFormulaReport psi_analytic(double x, const ZeroSet& zeros, int trivial_cutoff = kDefaultTrivialCutoff);

ExplicitFormulaReport general_rhs(const TestFunction& g, Complex s, const ZeroSet& zeros,
                                  int trivial_cutoff = kDefaultTrivialCutoff, bool include_tail = true);

ExplicitFormulaReport s1_value(const TestFunction& g, const ZeroSet& zeros, const ExpectationContext& ctx = {},
                               int trivial_cutoff = kDefaultTrivialCutoff);

ExplicitFormulaReport involuted_s1_value(const TestFunction& g, const ZeroSet& zeros,
                                         const ExpectationContext& ctx = {},
                                         int trivial_cutoff = kDefaultTrivialCutoff);

// Zero-side helpers shared with li-weil.
using PairedTerm = std::function<Complex(double gamma)>;

// sum over ordinates of paired(gamma), ascending, blocked pairwise.
Complex paired_zero_sum(const ZeroSet& zeros, const PairedTerm& paired);
// Beginning of the continuum replacing the zeros beyond the table.
double tail_start(const ZeroSet& zeros);
// int_{T}^inf paired(gamma) (1/2pi) log(gamma/2pi) dgamma
Complex density_tail(const PairedTerm& paired, double t);

struct TrivialSeries {
  Complex direct{0.0, 0.0};
  Complex tail{0.0, 0.0};
  int cutoff = 0;
  Complex total() const { return direct + tail; }
};
// sum_{n>=1} term(n): direct to cutoff, Euler-Maclaurin beyond (term analytic in n).
TrivialSeries trivial_series(const std::function<Complex(double n)>& term, int cutoff, bool tail = true);

bool is_prime_power(std::uint64_t n);

}  // namespace efl
