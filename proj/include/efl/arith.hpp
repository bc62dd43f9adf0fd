#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <span>
#include <vector>

#include "efl/special.hpp"
#include "efl/testfn.hpp"

namespace efl {

// Lambda(n) for 1 <= n <= limit. Immutable and cheap to copy (shared storage).
class VonMangoldtTable {
 public:
  explicit VonMangoldtTable(std::vector<double> weights);

  std::uint64_t limit() const { return static_cast<std::uint64_t>(w_->size()); }
  double weight(std::uint64_t n) const { return (*w_)[n - 1]; }
  // weights()[n-1] = Lambda(n)
  std::span<const double> weights() const { return *w_; }

 private:
  std::shared_ptr<const std::vector<double>> w_;
};

struct SieveOptions {
  std::uint64_t memory_budget_bytes = 1'200'000'000;  // ~1e8 entries
};

// Smallest-prime-factor sieve.
VonMangoldtTable sieve(std::uint64_t n, const SieveOptions& opts = {});

struct AtomicDensity {
  struct Atom {
    double location;  // t = log n
    double weight;    // Lambda(n)
    std::uint64_t n;
  };
  std::vector<Atom> atoms;
};
AtomicDensity atomic_density(const VonMangoldtTable& table);

// psi(x) = sum_{n <= x} Lambda(n).
double psi_arith(double x, const VonMangoldtTable& table);

struct PrimeExpectation {
  Complex value;          // truncated sum over n <= N
  Complex tail_estimate;  // integral of the density-1 continuum from N to infinity
  bool formal_divergent = false;
  std::uint64_t terms = 0;

  Complex corrected() const { return value + tail_estimate; }
};

// sum_{n <= N} Lambda(n) n^{-s} g(log n).
PrimeExpectation prime_expectation(const TestFunction& g, Complex s, const VonMangoldtTable& table);

// sum_{n <= x} Lambda(n) (log n)^k / n - (log x)^{k+1}/(k+1)
double eta_limit_partial(int k, double x, const VonMangoldtTable& table);

// Stieltjes constant partial: sum_{n <= x} (log n)^k/n - (log x)^{k+1}/(k+1)
double stieltjes_partial(int k, double x);
// Same with Euler-Maclaurin endpoint corrections at X = floor(x).
double stieltjes_partial_corrected(int k, double x);

// Binary cache: "VMT1", little-endian u64 N, N little-endian doubles.
void write_table_cache(const std::filesystem::path& path, const VonMangoldtTable& table);
VonMangoldtTable read_table_cache(const std::filesystem::path& path);

}  // namespace efl
