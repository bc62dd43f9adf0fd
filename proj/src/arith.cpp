#include "efl/arith.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>

#include <fmt/format.h>

#include "efl/errors.hpp"
#include "efl/summation.hpp"

namespace efl {
namespace {

constexpr std::uint64_t kCacheCheckLimit = 10'000;
constexpr char kMagic[4] = {'V', 'M', 'T', '1'};

void put_u64(std::ostream& out, std::uint64_t v) {
  unsigned char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
  out.write(reinterpret_cast<const char*>(b), 8);
}

bool get_u64(std::istream& in, std::uint64_t& v) {
  unsigned char b[8];
  if (!in.read(reinterpret_cast<char*>(b), 8)) return false;
  v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
  return true;
}

std::uint64_t checked_floor(double x, const VonMangoldtTable& table, const char* what) {
  if (!(x >= 0.0)) fail(ErrorKind::InvalidArgument, fmt::format("{}: x = {} must be >= 0", what, x));
  const double f = std::floor(x);
  if (f > static_cast<double>(table.limit())) {
    fail(ErrorKind::TableTooSmall, fmt::format("{}: x = {} exceeds table limit {}", what, x, table.limit()));
  }
  return static_cast<std::uint64_t>(f);
}

double int_pow(double base, int k) {
  double r = 1.0;
  for (int i = 0; i < k; ++i) r *= base;
  return r;
}

double harmonic_log_bracket(int k, std::uint64_t upto, double x) {
  BlockedPairwiseSum<double> acc;
  for (std::uint64_t n = 1; n <= upto; ++n) {
    const double l = std::log(static_cast<double>(n));
    acc.add(int_pow(l, k) / static_cast<double>(n));
  }
  return acc.total() - int_pow(std::log(x), k + 1) / (k + 1);
}

}  // namespace

VonMangoldtTable::VonMangoldtTable(std::vector<double> weights)
    : w_(std::make_shared<const std::vector<double>>(std::move(weights))) {
  if (w_->empty()) fail(ErrorKind::InvalidArgument, "von Mangoldt table needs N >= 1");
}

VonMangoldtTable sieve(std::uint64_t n, const SieveOptions& opts) {
  if (n < 1) fail(ErrorKind::InvalidArgument, "sieve needs N >= 1");
  const std::uint64_t per_entry = sizeof(std::uint32_t) + sizeof(double);
  if (n > opts.memory_budget_bytes / per_entry || n > 0xFFFFFFFFull) {
    fail(ErrorKind::LimitTooLarge, fmt::format("sieve limit {} exceeds memory budget {} bytes", n, opts.memory_budget_bytes));
  }
  std::vector<std::uint32_t> spf(n + 1, 0);
  std::vector<std::uint32_t> primes;
  for (std::uint64_t i = 2; i <= n; ++i) {
    if (spf[i] == 0) {
      spf[i] = static_cast<std::uint32_t>(i);
      primes.push_back(static_cast<std::uint32_t>(i));
    }
    for (std::uint32_t p : primes) {
      const std::uint64_t m = static_cast<std::uint64_t>(p) * i;
      if (p > spf[i] || m > n) break;
      spf[m] = p;
    }
  }
  std::vector<double> w(n, 0.0);
  for (std::uint64_t i = 2; i <= n; ++i) {
    const std::uint64_t p = spf[i];
    if (p == i) {
      w[i - 1] = std::log(static_cast<double>(i));
      continue;
    }
    std::uint64_t m = i;
    while (m % p == 0) m /= p;
    if (m == 1) w[i - 1] = w[p - 1];
  }
  return VonMangoldtTable(std::move(w));
}

AtomicDensity atomic_density(const VonMangoldtTable& table) {
  AtomicDensity d;
  const auto w = table.weights();
  for (std::uint64_t n = 2; n <= table.limit(); ++n) {
    if (w[n - 1] > 0.0) d.atoms.push_back({std::log(static_cast<double>(n)), w[n - 1], n});
  }
  return d;
}

double psi_arith(double x, const VonMangoldtTable& table) {
  const std::uint64_t upto = checked_floor(x, table, "psi_arith");
  return pairwise_sum(table.weights().subspan(0, upto));
}

PrimeExpectation prime_expectation(const TestFunction& g, Complex s, const VonMangoldtTable& table) {
  PrimeExpectation r;
  const auto w = table.weights();
  BlockedPairwiseSum<Complex> acc;
  for (std::uint64_t n = 2; n <= table.limit(); ++n) {
    if (w[n - 1] == 0.0) continue;
    const double l = std::log(static_cast<double>(n));
    acc.add(w[n - 1] * std::exp(-s * l) * g.time_eval(l));
    ++r.terms;
  }
  r.value = acc.total();
  const double excess = s.real() - 1.0 - g.growth_rate();
  r.formal_divergent = !(excess > 0.0);
  if (!r.formal_divergent) {
    // int_N^inf x^{-s} g(log x) dx with g frozen at its endpoint growth
    const double big_n = static_cast<double>(table.limit());
    const double l = std::log(big_n);
    r.tail_estimate = g.time_eval(l) * std::exp((1.0 - s) * l) / (s - 1.0 - g.growth_rate());
  }
  return r;
}

double eta_limit_partial(int k, double x, const VonMangoldtTable& table) {
  if (k < 0) fail(ErrorKind::InvalidArgument, "eta_limit_partial needs k >= 0");
  if (!(x >= 2.0)) fail(ErrorKind::InvalidArgument, "eta_limit_partial needs x >= 2");
  const std::uint64_t upto = checked_floor(x, table, "eta_limit_partial");
  const auto w = table.weights();
  BlockedPairwiseSum<double> acc;
  for (std::uint64_t n = 2; n <= upto; ++n) {
    if (w[n - 1] == 0.0) continue;
    const double l = std::log(static_cast<double>(n));
    acc.add(w[n - 1] * int_pow(l, k) / static_cast<double>(n));
  }
  return acc.total() - int_pow(std::log(x), k + 1) / (k + 1);
}

double stieltjes_partial(int k, double x) {
  if (k < 0) fail(ErrorKind::InvalidArgument, "stieltjes_partial needs k >= 0");
  if (!(x >= 1.0)) fail(ErrorKind::InvalidArgument, "stieltjes_partial needs x >= 1");
  const auto upto = static_cast<std::uint64_t>(std::floor(x));
  return harmonic_log_bracket(k, upto, x);
}

double stieltjes_partial_corrected(int k, double x) {
  if (k < 0) fail(ErrorKind::InvalidArgument, "stieltjes_partial needs k >= 0");
  if (!(x >= 1.0)) fail(ErrorKind::InvalidArgument, "stieltjes_partial needs x >= 1");
  const auto upto = static_cast<std::uint64_t>(std::floor(x));
  const double big_x = static_cast<double>(upto);
  const double l = std::log(big_x);
  // f(t) = (log t)^k / t
  const double f = int_pow(l, k) / big_x;
  const double fp = ((k > 0 ? k * int_pow(l, k - 1) : 0.0) - int_pow(l, k)) / (big_x * big_x);
  return harmonic_log_bracket(k, upto, big_x) - f / 2.0 - fp / 12.0;
}

void write_table_cache(const std::filesystem::path& path, const VonMangoldtTable& table) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorKind::IoError, fmt::format("cannot open {} for writing", path.string()));
  out.write(kMagic, 4);
  put_u64(out, table.limit());
  for (double v : table.weights()) put_u64(out, std::bit_cast<std::uint64_t>(v));
  if (!out) fail(ErrorKind::IoError, fmt::format("write to {} failed", path.string()));
}

VonMangoldtTable read_table_cache(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::IoError, fmt::format("cannot open {}", path.string()));
  char magic[4];
  if (!in.read(magic, 4) || std::memcmp(magic, kMagic, 4) != 0) {
    fail(ErrorKind::ParseError, fmt::format("{}: missing VMT1 magic", path.string()));
  }
  std::uint64_t n = 0;
  if (!get_u64(in, n) || n == 0) fail(ErrorKind::ParseError, fmt::format("{}: bad limit field", path.string()));
  const auto size = std::filesystem::file_size(path);
  if (size != 12 + 8 * n) {
    fail(ErrorKind::ParseError, fmt::format("{}: expected {} bytes, found {}", path.string(), 12 + 8 * n, size));
  }
  std::vector<double> w(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    std::uint64_t bits = 0;
    get_u64(in, bits);
    w[i] = std::bit_cast<double>(bits);
  }
  VonMangoldtTable table(std::move(w));
  const std::uint64_t m = std::min(n, kCacheCheckLimit);
  const double stored = pairwise_sum(table.weights().subspan(0, m));
  const double fresh = psi_arith(static_cast<double>(m), sieve(m));
  if (stored != fresh) {
    fail(ErrorKind::ParseError, fmt::format("{}: psi({}) check failed ({} vs {})", path.string(), m, stored, fresh));
  }
  return table;
}

}  // namespace efl
