#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "efl/zeta.hpp"

namespace efl {

enum class ZeroSource { file, computed, fetched };
std::string_view to_string(ZeroSource s);

// Ordinates gamma_j of nontrivial zeros, ascending. rho_j = 1/2 + i gamma_j is
// materialized by consumers when on_critical_line holds.
struct ZeroSet {
  std::vector<double> ordinates;
  ZeroSource source = ZeroSource::file;
  bool on_critical_line = true;
  double max_height = 0.0;
  std::string origin;

  std::size_t size() const { return ordinates.size(); }
  bool empty() const { return ordinates.empty(); }
  // First n ordinates (all of them if n exceeds the size).
  ZeroSet prefix(std::size_t n) const;
};

// (T/2pi) log(T/(2 pi e)) + 7/8, T > 2pi.
double count_estimate(double t);

// Monotonicity plus count-versus-estimate (+-2) for every height up to max_height.
void validate_zero_set(const ZeroSet& zs);

// text in the zero-table format: one decimal ordinate per line, LF endings.
ZeroSet parse_zeros(std::string_view text, ZeroSource source = ZeroSource::file, std::string origin = {});
ZeroSet load_zeros(const std::filesystem::path& path, ZeroSource source = ZeroSource::file);
void write_zeros(const std::filesystem::path& path, std::span<const double> ordinates);

struct FetchOptions {
  bool redownload_on_mismatch = true;
};

struct FetchResult {
  std::filesystem::path path;
  std::string digest;  // hex SHA-256 of the contents
  bool from_cache = false;
  bool recovered_from_mismatch = false;
};

// Content-addressed download cache; file:// URLs are accepted.
FetchResult fetch_zeros(const std::string& url, const std::filesystem::path& cache_dir, const FetchOptions& opts = {});
std::uint64_t network_operation_count();
std::string sha256_hex(std::string_view bytes);
std::string sha256_file(const std::filesystem::path& path);

// EFL_CACHE_DIR if set, else ~/.cache/efl.
std::filesystem::path default_cache_dir();

// Gram point g_n: theta(g_n) = n pi, n >= -1.
double gram_point(long n);

// Bisection on a sign-changing bracket [lo, hi] of Z until the width is below tol;
// returns the midpoint.
double refine_zero(double lo, double hi, const std::function<double(double)>& z, double tol = 1e-11);

inline constexpr int kMaxFindZeros = 500;

// First `count` zeros from Euler-Maclaurin Hardy Z, Gram blocks with Rosser's rule.
ZeroSet find_zeros(int count, const ZetaEvalConfig& cfg = {});

// Larger tables: Euler-Maclaurin Z below t = 1000, Riemann-Siegel Z above.
using ProgressFn = std::function<void(std::size_t found)>;
ZeroSet generate_zeros(std::size_t count, const ProgressFn& progress = {});

}  // namespace efl
