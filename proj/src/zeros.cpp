#include "efl/zeros.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <boost/math/special_functions/lambert_w.hpp>
#include <boost/math/tools/roots.hpp>
#include <fmt/format.h>

#include "efl/errors.hpp"

namespace efl {
namespace {

constexpr double kRiemannSiegelFrom = 1000.0;
constexpr int kMaxBlockRefinements = 10;

bool is_blank(char c) { return c == ' ' || c == '\t'; }

double hardy_z_fast(double t) {
  return t < kRiemannSiegelFrom ? hardy_z(t) : riemann_siegel_z(t);
}

struct Sample {
  double t;
  double z;
};

std::size_t sign_changes(const std::vector<Sample>& pts) {
  std::size_t c = 0;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    if ((pts[i - 1].z < 0.0) != (pts[i].z < 0.0)) ++c;
  }
  return c;
}

struct ScanResult {
  std::vector<double> ordinates;
  long last_good_gram = -1;
  double last_good_height = 0.0;
};

// Walk Gram blocks until `count` zeros are located.
template <typename Zfn, typename Refine>
ScanResult gram_scan(std::size_t count, Zfn&& z, Refine&& refine, const ProgressFn& progress) {
  ScanResult r;
  long n = -1;
  Sample prev{gram_point(n), z(gram_point(n))};
  if (!(prev.z < 0.0)) fail(ErrorKind::MissedZero, "Gram point g_-1 is not good");
  while (r.ordinates.size() < count) {
    std::vector<Sample> block{prev};
    long m = n;
    while (true) {
      ++m;
      const double g = gram_point(m);
      const double zg = z(g);
      block.push_back({g, zg});
      const double parity = (m % 2 == 0) ? 1.0 : -1.0;
      if (parity * zg > 0.0) break;
      if (m - n > 64) fail(ErrorKind::MissedZero, fmt::format("no good Gram point after g_{}", n));
    }
    const auto expected = static_cast<std::size_t>(m - n);
    for (int pass = 0; sign_changes(block) < expected && pass < kMaxBlockRefinements; ++pass) {
      std::vector<Sample> finer;
      finer.reserve(block.size() * 2);
      for (std::size_t i = 0; i + 1 < block.size(); ++i) {
        finer.push_back(block[i]);
        const double mid = 0.5 * (block[i].t + block[i + 1].t);
        finer.push_back({mid, z(mid)});
      }
      finer.push_back(block.back());
      block = std::move(finer);
    }
    if (sign_changes(block) != expected) {
      fail(ErrorKind::MissedZero, fmt::format("Gram block [g_{}, g_{}] has {} sign changes, expected {}", n, m,
                                              sign_changes(block), expected));
    }
    for (std::size_t i = 0; i + 1 < block.size(); ++i) {
      if ((block[i].z < 0.0) != (block[i + 1].z < 0.0)) r.ordinates.push_back(refine(block[i].t, block[i + 1].t));
    }
    n = m;
    prev = block.back();
    r.last_good_gram = n;
    r.last_good_height = prev.t;
    if (progress) progress(r.ordinates.size());
  }
  // Zeros up to the good Gram point g_n number n + 1.
  const double est = count_estimate(r.last_good_height);
  const double have = static_cast<double>(r.ordinates.size());
  if (std::abs(have - est) >= 1.0 || r.ordinates.size() != static_cast<std::size_t>(n + 1)) {
    fail(ErrorKind::MissedZero, fmt::format("{} zeros below g_{} = {:.6f}, estimate {:.3f}", r.ordinates.size(), n,
                                            r.last_good_height, est));
  }
  return r;
}

}  // namespace

std::string_view to_string(ZeroSource s) {
  switch (s) {
    case ZeroSource::file: return "file";
    case ZeroSource::computed: return "computed";
    case ZeroSource::fetched: return "fetched";
  }
  return "unknown";
}

ZeroSet ZeroSet::prefix(std::size_t n) const {
  ZeroSet z = *this;
  if (n < z.ordinates.size()) {
    z.ordinates.resize(n);
    z.max_height = z.ordinates.empty() ? 0.0 : z.ordinates.back();
  }
  return z;
}

double count_estimate(double t) {
  if (!(t > 2.0 * kPi)) fail(ErrorKind::InvalidArgument, "count_estimate needs T > 2 pi");
  const double u = t / (2.0 * kPi);
  return u * (std::log(u) - 1.0) + 0.875;
}

void validate_zero_set(const ZeroSet& zs) {
  const auto& g = zs.ordinates;
  if (g.empty()) fail(ErrorKind::EmptyZeroSet, "zero set is empty");
  if (!(g.front() > 14.0)) fail(ErrorKind::CountMismatch, fmt::format("first ordinate {} is not above 14", g.front()));
  for (std::size_t j = 1; j < g.size(); ++j) {
    if (!(g[j] > g[j - 1])) {
      fail(ErrorKind::MonotonicityViolation, fmt::format("ordinate {} ({}) does not exceed ordinate {} ({})", j + 1, g[j], j, g[j - 1]));
    }
  }
  // N(T) jumps at each ordinate; the extremes of N(T) - est(T) sit on either
  // side of a jump, so est(gamma_j) must lie in [j - 2, j + 1].
  for (std::size_t j = 0; j < g.size(); ++j) {
    const double idx = static_cast<double>(j + 1);
    const double est = count_estimate(g[j]);
    if (est < idx - 2.0 || est > idx + 1.0) {
      fail(ErrorKind::CountMismatch, fmt::format("at T = {:.9f}: expected about {:.3f} zeros, table has {}", g[j], est,
                                                 j + 1));
    }
  }
}

ZeroSet parse_zeros(std::string_view text, ZeroSource source, std::string origin) {
  ZeroSet zs;
  zs.source = source;
  zs.origin = std::move(origin);
  std::size_t line_no = 0;
  std::size_t pos = 0;
  bool saw_blank = false;
  std::size_t blank_line = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (line.find('\r') != std::string_view::npos) {
      fail(ErrorKind::ParseError, fmt::format("line {}: CR line endings are not accepted", line_no));
    }
    while (!line.empty() && is_blank(line.front())) line.remove_prefix(1);
    while (!line.empty() && is_blank(line.back())) line.remove_suffix(1);
    if (line.empty()) {
      if (!saw_blank) blank_line = line_no;
      saw_blank = true;
      continue;
    }
    if (saw_blank) fail(ErrorKind::ParseError, fmt::format("line {}: blank line inside the table", blank_line));
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(line.data(), line.data() + line.size(), v, std::chars_format::fixed);
    if (ec != std::errc{} || ptr != line.data() + line.size() || !std::isfinite(v) || !(v > 0.0)) {
      fail(ErrorKind::ParseError, fmt::format("line {}: '{}' is not a positive decimal ordinate", line_no, line));
    }
    if (!zs.ordinates.empty() && !(v > zs.ordinates.back())) {
      fail(ErrorKind::MonotonicityViolation,
           fmt::format("line {}: {} does not exceed the previous ordinate {}", line_no, line, zs.ordinates.back()));
    }
    zs.ordinates.push_back(v);
  }
  if (zs.ordinates.empty()) fail(ErrorKind::ParseError, "line 1: zero table is empty");
  zs.max_height = zs.ordinates.back();
  zs.on_critical_line = true;
  validate_zero_set(zs);
  return zs;
}

ZeroSet load_zeros(const std::filesystem::path& path, ZeroSource source) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::IoError, fmt::format("cannot open zero table {}", path.string()));
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_zeros(buf.str(), source, path.string());
}

void write_zeros(const std::filesystem::path& path, std::span<const double> ordinates) {
  std::FILE* f = std::fopen(path.string().c_str(), "wb");
  if (!f) fail(ErrorKind::IoError, fmt::format("cannot open {} for writing", path.string()));
  for (double g : ordinates) std::fprintf(f, "%.12f\n", g);
  if (std::fclose(f) != 0) fail(ErrorKind::IoError, fmt::format("write to {} failed", path.string()));
}

double gram_point(long n) {
  if (n < -1) fail(ErrorKind::InvalidArgument, "Gram points start at n = -1");
  const double target = static_cast<double>(n) * kPi;
  // theta(t) ~ (t/2) log(t/(2 pi e)) - pi/8
  const double x = (static_cast<double>(n) + 0.125) / std::exp(1.0);
  double t = 2.0 * kPi * std::exp(1.0) * std::exp(boost::math::lambert_w0(x));
  for (int it = 0; it < 50; ++it) {
    const double step = (hardy_theta(t) - target) / (0.5 * std::log(t / (2.0 * kPi)));
    t -= step;
    if (std::abs(step) < 1e-14 * t) break;
  }
  return t;
}

double refine_zero(double lo, double hi, const std::function<double(double)>& z, double tol) {
  double zlo = z(lo);
  const double zhi = z(hi);
  if ((zlo < 0.0) == (zhi < 0.0)) fail(ErrorKind::InvalidArgument, "refine_zero needs a sign-changing bracket");
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double zm = z(mid);
    if (zm == 0.0) return mid;
    if ((zm < 0.0) == (zlo < 0.0)) {
      lo = mid;
      zlo = zm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

ZeroSet find_zeros(int count, const ZetaEvalConfig& cfg) {
  if (count < 1 || count > kMaxFindZeros) {
    fail(ErrorKind::InvalidArgument, fmt::format("find_zeros count {} outside 1..{}", count, kMaxFindZeros));
  }
  cfg.validate();
  const auto z = [&cfg](double t) { return hardy_z(t, cfg); };
  const std::function<double(double)> zf = z;
  ScanResult r = gram_scan(static_cast<std::size_t>(count), z, [&](double lo, double hi) { return refine_zero(lo, hi, zf); }, {});
  ZeroSet zs;
  zs.ordinates = std::move(r.ordinates);
  zs.ordinates.resize(static_cast<std::size_t>(count));
  zs.source = ZeroSource::computed;
  zs.on_critical_line = true;
  zs.max_height = zs.ordinates.back();
  zs.origin = "find_zeros (Euler-Maclaurin Hardy Z)";
  validate_zero_set(zs);
  return zs;
}

ZeroSet generate_zeros(std::size_t count, const ProgressFn& progress) {
  if (count < 1) fail(ErrorKind::InvalidArgument, "generate_zeros needs count >= 1");
  const auto refine = [](double lo, double hi) {
    boost::uintmax_t iters = 80;
    const auto tol = [](double a, double b) { return std::abs(b - a) < 1e-12 * std::max(1.0, std::abs(a)); };
    const auto [a, b] = boost::math::tools::toms748_solve(hardy_z_fast, lo, hi, tol, iters);
    return 0.5 * (a + b);
  };
  ScanResult r = gram_scan(count, hardy_z_fast, refine, progress);
  ZeroSet zs;
  zs.ordinates = std::move(r.ordinates);
  zs.ordinates.resize(count);
  zs.source = ZeroSource::computed;
  zs.on_critical_line = true;
  zs.max_height = zs.ordinates.back();
  zs.origin = "generate_zeros (Hardy Z, Gram blocks)";
  validate_zero_set(zs);
  return zs;
}

}  // namespace efl
