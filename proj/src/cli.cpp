#include "efl/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "efl/arith.hpp"
#include "efl/errors.hpp"
#include "efl/explicit_formula.hpp"
#include "efl/laurent.hpp"
#include "efl/li_weil.hpp"
#include "efl/report.hpp"
#include "efl/testfn.hpp"
#include "efl/zeros.hpp"
#include "efl/zeta.hpp"

namespace efl {
namespace {

constexpr int kDefaultComputedZeros = 500;
constexpr std::size_t kFullTableZeros = 100000;

struct Session {
  RunConfig cfg;
  std::ostream& out;
  std::ostream& err;
  std::string out_path;
  bool archive = true;
};

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ParseError:
    case ErrorKind::MonotonicityViolation:
    case ErrorKind::CountMismatch:
    case ErrorKind::DigestMismatch:
    case ErrorKind::MissedZero: return kExitValidation;
    case ErrorKind::InvalidArgument: return kExitUsage;
    default: return kExitComputation;
  }
}

ZetaEvalConfig zeta_config(const RunConfig& cfg) {
  ZetaEvalConfig z;
  z.working_digits = cfg.working_digits;
  z.validate();
  return z;
}

Json config_json(const RunConfig& cfg) {
  Json origin;
  for (const auto& [k, v] : cfg.origin) origin[k] = v;
  return Json{{"zeros_path", cfg.zeros_path},
              {"zeros_url", cfg.zeros_url},
              {"cache_dir", cfg.cache_dir.string()},
              {"working_digits", cfg.working_digits},
              {"trivial_cutoff", cfg.trivial_cutoff},
              {"zero_count", cfg.zero_count},
              {"output_format", cfg.output_format == OutputFormat::json ? "json" : "csv"},
              {"seed", cfg.seed},
              {"origin", origin}};
}

void write_output(Session& session, const std::string& bytes, std::string_view ext) {
  if (session.out_path.empty()) {
    session.out << bytes;
  } else {
    std::ofstream f(session.out_path, std::ios::binary | std::ios::trunc);
    if (!f) fail(ErrorKind::IoError, fmt::format("cannot write {}", session.out_path));
    f << bytes;
  }
  if (session.archive) archive_report(session.cfg.cache_dir / "reports", bytes, ext);
}

void emit_document(Session& session, std::string_view command, Json result, const ZeroSet* zeros) {
  Json doc;
  doc["command"] = std::string(command);
  doc["config"] = config_json(session.cfg);
  if (zeros) {
    doc["zero_set"] = zero_set_summary(*zeros);
    doc["assumptions"] = Json{{"on_critical_line", zeros->on_critical_line}};
  }
  doc["result"] = std::move(result);
  write_output(session, emit_json(doc), "json");
}

void emit_csv(Session& session, const std::string& csv, const ZeroSet* zeros) {
  if (zeros) {
    session.err << fmt::format("# zeros={} truncation_height={} source={} on_critical_line={}\n", zeros->size(),
                               format_number(zeros->max_height), to_string(zeros->source),
                               zeros->on_critical_line ? "true" : "false");
  }
  write_output(session, csv, "csv");
}

ZeroSet acquire_zeros(Session& session) {
  const RunConfig& cfg = session.cfg;
  ZeroSet zs;
  if (!cfg.zeros_path.empty()) {
    zs = load_zeros(cfg.zeros_path);
  } else if (!cfg.zeros_url.empty()) {
    const FetchResult fr = fetch_zeros(cfg.zeros_url, cfg.cache_dir);
    zs = load_zeros(fr.path, ZeroSource::fetched);
    zs.origin = cfg.zeros_url;
  } else {
    const int want = cfg.zero_count > 0 ? cfg.zero_count : kDefaultComputedZeros;
    zs = want <= kMaxFindZeros ? find_zeros(want, zeta_config(cfg)) : generate_zeros(static_cast<std::size_t>(want));
  }
  if (cfg.zero_count > 0 && static_cast<std::size_t>(cfg.zero_count) < zs.size()) {
    zs = zs.prefix(static_cast<std::size_t>(cfg.zero_count));
  }
  return zs;
}

// Route-triangle tolerance for the direct route, or nullopt when the zero table is
// too short for a meaningful comparison at this n.
std::optional<double> direct_tolerance(int n, std::size_t zero_count) {
  if (zero_count >= kFullTableZeros) {
    if (n <= 20) return std::max(1e-3, n * 1e-4);
    return std::nullopt;
  }
  if (n <= 5) return 1e-2;
  return std::nullopt;
}

constexpr double kEtaMuTolerance = 1e-9;

struct Check {
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

Json checks_json(const std::vector<Check>& checks) {
  Json arr = Json::array();
  for (const auto& c : checks) {
    arr.push_back(Json{{"name", c.name}, {"value", c.value}, {"tolerance", c.tolerance}, {"passed", c.passed}});
  }
  return arr;
}

void route_triangle_checks(const std::vector<LiRow>& rows, std::size_t zero_count, std::vector<Check>& checks) {
  for (const auto& row : rows) {
    const double em = std::abs(row.lambda_eta - row.lambda_mu);
    checks.push_back({fmt::format("lambda_{} eta vs mu", row.n), em, kEtaMuTolerance, em < kEtaMuTolerance});
    if (const auto tol = direct_tolerance(row.n, zero_count)) {
      const double ed = std::abs(row.lambda_eta - (row.lambda_direct + row.tail));
      checks.push_back({fmt::format("lambda_{} eta vs direct+tail", row.n), ed, *tol, ed < *tol});
    }
  }
}

bool all_passed(const std::vector<Check>& checks) {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

TestFunction make_test_function(const std::string& family, int n, double a) {
  if (family == "poly") return poly_tf(n);
  if (family == "exp") return exp_tf(a);
  if (family == "laguerre") return laguerre_tf(n);
  if (family == "assoc_laguerre") return assoc_laguerre_tf(n);
  fail(ErrorKind::InvalidArgument, fmt::format("unknown family '{}'", family));
}

int coefficient_order_for(int n) { return std::clamp(n + 1, 20, kMaxLaurentOrder); }

// Subcommand bodies. Each returns an exit code.

int cmd_psi(Session& s, double x, std::uint64_t limit) {
  if (limit == 0) limit = static_cast<std::uint64_t>(std::floor(x));
  const VonMangoldtTable table = sieve(limit);
  const double value = psi_arith(x, table);
  if (s.cfg.output_format == OutputFormat::csv) {
    emit_csv(s, "x,limit,psi\n" + csv_row({x, static_cast<double>(limit), value}), nullptr);
  } else {
    emit_document(s, "psi", Json{{"x", x}, {"limit", limit}, {"psi", value}}, nullptr);
  }
  return kExitOk;
}

int cmd_psi_explicit(Session& s, double x, std::uint64_t limit) {
  const ZeroSet zeros = acquire_zeros(s);
  const ExplicitFormulaReport r = psi_analytic(x, zeros, s.cfg.trivial_cutoff);
  Json result;
  result["report"] = to_json(r);
  if (limit > 0) {
    const double arith = psi_arith(x, sieve(limit));
    result["psi_arith"] = arith;
    result["abs_difference"] = std::abs(r.total.real() - arith);
  }
  emit_document(s, "psi-explicit", std::move(result), &zeros);
  return kExitOk;
}

int cmd_zeros(Session& s, int find, std::size_t generate, const std::string& write_path) {
  ZeroSet zs;
  if (find > 0) {
    zs = find_zeros(find, zeta_config(s.cfg));
  } else if (generate > 0) {
    std::size_t next_report = 10000;
    zs = generate_zeros(generate, [&](std::size_t found) {
      if (found >= next_report) {
        s.err << fmt::format("generated {} zeros\n", found);
        next_report += 10000;
      }
    });
  } else {
    zs = acquire_zeros(s);
  }
  validate_zero_set(zs);
  if (!write_path.empty()) write_zeros(write_path, zs.ordinates);
  const auto below_100 = std::count_if(zs.ordinates.begin(), zs.ordinates.end(), [](double g) { return g < 100.0; });
  Json result{{"validated", true},
              {"first_ordinate", zs.ordinates.front()},
              {"last_ordinate", zs.ordinates.back()},
              {"count_below_100", below_100},
              {"count_estimate_at_max", count_estimate(zs.max_height)}};
  if (!write_path.empty()) result["written_to"] = write_path;
  emit_document(s, "zeros", std::move(result), &zs);
  return kExitOk;
}

int cmd_li(Session& s, int n_max) {
  if (n_max < 1 || n_max > kMaxLiDirectOrder) {
    fail(ErrorKind::InvalidArgument, fmt::format("--n-max must lie in [1, {}]", kMaxLiDirectOrder));
  }
  const ZeroSet zeros = acquire_zeros(s);
  const LaurentCoefficients coeffs = laurent_coefficients(coefficient_order_for(n_max), zeta_config(s.cfg));
  const std::vector<LiRow> rows = li_table(n_max, zeros, coeffs);
  std::vector<Check> checks;
  route_triangle_checks(rows, zeros.size(), checks);
  const bool ok = all_passed(checks);
  if (s.cfg.output_format == OutputFormat::csv) {
    emit_csv(s, li_csv(rows), &zeros);
  } else {
    emit_document(s, "li",
                  Json{{"coefficient_order", coeffs.order},
                       {"rows", to_json(rows)},
                       {"route_triangle", Json{{"passed", ok}, {"checks", checks_json(checks)}}}},
                  &zeros);
  }
  if (!ok) s.err << "route-triangle tolerance breached\n";
  return ok ? kExitOk : kExitValidation;
}

int cmd_coeffs(Session& s, int k_max) {
  const LaurentCoefficients coeffs = laurent_coefficients(k_max, zeta_config(s.cfg));
  if (s.cfg.output_format == OutputFormat::csv) {
    emit_csv(s, coeffs_csv(coeffs), nullptr);
    return kExitOk;
  }
  Json sums = Json::array();
  for (int k = 0; k <= k_max; ++k) sums.push_back(to_json(zero_power_sum(k, coeffs)));
  emit_document(s, "coeffs", Json{{"laurent", to_json(coeffs)}, {"zero_power_sums", sums}}, nullptr);
  return kExitOk;
}

int cmd_weil(Session& s, const std::string& family, int n, double a) {
  const TestFunction g = make_test_function(family, n, a);
  const ZeroSet zeros = acquire_zeros(s);
  const LaurentCoefficients coeffs = laurent_coefficients(coefficient_order_for(2 * n + 2), zeta_config(s.cfg));
  const WeilFormReport w = weil_form(g, zeros, coeffs, s.cfg.trivial_cutoff);
  emit_document(s, "weil", to_json(w), &zeros);
  if (!w.partial_sums_monotone) s.err << "weil form partial sums are not monotone\n";
  return w.partial_sums_monotone ? kExitOk : kExitValidation;
}

int cmd_explicit_check(Session& s, double sigma, std::uint64_t limit, const std::string& family, int n, double a,
                       double tol) {
  const TestFunction g = make_test_function(family, n, a);
  const ZeroSet zeros = acquire_zeros(s);
  const VonMangoldtTable table = sieve(limit);
  const PrimeExpectation pe = prime_expectation(g, sigma, table);
  if (pe.formal_divergent) fail(ErrorKind::InvalidArgument, "arithmetic side diverges at this s");
  const ExplicitFormulaReport r = general_rhs(g, sigma, zeros, s.cfg.trivial_cutoff, true);
  const double diff = std::abs(pe.corrected() - r.total);
  const bool ok = diff < tol;
  emit_document(s, "explicit-check",
                Json{{"report", to_json(r)},
                     {"arithmetic", Json{{"limit", limit},
                                         {"value", complex_json(pe.value)},
                                         {"tail_estimate", complex_json(pe.tail_estimate)},
                                         {"corrected", complex_json(pe.corrected())}}},
                     {"abs_difference", diff},
                     {"tolerance", tol},
                     {"passed", ok}},
                &zeros);
  return ok ? kExitOk : kExitValidation;
}

int cmd_selftest(Session& s) {
  const ZetaEvalConfig zc = zeta_config(s.cfg);
  const auto& c = constants();
  std::vector<Check> checks;
  auto check = [&](std::string name, double value, double tol) {
    checks.push_back({std::move(name), value, tol, value < tol});
  };

  check("neg_zeta_log_deriv(0) + log 2pi", std::abs(neg_zeta_log_deriv(0.0, zc).real() + c.log_2pi), 1e-10);

  const ZeroSet zeros = acquire_zeros(s);
  const LaurentCoefficients coeffs = laurent_coefficients(kMaxLaurentOrder, zc);
  const double seed = 1.0 + 0.5 * (c.euler_gamma - c.log_4pi);
  check("li_eta(1) seed", std::abs(li_eta(1, coeffs) - seed), 1e-12);
  check("li_mu(1) seed", std::abs(li_mu(1, coeffs) - seed), 1e-12);

  route_triangle_checks(li_table(20, zeros, coeffs), zeros.size(), checks);

  check("zero power sum k=0", std::abs(zero_power_sum(0, coeffs).eta_route - seed), 1e-10);
  for (int k = 1; k <= 20; ++k) {
    check(fmt::format("zero power sum k={} dual route", k), std::abs(zero_power_sum(k, coeffs).difference), 1e-9);
  }

  const auto below_100 = std::count_if(zeros.ordinates.begin(), zeros.ordinates.end(), [](double g) { return g < 100.0; });
  check("zeros below 100 minus 29", std::abs(static_cast<double>(below_100) - 29.0), 0.5);
  check("first ordinate", std::abs(zeros.ordinates.front() - 14.134725141734693), 1e-6);

  const VonMangoldtTable table = sieve(1000);
  check("psi(10.5) analytic vs arithmetic",
        std::abs(psi_analytic(10.5, zeros, s.cfg.trivial_cutoff).total.real() - psi_arith(10.5, table)), 0.1);

  std::mt19937_64 rng(s.cfg.seed);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  double worst_sum_prod = 0.0;
  double worst_involution = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const Complex pt = std::polar(10.0, angle(rng));
    for (int n = 1; n <= 40; ++n) worst_sum_prod = std::max(worst_sum_prod, sum_prod_check(n, pt));
    const TestFunction g = laguerre_tf(1 + trial % 10);
    const TestFunction back = involution(involution(g));
    worst_involution = std::max(worst_involution, std::abs(back.transform_eval(pt) - g.transform_eval(pt)));
  }
  check("sum_prod_check residual", worst_sum_prod, 1e-11);
  check("involution self-inverse", worst_involution, 1e-13);

  double min_lambda = std::numeric_limits<double>::infinity();
  for (int n = 1; n <= kMaxLiDirectOrder; ++n) min_lambda = std::min(min_lambda, li_eta(n, coeffs));
  checks.push_back({"min lambda_n, n<=50 (positivity observation)", min_lambda, 0.0, min_lambda > 0.0});

  const bool ok = all_passed(checks);
  emit_document(s, "selftest", Json{{"passed", ok}, {"checks", checks_json(checks)}}, &zeros);
  for (const auto& ch : checks) {
    if (!ch.passed) s.err << fmt::format("FAIL {}: {} (tolerance {})\n", ch.name, format_number(ch.value), format_number(ch.tolerance));
  }
  return ok ? kExitOk : kExitValidation;
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  if (!f) fail(ErrorKind::IoError, fmt::format("cannot read {}", p.string()));
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace

int run(const std::vector<std::string>& args, const KeyValues& env, std::ostream& out, std::ostream& err) {
  CLI::App app{"Explicit formulas for the Riemann zeta function: primes, zeros, Li and Weil.", "efl"};
  app.require_subcommand(1);

  std::string config_path, out_path;
  bool no_archive = false;
  std::map<std::string, std::string> flag_values;
  std::map<std::string, CLI::Option*> flag_options;
  auto config_flag = [&](const std::string& name, const std::string& key, const std::string& help) {
    flag_options[key] = app.add_option(name, flag_values[key], help);
  };
  app.add_option("--config", config_path, "Config file (default: ./efl.toml if present)");
  config_flag("--zeros", "zeros_path", "Zero table file");
  config_flag("--zeros-url", "zeros_url", "Zero table URL (cached, content-addressed)");
  config_flag("--cache-dir", "cache_dir", "Cache directory");
  config_flag("--working-digits", "working_digits", "Working precision in decimal digits (15 = double)");
  config_flag("--trivial-cutoff", "trivial_cutoff", "Trivial-zero series cutoff");
  config_flag("--zero-count", "zero_count", "Use only the first N zeros (0 = all)");
  config_flag("--output", "output_format", "json or csv");
  config_flag("--seed", "seed", "Seed for randomized sweeps");
  app.add_option("--out", out_path, "Write the report here instead of stdout");
  app.add_flag("--no-archive", no_archive, "Do not archive the report under cache_dir/reports");

  double x = 0.0;
  std::uint64_t limit = 0;
  auto* psi = app.add_subcommand("psi", "Chebyshev psi(x) from the von Mangoldt sieve");
  psi->add_option("--x", x, "Argument")->required();
  psi->add_option("--limit", limit, "Sieve limit (default floor(x))");

  auto* psi_ex = app.add_subcommand("psi-explicit", "psi(x) from the explicit formula over zeros");
  psi_ex->add_option("--x", x, "Argument")->required();
  psi_ex->add_option("--limit", limit, "Also sieve to this limit and compare");

  int find = 0;
  std::size_t generate = 0;
  std::string write_path;
  auto* zeros = app.add_subcommand("zeros", "Compute, generate, fetch or validate zero tables");
  zeros->add_option("--find", find, "Compute the first N zeros (N <= 500)")->check(CLI::Range(1, kMaxFindZeros));
  zeros->add_option("--generate", generate, "Generate the first N zeros with the Gram-block scan");
  zeros->add_option("--write", write_path, "Write the zero table to this file");

  int n_max = 20;
  auto* li = app.add_subcommand("li", "Li coefficients by three routes");
  li->add_option("--n-max", n_max, "Largest n")->capture_default_str();

  int k_max = 20;
  auto* coeffs = app.add_subcommand("coeffs", "Laurent coefficients eta_k, mu_k, gamma_k and zero power sums");
  coeffs->add_option("--k-max", k_max, "Largest k")->capture_default_str()->check(CLI::Range(1, kMaxLaurentOrder));

  std::string family = "assoc_laguerre";
  int n = 1;
  double a = 1.0;
  auto* weil = app.add_subcommand("weil", "Weil quadratic form for a test function");
  weil->add_option("--family", family, "assoc_laguerre, laguerre, poly or exp")->capture_default_str();
  weil->add_option("--n", n, "Order")->capture_default_str();
  weil->add_option("--a", a, "Exponential rate")->capture_default_str();

  double sigma = 2.0;
  std::uint64_t check_limit = 1'000'000;
  double tol = 1e-4;
  std::string check_family = "poly";
  int check_n = 0;
  double check_a = 1.0;
  auto* xcheck = app.add_subcommand("explicit-check", "Arithmetic versus analytic side of the general explicit formula");
  xcheck->add_option("--s", sigma, "Real point s")->capture_default_str();
  xcheck->add_option("--limit", check_limit, "Sieve limit")->capture_default_str();
  xcheck->add_option("--family", check_family, "assoc_laguerre, laguerre, poly or exp")->capture_default_str();
  xcheck->add_option("--n", check_n, "Order")->capture_default_str();
  xcheck->add_option("--a", check_a, "Exponential rate")->capture_default_str();
  xcheck->add_option("--tol", tol, "Agreement tolerance")->capture_default_str();

  auto* selftest = app.add_subcommand("selftest", "Run the invariant suite");

  for (auto* sub : app.get_subcommands([](CLI::App*) { return true; })) sub->fallthrough();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    const auto parsed = app.get_subcommands();
    out << (parsed.empty() ? app.help() : parsed.back()->help());
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    const auto parsed = app.get_subcommands();
    err << (parsed.empty() ? app.help() : parsed.back()->help());
    return kExitUsage;
  }

  try {
    KeyValues file_kv;
    if (!config_path.empty()) {
      file_kv = parse_config_text(read_file(config_path));
    } else if (std::filesystem::exists("efl.toml")) {
      file_kv = parse_config_text(read_file("efl.toml"));
    }
    KeyValues flags;
    for (const auto& [key, opt] : flag_options) {
      if (opt->count() > 0) flags[key] = flag_values[key];
    }
    Session session{resolve_config(file_kv, config_from_env(env), flags, default_cache_dir()), out, err, out_path,
                    !no_archive};

    if (psi->parsed()) return cmd_psi(session, x, limit);
    if (psi_ex->parsed()) return cmd_psi_explicit(session, x, limit);
    if (zeros->parsed()) return cmd_zeros(session, find, generate, write_path);
    if (li->parsed()) return cmd_li(session, n_max);
    if (coeffs->parsed()) return cmd_coeffs(session, k_max);
    if (weil->parsed()) return cmd_weil(session, family, n, a);
    if (xcheck->parsed()) return cmd_explicit_check(session, sigma, check_limit, check_family, check_n, check_a, tol);
    if (selftest->parsed()) return cmd_selftest(session);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitComputation;
  }
  return kExitUsage;
}

}  // namespace efl
