#include <fstream>
#include <sstream>

#include <doctest.h>

#include "efl/arith.hpp"
#include "efl/cli.hpp"
#include "efl/explicit_formula.hpp"
#include "efl/report.hpp"
#include "support.hpp"

using namespace efl;
using efl::test::kind_of;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run_cli(const std::vector<std::string>& args, KeyValues env = {}) {
  if (!env.count("EFL_CACHE_DIR")) env["EFL_CACHE_DIR"] = (std::filesystem::temp_directory_path() / "efl_cli_cache").string();
  std::ostringstream out, err;
  const int code = run(args, env, out, err);
  return {code, out.str(), err.str()};
}

std::string zeros_path() {
  const char* p = std::getenv("EFL_TEST_ZEROS");
  return p ? p : "";
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("config precedence matrix") {
  for (int mask = 0; mask < 8; ++mask) {
    const bool file = mask & 1, env = mask & 2, flag = mask & 4;
    KeyValues f, e, g;
    if (file) f["working_digits"] = "16";
    if (env) e["working_digits"] = "17";
    if (flag) g["working_digits"] = "18";
    const RunConfig cfg = resolve_config(f, e, g, "/tmp/default-cache");
    const int want = flag ? 18 : env ? 17 : file ? 16 : 15;
    const char* origin = flag ? "flag" : env ? "env" : file ? "file" : "default";
    CHECK(cfg.working_digits == want);
    CHECK(cfg.origin.at("working_digits") == origin);
    CHECK(cfg.origin.at("seed") == "default");
    CHECK(cfg.cache_dir == "/tmp/default-cache");
  }
}

TEST_CASE("every key resolves explicitly") {
  const RunConfig cfg = resolve_config({}, {}, {}, "/c");
  for (auto key : kConfigKeys) CHECK(cfg.origin.count(std::string(key)) == 1);
  CHECK(cfg.seed == 20231107);
  CHECK(cfg.output_format == OutputFormat::json);
}

TEST_CASE("config file and environment parsing") {
  const KeyValues kv = parse_config_text("# comment\n[run]\nzero_count = 100\noutput_format = \"csv\"\nseed='7' # trailing\n");
  CHECK(kv.at("zero_count") == "100");
  CHECK(kv.at("output_format") == "csv");
  CHECK(kv.at("seed") == "7");
  CHECK(kind_of([] { parse_config_text("bogus = 1\n"); }) == ErrorKind::ParseError);
  CHECK(kind_of([] { parse_config_text("zero_count\n"); }) == ErrorKind::ParseError);
  const KeyValues env = config_from_env({{"EFL_CACHE_DIR", "/x"}, {"EFL_WORKING_DIGITS", "20"}, {"HOME", "/root"}});
  CHECK(env.size() == 2);
  CHECK(env.at("cache_dir") == "/x");
  CHECK(kind_of([] { resolve_config({{"output_format", "xml"}}, {}, {}, "/c"); }) == ErrorKind::InvalidArgument);
  CHECK(kind_of([] { resolve_config({{"working_digits", "3"}}, {}, {}, "/c"); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("psi example") {
  const Result r = run_cli({"psi", "--x", "10.5", "--limit", "100", "--no-archive"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("\"psi\": 7.8320141") != std::string::npos);
  const Result csv = run_cli({"--output", "csv", "psi", "--x", "10.5", "--no-archive"});
  CHECK(csv.out.rfind("x,limit,psi\n10.5,10.0,7.8320141", 0) == 0);
}

TEST_CASE("flags after the subcommand, env and file layers") {
  const auto dir = test::scratch_dir("cli_cfg");
  std::ofstream(dir / "efl.toml") << "seed = 11\ntrivial_cutoff = 500\n";
  const Result r = run_cli({"psi", "--x", "3.5", "--config", (dir / "efl.toml").string(), "--trivial-cutoff", "700",
                            "--no-archive"},
                           {{"EFL_SEED", "12"}, {"EFL_CACHE_DIR", (dir / "cache").string()}});
  REQUIRE(r.code == kExitOk);
  const Json j = Json::parse(r.out);
  CHECK(j["config"]["seed"] == 12);
  CHECK(j["config"]["origin"]["seed"] == "env");
  CHECK(j["config"]["trivial_cutoff"] == 700);
  CHECK(j["config"]["origin"]["trivial_cutoff"] == "flag");
  CHECK(j["config"]["cache_dir"] == (dir / "cache").string());
  std::filesystem::remove_all(dir);
}

TEST_CASE("usage errors exit 1 with help") {
  Result r = run_cli({});
  CHECK(r.code == kExitUsage);
  r = run_cli({"frobnicate"});
  CHECK(r.code == kExitUsage);
  r = run_cli({"psi"});
  CHECK(r.code == kExitUsage);
  CHECK(r.err.find("--limit") != std::string::npos);
  r = run_cli({"li", "--n-max", "99", "--zeros", zeros_path(), "--no-archive"});
  CHECK(r.code == kExitUsage);
  r = run_cli({"psi", "--x", "1", "--working-digits", "4", "--no-archive"});
  CHECK(r.code == kExitUsage);
  CHECK(run_cli({"--help"}).code == kExitOk);
}

TEST_CASE("li csv example") {
  const Result r = run_cli({"li", "--n-max", "10", "--zeros", zeros_path(), "--output", "csv", "--no-archive"});
  REQUIRE(r.code == kExitOk);
  CHECK(r.out.rfind(std::string(kLiCsvHeader) + "\n", 0) == 0);
  CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 11);
  CHECK(r.err.find("on_critical_line=true") != std::string::npos);
}

TEST_CASE("li json carries assumptions and truncation") {
  const Result r = run_cli({"li", "--n-max", "5", "--zeros", zeros_path(), "--no-archive"});
  REQUIRE(r.code == kExitOk);
  const Json j = Json::parse(r.out);
  CHECK(j["assumptions"]["on_critical_line"] == true);
  CHECK(j["zero_set"]["count"] == 100000);
  CHECK(j["result"]["route_triangle"]["passed"] == true);
}

TEST_CASE("route-triangle breach exits 2") {
  // first ordinate moved from 14.13 to 16: passes table validation, shifts lambda_5 by ~0.03
  const auto dir = test::scratch_dir("cli_breach");
  {
    std::ifstream in(zeros_path());
    std::ofstream out(dir / "shifted.txt");
    std::string line;
    std::getline(in, line);
    out << "16.000000000\n";
    for (int i = 1; i < 2000 && std::getline(in, line); ++i) out << line << "\n";
  }
  const Result r = run_cli({"li", "--n-max", "5", "--zeros", (dir / "shifted.txt").string(), "--no-archive"});
  CHECK(r.code == kExitValidation);
  CHECK(Json::parse(r.out)["result"]["route_triangle"]["passed"] == false);
  std::filesystem::remove_all(dir);
}

TEST_CASE("bad zero tables exit 2") {
  const auto dir = test::scratch_dir("cli_bad");
  std::ofstream(dir / "dec.txt") << "14.134725142\n25.010857580\n21.022039639\n";
  std::ofstream(dir / "crlf.txt") << "14.134725142\r\n";
  CHECK(run_cli({"zeros", "--zeros", (dir / "dec.txt").string(), "--no-archive"}).code == kExitValidation);
  CHECK(run_cli({"li", "--zeros", (dir / "crlf.txt").string(), "--no-archive"}).code == kExitValidation);
  CHECK(run_cli({"li", "--zeros", (dir / "none.txt").string(), "--no-archive"}).code == kExitComputation);
  std::filesystem::remove_all(dir);
}

TEST_CASE("zeros subcommand writes a loadable table") {
  const auto dir = test::scratch_dir("cli_zeros");
  const Result r = run_cli({"zeros", "--find", "40", "--write", (dir / "z.txt").string(), "--no-archive"});
  REQUIRE(r.code == kExitOk);
  const Json j = Json::parse(r.out);
  CHECK(j["result"]["count_below_100"] == 29);
  CHECK(load_zeros(dir / "z.txt").size() == 40);
  std::filesystem::remove_all(dir);
}

TEST_CASE("reports are archived under cache_dir/reports") {
  const auto dir = test::scratch_dir("cli_archive");
  const Result r = run_cli({"coeffs", "--k-max", "5"}, {{"EFL_CACHE_DIR", dir.string()}});
  REQUIRE(r.code == kExitOk);
  const auto archived = dir / "reports" / (sha256_hex(r.out) + ".json");
  CHECK(std::filesystem::exists(archived));
  const Result again = run_cli({"coeffs", "--k-max", "5"}, {{"EFL_CACHE_DIR", dir.string()}});
  CHECK(again.out == r.out);

  const auto out_file = dir / "out.json";
  CHECK(run_cli({"coeffs", "--k-max", "5", "--out", out_file.string()}, {{"EFL_CACHE_DIR", dir.string()}}).code == 0);
  std::ifstream in(out_file);
  CHECK(std::string((std::istreambuf_iterator<char>(in)), {}) == r.out);
  std::filesystem::remove_all(dir);
}

TEST_CASE("weil, explicit-check and psi-explicit subcommands") {
  Result r = run_cli({"weil", "--family", "assoc_laguerre", "--n", "4", "--zeros", zeros_path(), "--no-archive"});
  CHECK(r.code == kExitOk);
  CHECK(Json::parse(r.out)["result"]["partial_sums_monotone"] == true);
  r = run_cli({"explicit-check", "--zeros", zeros_path(), "--zero-count", "10000", "--no-archive"});
  CHECK(r.code == kExitOk);
  CHECK(Json::parse(r.out)["result"]["passed"] == true);
  r = run_cli({"explicit-check", "--zeros", zeros_path(), "--zero-count", "10", "--tol", "1e-9", "--no-archive"});
  CHECK(r.code == kExitValidation);
  r = run_cli({"psi-explicit", "--x", "100.5", "--limit", "200", "--zeros", zeros_path(), "--zero-count", "2000",
               "--no-archive"});
  CHECK(r.code == kExitOk);
  const Json j = Json::parse(r.out);
  const ZeroSet z2000 = load_zeros(zeros_path()).prefix(2000);
  const double analytic = psi_analytic(100.5, z2000).total.real();
  const double arith = psi_arith(100.5, sieve(200));
  CHECK(j["result"]["report"]["total"]["re"].get<double>() == analytic);
  CHECK(j["result"]["psi_arith"].get<double>() == arith);
  CHECK(j["result"]["abs_difference"].get<double>() == std::abs(analytic - arith));
  CHECK(j["zero_set"]["count"] == 2000);
}

}  // TEST_SUITE
