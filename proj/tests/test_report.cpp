#include <cmath>
#include <fstream>
#include <limits>

#include <doctest.h>

#include "efl/explicit_formula.hpp"
#include "efl/laurent.hpp"
#include "efl/li_weil.hpp"
#include "efl/report.hpp"
#include "efl/testfn.hpp"
#include "support.hpp"

using namespace efl;

namespace {

// Every numeric leaf of `a` reproduced bit-exactly in `b`.
void same_numbers(const Json& a, const Json& b, const std::string& path = "$") {
  if (a.is_object()) {
    REQUIRE(b.is_object());
    for (const auto& [k, v] : a.items()) {
      REQUIRE_MESSAGE(b.contains(k), path << "." << k);
      same_numbers(v, b.at(k), path + "." + k);
    }
  } else if (a.is_array()) {
    REQUIRE(b.size() == a.size());
    for (std::size_t i = 0; i < a.size(); ++i) same_numbers(a[i], b[i], path + "[" + std::to_string(i) + "]");
  } else if (a.is_number_float()) {
    const double x = a.get<double>();
    if (!std::isfinite(x)) {
      CHECK_MESSAGE(b.is_null(), path);
    } else {
      CHECK_MESSAGE(b.get<double>() == x, path);
    }
  } else if (a.is_number()) {
    CHECK_MESSAGE(b == a, path);
  }
}

void check_round_trip(const Json& j) {
  const std::string bytes = emit_json(j);
  same_numbers(j, Json::parse(bytes));
  CHECK(emit_json(Json::parse(bytes)) == bytes);
}

}  // namespace

TEST_SUITE("report") {

TEST_CASE("number rendering") {
  CHECK(format_number(1.0) == "1.0");
  CHECK(format_number(0.1) == "0.10000000000000001");
  CHECK(format_number(1.0 / 3.0) == "0.33333333333333331");
  CHECK(format_number(-2.5e-300) == "-2.5e-300");
  CHECK(format_number(std::numeric_limits<double>::quiet_NaN()) == "null");
  CHECK(format_number(std::numeric_limits<double>::infinity()) == "null");
}

TEST_CASE("explicit formula reports are deterministic and round-trip") {
  const ZeroSet& zs = test::computed_zeros();
  const ExplicitFormulaReport a = general_rhs(laguerre_tf(2), 2.0, zs);
  const ExplicitFormulaReport b = general_rhs(laguerre_tf(2), 2.0, zs);
  CHECK(emit_json(to_json(a)) == emit_json(to_json(b)));
  check_round_trip(to_json(a));
  check_round_trip(to_json(psi_analytic(33.3, zs)));
  const Json j = to_json(a);
  CHECK(j.at("assumptions").at("on_critical_line") == true);
  CHECK(emit_json(j).find("\"on_critical_line\": true") != std::string::npos);
}

TEST_CASE("coefficient, Li and Weil reports round-trip") {
  const LaurentCoefficients c = laurent_coefficients(22);
  check_round_trip(to_json(c));
  const auto rows = li_table(10, test::computed_zeros(), c);
  check_round_trip(to_json(rows));
  const WeilFormReport w = weil_form(assoc_laguerre_tf(3), test::computed_zeros(), c);
  check_round_trip(to_json(w));
  CHECK(to_json(w).at("on_critical_line") == true);
  check_round_trip(to_json(zero_power_sum(4, c)));
  check_round_trip(zero_set_summary(test::computed_zeros()));
}

TEST_CASE("csv schemas") {
  const LaurentCoefficients c = laurent_coefficients(20);
  const auto rows = li_table(10, test::computed_zeros(), c);
  const std::string li = li_csv(rows);
  CHECK(li.rfind("n,lambda_direct,tail,lambda_eta,lambda_mu,max_disc\n", 0) == 0);
  CHECK(std::count(li.begin(), li.end(), '\n') == 11);
  const std::string k = coeffs_csv(c);
  CHECK(k.rfind("k,eta,mu,stieltjes,error_estimate\n", 0) == 0);
  CHECK(std::count(k.begin(), k.end(), '\n') == 22);
  CHECK(csv_row({1.0, 0.5}) == "1.0,0.5");
}

TEST_CASE("archive is content-addressed and append-only") {
  const auto dir = test::scratch_dir("archive");
  const auto p1 = archive_report(dir, "{}\n", "json");
  const auto p2 = archive_report(dir, "{}\n", "json");
  CHECK(p1 == p2);
  CHECK(p1.filename().string() == sha256_hex("{}\n") + ".json");
  const auto p3 = archive_report(dir, "[]\n", "json");
  CHECK(p3 != p1);
  std::ifstream in(p1);
  std::string text((std::istreambuf_iterator<char>(in)), {});
  CHECK(text == "{}\n");
  std::filesystem::remove_all(dir);
}

}  // TEST_SUITE
