#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "efl/explicit_formula.hpp"
#include "efl/laurent.hpp"
#include "efl/li_weil.hpp"
#include "efl/zeros.hpp"

namespace efl {

using Json = nlohmann::ordered_json;

// 17 significant digits; integral values keep a ".0" so they stay floats.
std::string format_number(double v);

// Deterministic serialization: insertion-ordered keys, format_number floats.
std::string emit_json(const Json& j);

Json complex_json(Complex z);
Json to_json(const ExplicitFormulaReport& r);
Json to_json(const LaurentCoefficients& c);
Json to_json(const WeilFormReport& w);
Json to_json(const ZeroPowerSum& z);
Json to_json(const std::vector<LiRow>& rows);
// Zero-set provenance block (no ordinates).
Json zero_set_summary(const ZeroSet& zs);

// CSV writers; header lines are part of the schema.
inline constexpr std::string_view kLiCsvHeader = "n,lambda_direct,tail,lambda_eta,lambda_mu,max_disc";
inline constexpr std::string_view kCoeffsCsvHeader = "k,eta,mu,stieltjes,error_estimate";
std::string li_csv(const std::vector<LiRow>& rows);
std::string coeffs_csv(const LaurentCoefficients& c);
std::string csv_row(const std::vector<double>& values);

// Stores bytes under dir/<sha256>.<ext> if absent; returns the path.
std::filesystem::path archive_report(const std::filesystem::path& dir, std::string_view bytes, std::string_view ext);

}  // namespace efl
