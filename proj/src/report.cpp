#include "efl/report.hpp"

#include <cmath>
#include <fstream>

#include <fmt/format.h>

#include "efl/errors.hpp"

namespace efl {
namespace {

void emit(const Json& j, std::string& out, int depth) {
  const std::string pad(static_cast<std::size_t>(2 * (depth + 1)), ' ');
  const std::string close_pad(static_cast<std::size_t>(2 * depth), ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (const auto& [key, value] : j.items()) {
        if (!first) out += ",\n";
        first = false;
        out += pad;
        out += Json(key).dump();
        out += ": ";
        emit(value, out, depth + 1);
      }
      out += "\n" + close_pad + "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ",\n";
        out += pad;
        emit(j[i], out, depth + 1);
      }
      out += "\n" + close_pad + "]";
      return;
    }
    case Json::value_t::number_float: out += format_number(j.get<double>()); return;
    default: out += j.dump(); return;
  }
}

Json signs_json(const TermSigns& s) {
  return Json{{"pole_term", s.pole},
              {"trivial_zero_sum", s.trivial},
              {"nontrivial_zero_sum", s.nontrivial},
              {"atom_term", s.atom},
              {"expectation_term", s.expectation}};
}

}  // namespace

std::string format_number(double v) {
  if (!std::isfinite(v)) return "null";
  std::string s = fmt::format("{:.17g}", v);
  if (s.find_first_of(".eE") == std::string::npos) s += ".0";
  return s;
}

std::string emit_json(const Json& j) {
  std::string out;
  emit(j, out, 0);
  out += "\n";
  return out;
}

Json complex_json(Complex z) { return Json{{"re", z.real()}, {"im", z.imag()}}; }

Json zero_set_summary(const ZeroSet& zs) {
  return Json{{"count", zs.size()},
              {"source", std::string(to_string(zs.source))},
              {"origin", zs.origin},
              {"max_height", zs.max_height},
              {"on_critical_line", zs.on_critical_line}};
}

Json to_json(const ExplicitFormulaReport& r) {
  Json j;
  j["kind"] = std::string(to_string(r.kind));
  j["test_function"] = r.test_function;
  if (r.kind == ReportKind::psi) {
    j["x"] = r.x;
  } else {
    j["s"] = complex_json(r.s);
  }
  j["pole_term"] = complex_json(r.pole_term);
  j["trivial_zero_sum"] = complex_json(r.trivial_zero_sum);
  j["nontrivial_zero_sum"] = complex_json(r.nontrivial_zero_sum);
  j["atom_term"] = complex_json(r.atom_term);
  j["expectation_term"] = complex_json(r.expectation_term);
  j["signs"] = signs_json(r.signs);
  j["total"] = complex_json(r.total);
  if (r.direct_zero_sum) {
    j["direct_zero_sum"] = complex_json(*r.direct_zero_sum);
    j["difference"] = complex_json(r.difference);
  }
  j["truncation"] = Json{{"trivial_cutoff", r.trivial_cutoff},
                         {"trivial_paired_with_atom", r.trivial_paired_with_atom},
                         {"trivial_tail", complex_json(r.trivial_tail)},
                         {"zero_count", r.zero_count},
                         {"truncation_height", r.truncation_height},
                         {"zero_tail_estimate", complex_json(r.zero_tail_estimate)},
                         {"zero_tail_included", r.zero_tail_included}};
  Json notes = Json::array();
  for (const auto& n : r.assumptions.notes) notes.push_back(n);
  j["assumptions"] = Json{{"on_critical_line", r.assumptions.on_critical_line},
                          {"regularized", r.assumptions.regularized},
                          {"expectation_formal_divergent", r.assumptions.expectation_formal_divergent},
                          {"expectation_route", r.assumptions.expectation_route},
                          {"zero_order", r.assumptions.zero_order},
                          {"notes", notes}};
  return j;
}

Json to_json(const LaurentCoefficients& c) {
  Json rows = Json::array();
  for (int k = 0; k <= c.order; ++k) {
    rows.push_back(Json{{"k", k},
                        {"eta", c.eta[k]},
                        {"mu", c.mu[k]},
                        {"stieltjes", c.stieltjes[k]},
                        {"eta_error", c.eta_error[k]},
                        {"mu_error", c.mu_error[k]},
                        {"stieltjes_error", c.stieltjes_error[k]}});
  }
  return Json{{"order", c.order},
              {"mu0", c.mu[0]},
              {"mu0_text_convention", c.mu0_text_convention},
              {"contour", Json{{"eta_radius", c.eta_radius},
                               {"mu_radius", c.mu_radius},
                               {"stieltjes_radius", c.stieltjes_radius},
                               {"points", c.contour_points}}},
              {"coefficients", rows}};
}

Json to_json(const WeilFormReport& w) {
  Json j;
  j["test_function"] = w.test_function;
  j["lhs_truncated"] = w.lhs_truncated;
  j["lhs_tail"] = w.lhs_tail;
  j["lhs_zero_sum"] = w.lhs_zero_sum;
  Json partial = Json::array();
  for (std::size_t i = 0; i < w.partial_sums.size(); ++i) {
    partial.push_back(Json{{"zeros", w.checkpoint_counts[i]}, {"sum", w.partial_sums[i]}});
  }
  j["partial_sums"] = partial;
  j["partial_sums_monotone"] = w.partial_sums_monotone;
  j["rhs"] = Json{{"route", w.rhs.route},
                  {"pole_product", w.rhs.pole_product},
                  {"trivial_sum", w.rhs.trivial_sum},
                  {"expectation", w.rhs.expectation},
                  {"total", w.rhs.total}};
  if (w.rhs_sum_prod) j["rhs_sum_prod"] = *w.rhs_sum_prod;
  if (w.li_identity_residual) j["li_identity_residual"] = *w.li_identity_residual;
  j["zero_count"] = w.zero_count;
  j["truncation_height"] = w.truncation_height;
  j["on_critical_line"] = w.on_critical_line;
  return j;
}

Json to_json(const ZeroPowerSum& z) {
  return Json{{"k", z.k}, {"eta_route", z.eta_route}, {"mu_route", z.mu_route}, {"difference", z.difference}};
}

Json to_json(const std::vector<LiRow>& rows) {
  Json arr = Json::array();
  for (const auto& r : rows) {
    arr.push_back(Json{{"n", r.n},
                       {"lambda_direct", r.lambda_direct},
                       {"tail", r.tail},
                       {"lambda_eta", r.lambda_eta},
                       {"lambda_mu", r.lambda_mu},
                       {"max_disc", r.max_disc}});
  }
  return arr;
}

std::string csv_row(const std::vector<double>& values) {
  std::string line;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) line += ',';
    line += format_number(values[i]);
  }
  return line;
}

std::string li_csv(const std::vector<LiRow>& rows) {
  std::string out(kLiCsvHeader);
  out += '\n';
  for (const auto& r : rows) {
    out += fmt::format("{},", r.n);
    out += csv_row({r.lambda_direct, r.tail, r.lambda_eta, r.lambda_mu, r.max_disc});
    out += '\n';
  }
  return out;
}

std::string coeffs_csv(const LaurentCoefficients& c) {
  std::string out(kCoeffsCsvHeader);
  out += '\n';
  for (int k = 0; k <= c.order; ++k) {
    out += fmt::format("{},", k);
    out += csv_row({c.eta[k], c.mu[k], c.stieltjes[k], c.error_estimate(k)});
    out += '\n';
  }
  return out;
}

std::filesystem::path archive_report(const std::filesystem::path& dir, std::string_view bytes, std::string_view ext) {
  std::filesystem::create_directories(dir);
  const auto path = dir / fmt::format("{}.{}", sha256_hex(bytes), ext);
  if (std::filesystem::exists(path)) return path;
  const auto tmp = dir / fmt::format(".{}.{}.tmp", sha256_hex(bytes), ext);
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrorKind::IoError, fmt::format("cannot write {}", tmp.string()));
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  }
  std::filesystem::rename(tmp, path);
  return path;
}

}  // namespace efl
