#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "efl/arith.hpp"
#include "efl/cli.hpp"
#include "efl/errors.hpp"
#include "efl/explicit_formula.hpp"
#include "efl/laurent.hpp"
#include "efl/li_weil.hpp"
#include "efl/report.hpp"
#include "efl/testfn.hpp"
#include "efl/zeros.hpp"
#include "efl/zeta.hpp"

namespace py = pybind11;
using namespace efl;

namespace {

ZeroSet zero_set_from(std::vector<double> ordinates) {
  ZeroSet zs;
  zs.ordinates = std::move(ordinates);
  zs.source = ZeroSource::file;
  zs.max_height = zs.ordinates.empty() ? 0.0 : zs.ordinates.back();
  zs.origin = "python";
  return zs;
}

}  // namespace

PYBIND11_MODULE(_efl, m) {
  m.doc() = "Explicit formulae, Li coefficients and the Weil form";

  static py::exception<efl::Error> error_type(m, "EflError", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const efl::Error& e) {
      py::object instance = py::reinterpret_borrow<py::object>(error_type.ptr())(e.what());
      instance.attr("kind") = std::string(to_string(e.kind()));
      PyErr_SetObject(error_type.ptr(), instance.ptr());
    }
  });

  m.def("zeta", [](Complex s) { return zeta(s); }, py::arg("s"));
  m.def("neg_zeta_log_deriv", [](Complex s) { return neg_zeta_log_deriv(s); }, py::arg("s"));
  m.def("xi", [](Complex s) { return xi(s); }, py::arg("s"));
  m.def(
      "derivatives_at", [](Complex s0, int k_max) { return derivatives_at(s0, k_max).coefficients; }, py::arg("s0"),
      py::arg("k_max"));

  py::class_<VonMangoldtTable>(m, "VonMangoldtTable")
      .def_property_readonly("limit", &VonMangoldtTable::limit)
      .def("psi", [](const VonMangoldtTable& t, double x) { return psi_arith(x, t); }, py::arg("x"));
  m.def("sieve", [](std::uint64_t n) { return sieve(n); }, py::arg("n"));
  m.def("stieltjes_partial", &stieltjes_partial, py::arg("k"), py::arg("x"));
  m.def("stieltjes_partial_corrected", &stieltjes_partial_corrected, py::arg("k"), py::arg("x"));

  py::class_<ZeroSet>(m, "ZeroSet")
      .def(py::init(&zero_set_from), py::arg("ordinates"))
      .def_readonly("ordinates", &ZeroSet::ordinates)
      .def_readonly("max_height", &ZeroSet::max_height)
      .def_property_readonly("source", [](const ZeroSet& z) { return std::string(to_string(z.source)); })
      .def("prefix", &ZeroSet::prefix, py::arg("n"))
      .def("validate", [](const ZeroSet& z) { validate_zero_set(z); })
      .def("summary_json", [](const ZeroSet& z) { return emit_json(zero_set_summary(z)); })
      .def("__len__", &ZeroSet::size);
  m.def("load_zeros", [](const std::filesystem::path& p) { return load_zeros(p); }, py::arg("path"));
  m.def("parse_zeros", [](const std::string& text) { return parse_zeros(text); }, py::arg("text"));
  m.def("find_zeros", [](int count) { return find_zeros(count); }, py::arg("count"));
  m.def("generate_zeros", [](std::size_t count) { return generate_zeros(count); }, py::arg("count"));
  m.def("count_estimate", &count_estimate, py::arg("t"));

  py::class_<TestFunction>(m, "TestFunction")
      .def_property_readonly("label", &TestFunction::label)
      .def("time", &TestFunction::time_eval, py::arg("t"))
      .def("transform", &TestFunction::transform_eval, py::arg("s"))
      .def("value_at_zero", &TestFunction::value_at_zero);
  m.def("poly_tf", &poly_tf, py::arg("k"));
  m.def("exp_tf", &exp_tf, py::arg("a"));
  m.def("laguerre_tf", &laguerre_tf, py::arg("n"));
  m.def("assoc_laguerre_tf", &assoc_laguerre_tf, py::arg("n"));
  m.def("involution", &involution, py::arg("g"));

  py::class_<LaurentCoefficients>(m, "LaurentCoefficients")
      .def_readonly("eta", &LaurentCoefficients::eta)
      .def_readonly("mu", &LaurentCoefficients::mu)
      .def_readonly("stieltjes", &LaurentCoefficients::stieltjes)
      .def("to_json", [](const LaurentCoefficients& c) { return emit_json(to_json(c)); });
  m.def("laurent_coefficients", [](int k) { return laurent_coefficients(k); }, py::arg("k"));

  m.def("li_eta", &li_eta, py::arg("n"), py::arg("coeffs"));
  m.def("li_mu", &li_mu, py::arg("n"), py::arg("coeffs"));
  m.def(
      "li_direct",
      [](int n, const ZeroSet& zs) {
        const LiDirect d = li_direct(n, zs);
        return py::make_tuple(d.value, d.tail);
      },
      py::arg("n"), py::arg("zeros"));
  m.def(
      "li_table_json", [](int n_max, const ZeroSet& zs, const LaurentCoefficients& c) {
        return emit_json(to_json(li_table(n_max, zs, c)));
      },
      py::arg("n_max"), py::arg("zeros"), py::arg("coeffs"));

  m.def(
      "psi_analytic_json", [](double x, const ZeroSet& zs) { return emit_json(to_json(psi_analytic(x, zs))); },
      py::arg("x"), py::arg("zeros"));
  m.def(
      "general_rhs_json",
      [](const TestFunction& g, Complex s, const ZeroSet& zs) { return emit_json(to_json(general_rhs(g, s, zs))); },
      py::arg("g"), py::arg("s"), py::arg("zeros"));
  m.def(
      "weil_form_json",
      [](const TestFunction& g, const ZeroSet& zs, const LaurentCoefficients& c) {
        return emit_json(to_json(weil_form(g, zs, c)));
      },
      py::arg("g"), py::arg("zeros"), py::arg("coeffs"));

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int code = run(args, environment_snapshot(), out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"));
}
