#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "dsonc/cli.hpp"
#include "dsonc/cones.hpp"
#include "dsonc/document.hpp"
#include "dsonc/error.hpp"
#include "dsonc/structure.hpp"

namespace py = pybind11;

namespace {

dsonc::CircuitFunction circuit_function(const std::string& text) {
  return dsonc::CircuitFunction::from_signomial(dsonc::parse_document(text).to_signomial());
}

}  // namespace

PYBIND11_MODULE(_dsonc, m) {
  m.doc() = "Native core of the dsonc package";

  static py::exception<dsonc::Error> error_type(m, "DsoncError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const dsonc::Error& e) {
      py::object exc = py::reinterpret_borrow<py::object>(error_type.ptr())(e.what());
      exc.attr("code") = std::string(dsonc::to_string(e.code()));
      PyErr_SetObject(error_type.ptr(), exc.ptr());
    }
  });

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        int code = 0;
        {
          py::gil_scoped_release release;
          code = dsonc::cli::run(args, out, err);
        }
        return std::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Run the command line front end in-process; returns (exit_code, stdout, stderr).");

  m.def(
      "circuit_numbers",
      [](const std::string& text) {
        const auto f = circuit_function(text);
        return std::make_pair(dsonc::circuit_number(f), dsonc::dual_circuit_number(f));
      },
      py::arg("document"), "Circuit number and dual circuit number of a circuit function document.");

  m.def(
      "check_circuit",
      [](const std::string& text, const std::string& cone) {
        const auto f = circuit_function(text);
        if (cone == "sonc") return std::string(dsonc::to_string(dsonc::is_sonc_circuit(f)));
        if (cone == "dsonc") return std::string(dsonc::to_string(dsonc::is_dsonc_circuit(f)));
        throw dsonc::Error(dsonc::ErrorCode::InvalidArgument, "cone must be 'sonc' or 'dsonc'");
      },
      py::arg("document"), py::arg("cone") = "dsonc");

  m.def(
      "equilibrium",
      [](const std::string& text) {
        const auto e = dsonc::equilibrium_point(circuit_function(text));
        return std::make_pair(e.point, e.common_log_value);
      },
      py::arg("document"));

  m.def(
      "normalize_document",
      [](const std::string& text) { return dsonc::dump_document(dsonc::parse_document(text)); },
      py::arg("document"));
}
