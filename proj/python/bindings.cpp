#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "orlicz/analysis.hpp"
#include "orlicz/config.hpp"
#include "orlicz/envelope.hpp"
#include "orlicz/errors.hpp"
#include "orlicz/ext_real.hpp"
#include "orlicz/grid.hpp"
#include "orlicz/oracle.hpp"
#include "orlicz/phi_function.hpp"

namespace py = pybind11;
using namespace orlicz;

namespace {

double to_float(const ExtReal& v) {
  return v.is_infinite() ? std::numeric_limits<double>::infinity() : v.value();
}

ExtReal from_float(double v) {
  return std::isinf(v) ? ExtReal::infinity() : ExtReal(v);
}

std::vector<ExtReal> lift(const std::vector<double>& vals) {
  std::vector<ExtReal> out;
  out.reserve(vals.size());
  for (double v : vals) out.push_back(from_float(v));
  return out;
}

py::dict run_result(const RunResult& r) {
  py::dict d;
  d["exit_code"] = r.exit_code;
  d["verdict"] = r.verdict_line;
  d["report"] = r.report;
  d["csv"] = r.csv;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Numerical checks for anisotropic generalized Orlicz integrands";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);

  py::class_<PhiFunction>(m, "Phi", "An x-independent integrand xi -> [0, inf]")
      .def_static("power", &PhiFunction::power, py::arg("m"), py::arg("p"),
                  "|xi|^p on R^m")
      .def_static("double_phase", &PhiFunction::double_phase, py::arg("m"), py::arg("p"),
                  py::arg("q"), py::arg("a"), "|xi|^p + a |xi|^q")
      .def_static("indicator", &PhiFunction::linf_indicator, py::arg("m"), py::arg("r"),
                  "0 on the unit ball of the r-quasinorm, inf outside")
      .def_static("diag_quadratic", &PhiFunction::diag_quadratic, py::arg("weights"),
                  "sum_i w_i xi_i^2")
      .def_static("min_of", &PhiFunction::min_of, py::arg("parts"),
                  "pointwise minimum of the given integrands")
      .def_static("scaled", &PhiFunction::scaled, py::arg("inner"), py::arg("beta"),
                  "xi -> inner(beta xi)")
      .def_property_readonly("dim", &PhiFunction::dim)
      .def_property_readonly("convex", &PhiFunction::convex)
      .def("__call__",
           [](const PhiFunction& phi, const Vec& xi) { return to_float(phi(xi)); },
           py::arg("xi"), "evaluate; returns math.inf outside the effective domain");

  py::class_<GridEnvelope>(m, "Envelope",
                           "Greatest convex minorant of sampled values on a grid")
      .def(py::init([](const std::vector<Vec>& points, const std::vector<double>& values) {
             return GridEnvelope(GridFunction::from_points(points, lift(values)));
           }),
           py::arg("points"), py::arg("values"))
      .def("values",
           [](const GridEnvelope& e) {
             std::vector<double> out;
             out.reserve(e.values().size());
             for (const ExtReal& v : e.values()) out.push_back(to_float(v));
             return out;
           },
           "minorant values at the input points, in input order")
      .def("eval", [](const GridEnvelope& e, const Vec& xi) { return to_float(e.eval(xi)); },
           py::arg("xi"))
      .def("slack_at", &GridEnvelope::slack_at, py::arg("xi"))
      .def_property_readonly("max_slack", &GridEnvelope::max_slack)
      .def_property_readonly("note", &GridEnvelope::note);

  m.def("almost_convex_bruteforce",
        [](const PhiFunction& phi, const std::vector<Vec>& points,
           const std::vector<double>& alphas, double beta, double tol) {
          BruteResult r = almost_convex_bruteforce(phi, points, alphas, beta, tol);
          py::dict d;
          d["pass"] = r.pass;
          if (!r.pass) {
            d["xi"] = r.worst.xi;
            d["xi2"] = r.worst.xi2;
            d["alpha"] = r.worst.alpha;
            d["lhs"] = r.worst.lhs;
            d["rhs"] = r.worst.rhs;
            d["violation"] = r.worst.violation;
          }
          return d;
        },
        py::arg("phi"), py::arg("points"), py::arg("alphas"), py::arg("beta"),
        py::arg("tol") = 1e-9,
        "scan phi(beta mix) <= mixed values over all point pairs; dict with the "
        "worst witness on failure");

  m.def("run",
        [](const std::string& command, const std::string& config_text) {
          AnalysisConfig cfg = parse_config_text(config_text);
          RunResult r;
          if (command == "envelope") r = run_envelope(cfg);
          else if (command == "chain") r = run_chain(cfg);
          else if (command == "jensen") r = run_jensen(cfg);
          else if (command == "norm") r = run_norm(cfg);
          else r = run_check(cfg, command);
          return run_result(r);
        },
        py::arg("command"), py::arg("config_text"),
        "run one analysis (a0, inc1, almost-convex, equiv-conv, a1, m, "
        "azero-reduction, strong-phi, envelope, chain, jensen, norm) on a config "
        "text; returns exit_code / verdict / report / csv");

  m.def("canonical_config",
        [](const std::string& config_text) {
          return serialize_config(parse_config_text(config_text));
        },
        py::arg("config_text"), "parse and re-serialize a config to its fixed point");

  m.attr("__version__") = "0.1.0";
}
