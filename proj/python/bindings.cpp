#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "freemeixner/config.hpp"
#include "freemeixner/fock.hpp"
#include "freemeixner/meixner1d.hpp"
#include "freemeixner/partitions.hpp"
#include "freemeixner/runner.hpp"
#include "freemeixner/symbolic.hpp"

namespace py = pybind11;
using namespace freemeixner;

namespace {

// Rationals cross the boundary as "p/q" strings; the Python layer wraps them in Fraction.
JacobiParams params(const std::string& lambda, const std::string& eta, const std::string& k) {
  return JacobiParams(parse_rational(lambda), parse_rational(eta), parse_rational(k));
}

std::vector<std::string> strings(const std::vector<Rational>& qs) {
  std::vector<std::string> out;
  for (const auto& q : qs) out.push_back(to_string(q));
  return out;
}

std::vector<std::vector<std::vector<int>>> blocks_of(const std::vector<SetPartition>& ps) {
  std::vector<std::vector<std::vector<int>>> out;
  for (const auto& p : ps) out.push_back(p.blocks());
  return out;
}

RunConfig config_from(const std::string& text) { return parse_config(nlohmann::json::parse(text)); }

py::dict report_dict(const VerificationReport& r) {
  py::dict d;
  d["check"] = r.check;
  d["passed"] = r.passed;
  d["cases"] = r.cases;
  d["measured"] = r.measured;
  d["bound"] = r.bound;
  d["counterexample"] = r.counterexample ? py::object(py::str(*r.counterexample)) : py::object(py::none());
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact and numeric checks for free Meixner generating functions";

  // Translators are tried newest first, so the base class goes in first.
  py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<CapacityError>(m, "CapacityError", PyExc_RuntimeError);
  py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);

  m.attr("__version__") = kArtifactVersion;
  m.attr("SUITES") = suite_names();

  m.def("enumerate_nc", [](int n) { return blocks_of(enumerate_nc(n)); }, py::arg("n"));
  m.def("enumerate_nc_min2", [](int n) { return blocks_of(enumerate_nc_min2(n)); }, py::arg("n"));

  m.def(
      "meixner_poly",
      [](std::size_t n, const std::string& lambda, const std::string& eta, const std::string& k) {
        return strings(meixner_poly(n, params(lambda, eta, k)).coeffs());
      },
      py::arg("n"), py::arg("lam"), py::arg("eta"), py::arg("k"));
  m.def(
      "genfun_1d_coefficient",
      [](std::size_t n, const std::string& lambda, const std::string& eta, const std::string& k) {
        return strings(genfun_1d_coefficient(n, params(lambda, eta, k)).coeffs());
      },
      py::arg("n"), py::arg("lam"), py::arg("eta"), py::arg("k"));
  m.def(
      "vacuum_moment",
      [](std::size_t n, const std::string& lambda, const std::string& eta, const std::string& k) {
        return to_string(vacuum_moment(n, params(lambda, eta, k)));
      },
      py::arg("n"), py::arg("lam"), py::arg("eta"), py::arg("k"));
  m.def(
      "free_cumulants",
      [](std::size_t order, const std::string& lambda, const std::string& eta, const std::string& k) {
        return strings(free_cumulants(params(lambda, eta, k), order));
      },
      py::arg("order"), py::arg("lam"), py::arg("eta"), py::arg("k"));
  m.def(
      "moment_from_cumulants",
      [](const std::vector<std::string>& kappa, int n) {
        std::vector<Rational> qs;
        for (const auto& s : kappa) qs.push_back(parse_rational(s));
        return to_string(moment_from_cumulants(qs, n));
      },
      py::arg("cumulants"), py::arg("n"));

  m.def("fock_dimension", &fock_dimension, py::arg("cells"), py::arg("depth"));

  m.def("demo_config", [] { return config_to_json(demo_config()).dump(); });
  m.def("validate_config", [](const std::string& text) { return config_to_json(config_from(text)).dump(); },
        py::arg("config_json"));
  m.def(
      "run",
      [](const std::string& text, bool parallel) {
        const RunConfig c = config_from(text);
        RunReport r;
        {
          py::gil_scoped_release release;
          r = run(c, {.parallel = parallel});
        }
        return report_to_json(r).dump();
      },
      py::arg("config_json"), py::arg("parallel") = true);
  m.def(
      "run_suite",
      [](const std::string& suite, const std::string& text) {
        const RunConfig c = config_from(text);
        SuiteResult s;
        {
          py::gil_scoped_release release;
          s = run_suite(suite, c);
        }
        py::dict d;
        d["name"] = s.name;
        d["status"] = status_name(s.status);
        d["reason"] = s.reason ? py::object(py::str(*s.reason)) : py::object(py::none());
        py::list checks;
        for (const auto& r : s.checks) checks.append(report_dict(r));
        d["checks"] = checks;
        return d;
      },
      py::arg("suite"), py::arg("config_json"));
}
