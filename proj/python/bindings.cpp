// Python module: thin wrappers returning JSON text, decoded by the package.

#include <pybind11/pybind11.h>

#include "confext/catalog.hpp"
#include "confext/errors.hpp"
#include "confext/report.hpp"

namespace py = pybind11;
using namespace confext;

namespace {

std::string ext_json(const std::string& alg, const std::string& sub, const std::string& quot, int dpart, int dlam,
                     bool probe) {
  ConfAlgebra a = parse_algebra(alg);
  ExtProblem p{a, parse_descriptor(sub, a), parse_descriptor(quot, a), DegreeBounds{dpart, dlam}};
  p.validate();
  ExtOptions o;
  o.detect_unbounded = probe;
  py::gil_scoped_release release;
  return ext_result_json(solve_ext(p, o));
}

std::string classify_json_range(int lo, int hi, long sqrt_d) {
  py::gil_scoped_release release;
  return classify_json(classify_range(lo, hi, sqrt_d));
}

std::string table_json(int section) {
  if (section < 2 || section > 5) throw OutOfRange("section must be 2, 3, 4 or 5");
  py::gil_scoped_release release;
  return run_section(section).json();
}

}  // namespace

PYBIND11_MODULE(_confext, m) {
  m.doc() = "Exact Ext^1 computations for conformal modules";
  py::register_exception<Error>(m, "ConfextError", PyExc_ValueError);
  m.def("ext_json", &ext_json, py::arg("alg"), py::arg("sub"), py::arg("quot"), py::arg("dpart") = 8,
        py::arg("dlam") = 8, py::arg("probe") = true);
  m.def("classify_json", &classify_json_range, py::arg("lo"), py::arg("hi"), py::arg("sqrt") = 0);
  m.def("table_json", &table_json, py::arg("section"));
  m.def("recursion_coeff", [](int n, const std::string& x, int k, const std::string& a2, const std::string& a3) {
    return recursion_coeff(n, Scalar::parse(x), k, Scalar::parse(a2), Scalar::parse(a3)).str();
  });
  m.attr("degree_bound_caveat") = kDegreeBoundCaveat;
}
