#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "ulcert/evaluate.hpp"
#include "ulcert/optimize.hpp"
#include "ulcert/productset.hpp"
#include "ulcert/ratcore.hpp"
#include "ulcert/zaremba.hpp"

namespace py = pybind11;

namespace {

using ulcert::Int;
using ulcert::Rat;

py::object py_int(const Int& a) {
  return py::reinterpret_steal<py::object>(
      PyLong_FromString(a.get_str().c_str(), nullptr, 10));
}

Int int_of(const py::object& o) { return Int(py::str(o).cast<std::string>()); }

}  // namespace

PYBIND11_MODULE(_ulcert, mod) {
  mod.doc() = "exact rational certification kernels";
  mod.attr("version") = "0.1.0";

  mod.def("cf_expand", [](const std::string& x) {
    ulcert::CFWord w = ulcert::cf_expand(ulcert::parse_rat(x));
    py::list qs;
    for (const Int& a : w.quotients) qs.append(py_int(a));
    return py::make_tuple(py_int(w.integer_part), qs);
  });

  mod.def("cf_value", [](const py::object& integer_part, const std::vector<py::object>& qs) {
    ulcert::CFWord w;
    w.integer_part = int_of(integer_part);
    for (const py::object& a : qs) w.quotients.push_back(int_of(a));
    w.canonical = w.quotients.empty() || w.quotients.back() >= 2;
    return ulcert::rat_str(ulcert::cf_value(w));
  });

  mod.def("convergents", [](const std::string& x) {
    py::list out;
    for (const auto& c : ulcert::convergents(ulcert::cf_expand(ulcert::parse_rat(x))))
      out.append(py::make_tuple(py_int(c.first), py_int(c.second)));
    return out;
  });

  mod.def("is_Fm",
          [](const std::string& x, long m) { return ulcert::is_Fm(ulcert::parse_rat(x), m); });

  mod.def("zaremba_numerators", [](const py::object& q, long m) {
    py::list out;
    for (const Int& u : ulcert::zaremba_numerators(int_of(q), m).numerators)
      out.append(py_int(u));
    return out;
  });

  mod.def("dmin", [](const std::vector<std::string>& xs, const py::object& Q) {
    std::vector<Rat> pts;
    pts.reserve(xs.size());
    for (const std::string& x : xs) pts.push_back(ulcert::parse_rat(x));
    return ulcert::rat_str(ulcert::dmin(pts, int_of(Q)));
  });

  mod.def("star_discrepancy", [](const std::vector<std::string>& xs) {
    std::vector<Rat> pts;
    pts.reserve(xs.size());
    for (const std::string& x : xs) pts.push_back(ulcert::parse_rat(x));
    return ulcert::rat_str(ulcert::star_discrepancy(pts));
  });

  mod.def("solve", [](long m) {
    ulcert::OptResult r = ulcert::solve(m);
    return py::dict(py::arg("m") = r.m, py::arg("d") = r.d_star.get_d(),
                    py::arg("beta") = r.beta_star.get_d(), py::arg("bound") = r.bound.get_d());
  });
}
