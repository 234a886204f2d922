#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "hessrank/classify.hpp"
#include "hessrank/cli.hpp"
#include "hessrank/diffcalc.hpp"
#include "hessrank/expression.hpp"

namespace py = pybind11;
using namespace hessrank;

namespace {

Rational to_rational(const py::handle& value) {
  Rational q(py::str(value).cast<std::string>());
  q.canonicalize();
  return q;
}

py::object to_fraction(const Rational& q) {
  return py::module_::import("fractions").attr("Fraction")(q.get_str());
}

Polynomial parse(const std::string& text, std::optional<std::size_t> vars) {
  ParseOptions opt;
  opt.x_count = vars;
  if (vars) opt.arity = *vars;
  return parse_polynomial(text, opt);
}

// Binary operations lift both operands to the larger arity.
std::pair<Polynomial, Polynomial> lifted(const Polynomial& a, const Polynomial& b) {
  const std::size_t n = std::max(a.arity(), b.arity());
  return {a.with_arity(n), b.with_arity(n)};
}

std::size_t main_or_all(const Polynomial& h, std::optional<std::size_t> main_count) {
  return main_count.value_or(h.arity());
}

}  // namespace

PYBIND11_MODULE(_hessrank, m) {
  m.doc() = "Hessian rank classification of polynomials";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);

  py::class_<Polynomial>(m, "Polynomial")
      .def(py::init(&parse), py::arg("text"), py::arg("vars") = py::none())
      .def_property_readonly("arity", &Polynomial::arity)
      .def_property_readonly("degree", &Polynomial::degree)
      .def("is_homogeneous", &Polynomial::is_homogeneous)
      .def("derivative", [](const Polynomial& p, std::size_t var) {
        if (var == 0 || var > p.arity()) throw py::index_error("variable index out of range");
        return p.derivative(var - 1);
      }, py::arg("var"))
      .def("evaluate", [](const Polynomial& p, const py::sequence& point) {
        if (point.size() != p.arity()) throw py::value_error("point length differs from the arity");
        std::vector<Rational> values;
        for (const auto& v : point) values.push_back(to_rational(v));
        return to_fraction(p.evaluate(values));
      }, py::arg("point"))
      .def("__add__", [](const Polynomial& a, const Polynomial& b) {
        auto [x, y] = lifted(a, b);
        return x + y;
      })
      .def("__sub__", [](const Polynomial& a, const Polynomial& b) {
        auto [x, y] = lifted(a, b);
        return x - y;
      })
      .def("__mul__", [](const Polynomial& a, const Polynomial& b) {
        auto [x, y] = lifted(a, b);
        return x * y;
      })
      .def("__neg__", [](const Polynomial& a) { return -a; })
      .def("__pow__", [](const Polynomial& a, unsigned e) { return a.pow(e); })
      .def("__eq__", [](const Polynomial& a, const Polynomial& b) {
        auto [x, y] = lifted(a, b);
        return x == y;
      })
      .def("__str__", [](const Polynomial& p) { return to_string(p); })
      .def("__repr__", [](const Polynomial& p) { return "Polynomial('" + to_string(p) + "')"; });

  m.def("hessian_rank", [](const Polynomial& h, std::optional<std::size_t> main_count) {
    return hessian_rank(h, main_or_all(h, main_count));
  }, py::arg("h"), py::arg("main_count") = py::none());

  m.def("rank_profile", [](const Polynomial& h, std::optional<std::size_t> main_count) {
    const RankProfile p = rank_profile(h, main_or_all(h, main_count));
    py::dict out;
    out["r"] = p.r_hessian;
    out["trdeg_K"] = p.trdeg_over_K;
    out["trdeg_L"] = p.trdeg_over_L;
    return out;
  }, py::arg("h"), py::arg("main_count") = py::none());

  m.def("run", [](const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code = 0;
    {
      py::gil_scoped_release release;
      code = cli::run(args, out, err);
    }
    return py::make_tuple(code, out.str(), err.str());
  }, py::arg("args"), "Runs the command line; returns (exit code, stdout, stderr).");
}
