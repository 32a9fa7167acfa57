#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "diolic/complexes.hpp"
#include "diolic/error.hpp"
#include "diolic/problem.hpp"
#include "diolic/symbols.hpp"
#include "diolic/text.hpp"

namespace py = pybind11;
using namespace diolic;

namespace {

// Reports cross the boundary as JSON text; the python side decodes them.
std::string check_text(const std::string& text, const std::string& max_dim) {
    return check_problem(parse_problem(text), parse_limits(max_dim)).dump();
}

std::string bracket_text(const std::string& kind, const std::string& left, const std::string& right,
                         std::optional<std::size_t> n) {
    auto operand = [&](const std::string& s) { return kind == "symbol" ? Json(s) : Json::parse(s); };
    return bracket_report(kind, operand(left), operand(right), n).dump();
}

}  // namespace

PYBIND11_MODULE(_diolic, m) {
    m.doc() = "Exact calculus on diolic algebras";

    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<ResourceError>(m, "ResourceError", PyExc_RuntimeError);
    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<DimensionError>(m, "DimensionError", PyExc_ValueError);
    py::register_exception<InternalError>(m, "InternalError", PyExc_RuntimeError);

    py::class_<Poly>(m, "Poly")
        .def(py::init([](const std::string& text, std::size_t n) { return parse_poly(text, n); }),
             py::arg("text"), py::arg("n"))
        .def_property_readonly("nvars", &Poly::nvars)
        .def_property_readonly("degree", &Poly::degree)
        .def("is_zero", &Poly::is_zero)
        .def("partial", [](const Poly& p, std::size_t i) {
            if (i < 1 || i > p.nvars()) throw DimensionError("variable index out of range");
            return partial(p, i - 1);
        })
        .def(py::self + py::self)
        .def(py::self - py::self)
        .def(py::self * py::self)
        .def(py::self == py::self)
        .def("__str__", [](const Poly& p) { return format_poly(p); })
        .def("__repr__", [](const Poly& p) { return "Poly('" + format_poly(p) + "', " + std::to_string(p.nvars()) + ")"; });

    m.def("poisson_bracket", [](const std::string& s, const std::string& t, std::size_t n) {
        return format_symbol(poisson_bracket(parse_symbol(s, n), parse_symbol(t, n)));
    }, py::arg("s"), py::arg("t"), py::arg("n"), "Canonical bracket of two symbols in x1.., k1..");
    m.def("star", [](const std::string& s, const std::string& t, std::size_t n) {
        return format_symbol(star(parse_symbol(s, n), parse_symbol(t, n)));
    }, py::arg("s"), py::arg("t"), py::arg("n"));

    m.def("_check", &check_text, py::arg("text"), py::arg("max_dim") = "");
    m.def("_bracket", &bracket_text, py::arg("kind"), py::arg("left"), py::arg("right"), py::arg("n") = py::none());
    m.def("_der_cohomology", [](std::size_t n, std::size_t mm, std::size_t D) {
        return der_cohomology_report(n, mm, D).dump();
    });
    m.def("_ce_cohomology", [](const std::string& text) { return ce_report(parse_problem(text)).dump(); });
    m.def("normalize_problem", [](const std::string& text) { return print_problem(parse_problem(text)); },
          "Canonical text of a problem file");
    m.attr("__version__") = DIOLIC_VERSION;
    m.attr("engine_version") = engine_version();
}
