// Python bindings. Rationals cross the boundary as fractions.Fraction;
// polynomials as text in the structure-file syntax.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "cli.hpp"
#include "poislin/error.hpp"
#include "poislin/liealg.hpp"
#include "poislin/linearizer.hpp"
#include "poislin/linsolve.hpp"
#include "poislin/poisson_file.hpp"
#include "poislin/ranklocus.hpp"

namespace py = pybind11;
using namespace poislin;

namespace {

py::object to_fraction(const Rational& r) {
    static py::object fraction = py::module_::import("fractions").attr("Fraction");
    return fraction(to_string(r));
}

// Accepts int, str or Fraction.
Rational from_python(const py::handle& h) { return parse_rational(py::str(h).cast<std::string>()); }

std::vector<Rational> rationals(const py::sequence& seq) {
    std::vector<Rational> out;
    for (auto item : seq) out.push_back(from_python(item));
    return out;
}

RationalMatrix matrix(const py::sequence& rows) {
    RationalMatrix m;
    for (auto row : rows) m.push_back(rationals(row.cast<py::sequence>()));
    for (const auto& r : m)
        if (r.size() != m.size()) throw DimensionError("matrix must be square");
    return m;
}

/// A bivector field on named coordinates.
struct Structure {
    PolyVector pi;

    std::vector<std::string> x_names() const {
        const auto& c = *pi.coords();
        return {c.names().begin(), c.names().begin() + static_cast<std::ptrdiff_t>(c.x_count())};
    }
    std::vector<std::string> y_names() const {
        const auto& c = *pi.coords();
        return {c.names().begin() + static_cast<std::ptrdiff_t>(c.x_count()), c.names().end()};
    }
    std::string bracket(const std::string& a, const std::string& b) const {
        const auto& c = *pi.coords();
        auto i = c.find(a), j = c.find(b);
        if (!i || !j) throw PreconditionError("unknown coordinate '" + (i ? b : a) + "'");
        if (*i == *j) return "0";
        return pi.component({*i, *j}).to_string();
    }
    py::dict brackets() const {
        py::dict out;
        const auto& c = *pi.coords();
        for (const auto& [blade, coef] : pi.components()) {
            auto idx = blade_indices(blade);
            out[py::make_tuple(c.name(idx[0]), c.name(idx[1]))] = coef.to_string();
        }
        return out;
    }
    std::size_t jacobi_residual_terms() const {
        std::size_t n = 0;
        for (const auto& [blade, coef] : schouten(pi, pi).components()) n += coef.terms().size();
        return n;
    }
};

py::dict linearize_dict(const Structure& s, std::size_t n, unsigned degree) {
    const auto res = linearize(s.pi, n, degree);
    py::dict d;
    d["verified"] = res.verified();
    d["coordinate_change"] = res.psi.to_string();
    d["inverse"] = res.psi_inverse.to_string();
    d["semi_linear"] = Structure{res.semi.pi};
    d["tail"] = res.tail.to_string();
    d["residual_terms"] = res.residual_terms;
    d["report"] = res.report();
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Exact formal linearization of Poisson structures with aff(n) linear part";

    auto base = py::register_exception<Error>(m, "Error");
    py::register_exception<ParseError>(m, "ParseError", base);
    py::register_exception<DimensionError>(m, "DimensionError", base);
    py::register_exception<PreconditionError>(m, "PreconditionError", base);
    py::register_exception<TailSpanError>(m, "TailSpanError", base);
    py::register_exception<InternalError>(m, "InternalError", base);

    py::class_<Structure>(m, "Structure")
        .def_static("parse", [](const std::string& text) { return Structure{parse_poisson_file(text)}; },
                    py::arg("text"))
        .def_static("read", [](const std::string& path) { return Structure{read_poisson_file(path)}; }, py::arg("path"))
        .def_static("linear", [](const std::string& id) {
            return Structure{standard_linear_poisson(LieAlgebraSpec::make(AlgebraId::parse(id)))};
        }, py::arg("algebra"), "Linear structure of gl:<n>, sl:<n>, aff:<n>, saff2 or e3.")
        .def_static("counterexample", [](const std::string& id) {
            return Structure{counterexample_structure(AlgebraId::parse(id).kind)};
        }, py::arg("id"))
        .def("to_text", [](const Structure& s) { return serialize_poisson_file(s.pi); })
        .def_property_readonly("x_names", &Structure::x_names)
        .def_property_readonly("y_names", &Structure::y_names)
        .def_property_readonly("dimension", [](const Structure& s) { return s.pi.coords()->size(); })
        .def_property_readonly("degree", [](const Structure& s) { return s.pi.degree(); })
        .def("bracket", &Structure::bracket, py::arg("a"), py::arg("b"))
        .def("brackets", &Structure::brackets)
        .def("jacobi_residual_terms", &Structure::jacobi_residual_terms)
        .def("is_poisson", [](const Structure& s) { return s.jacobi_residual_terms() == 0; })
        .def("rank_at", [](const Structure& s, const py::sequence& point) {
            const auto p = rationals(point);
            return rank_at_point(s.pi, p);
        }, py::arg("point"))
        .def("__eq__", [](const Structure& a, const Structure& b) {
            return serialize_poisson_file(a.pi) == serialize_poisson_file(b.pi);
        })
        .def("__repr__", [](const Structure& s) {
            return "<Structure on " + std::to_string(s.pi.coords()->size()) + " coordinates, " +
                   std::to_string(s.pi.components().size()) + " nonzero brackets>";
        });

    m.def("linearize", &linearize_dict, py::arg("structure"), py::arg("n"), py::arg("degree") = kDefaultDegree,
          "Runs the linearization pipeline; returns a dict with the coordinate change and report.");

    m.def("verify_counterexample", [](const std::string& id) {
        const auto r = verify_counterexample(AlgebraId::parse(id).kind);
        return py::make_tuple(r.passed(), r.to_string());
    }, py::arg("id"));

    m.def("pfaffian", [](const py::sequence& rows) { return to_fraction(pfaffian(matrix(rows))); }, py::arg("matrix"));
    m.def("determinant", [](const py::sequence& rows) { return to_fraction(determinant(matrix(rows))); },
          py::arg("matrix"));

    m.def("run", [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int code = cli::run(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
    }, py::arg("args"), "Runs a command-line invocation; returns (exit_code, stdout, stderr).");
}
