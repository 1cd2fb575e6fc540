#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cartan/io.hpp"

namespace py = pybind11;
using namespace cartan;

namespace {

io::Json parse(const std::string& text)
{
    try {
        return io::Json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(e.what());
    }
}

std::optional<Field> field_of(const std::optional<std::string>& field)
{
    if (!field) {
        return std::nullopt;
    }
    return io::parse_field(*field);
}

RealizeOptions options_of(const std::optional<std::string>& column_order)
{
    return column_order ? io::realize_options_from_json(parse(*column_order)) : RealizeOptions{};
}

std::string validate_json(const std::string& spec, const std::optional<std::string>& field)
{
    GradedAlgebraSpec s = io::spec_from_json(parse(spec), field_of(field));
    ValidationReport rep = validate(s);
    io::Json out{{"valid", rep.ok()}, {"witnesses", rep.witnesses}};
    if (rep.ok()) {
        out["depth"] = s.depth();
        out["dims"] = s.dims();
    }
    return out.dump();
}

std::string embed_json(const std::string& spec, const std::optional<std::string>& column_order,
                       const std::optional<std::string>& field)
{
    return io::realization_to_json(io::realization_from_json(parse(spec), field_of(field), options_of(column_order)))
        .dump();
}

std::string centralize_json(const std::string& spec, const std::optional<std::string>& column_order,
                            const std::optional<std::string>& field)
{
    Realization r = io::realization_from_json(parse(spec), field_of(field), options_of(column_order));
    return io::coframe_to_json(r, centralize(r)).dump();
}

std::string prolong_json(const std::string& spec, int max_degree, const std::optional<std::string>& partial,
                         bool cross_check, const std::optional<std::string>& column_order,
                         const std::optional<std::string>& field)
{
    Realization r = io::realization_from_json(parse(spec), field_of(field), options_of(column_order));
    if (max_degree < -r.spec.depth()) {
        throw ParseError("max_degree must be at least " + std::to_string(-r.spec.depth()));
    }
    Prolongation engine(r);
    if (!partial) {
        // the engine is not needed once the report is built
        py::gil_scoped_release release;
        return io::complete_to_json(engine, complete_prolong(engine, max_degree, cross_check)).dump();
    }
    BeginningPart bp = io::beginning_from_json(parse(*partial), engine);
    py::gil_scoped_release release;
    return io::partial_to_json(engine, reduce_defining_degree(engine, bp, {max_degree, cross_check})).dump();
}

} // namespace

PYBIND11_MODULE(_cartan, m)
{
    m.doc() = "Cartan prolongation engine (JSON interface)";

    // registration order matters: later translators are tried first
    auto base = py::register_exception<Error>(m, "CartanError");
    py::register_exception<ArithmeticError>(m, "CartanArithmeticError", base.ptr());
    py::register_exception<ParseError>(m, "SchemaError", base.ptr());
    py::register_exception<ValidationError>(m, "ValidationError", base.ptr());

    m.def("validate", &validate_json, py::arg("spec"), py::arg("field") = py::none());
    m.def("embed", &embed_json, py::arg("spec"), py::arg("column_order") = py::none(),
          py::arg("field") = py::none());
    m.def("centralize", &centralize_json, py::arg("spec"), py::arg("column_order") = py::none(),
          py::arg("field") = py::none());
    m.def("prolong", &prolong_json, py::arg("spec"), py::arg("max_degree") = 3, py::arg("partial") = py::none(),
          py::arg("cross_check") = true, py::arg("column_order") = py::none(), py::arg("field") = py::none());
}
