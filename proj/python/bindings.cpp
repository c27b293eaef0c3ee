// Python bindings for the content engine: model/document parsing, binding,
// rendering, personalization, compression and schema emission.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <datetime.h>

#include <string>
#include <vector>

#include "ecm/collection.hpp"
#include "ecm/machine.hpp"
#include "ecm/model.hpp"
#include "ecm/personalization.hpp"
#include "ecm/schema.hpp"
#include "ecm/template.hpp"

namespace py = pybind11;
using namespace ecm;

namespace {

std::string join_diagnostics(const std::vector<Diagnostic>& diags) {
    std::string out;
    for (const auto& d : diags) {
        if (!out.empty()) out += "\n";
        out += render_diagnostic(d);
    }
    return out;
}

// Opaque carrier for values that have no natural Python shape (markup, uri,
// finite literals, injections).
struct ValueBox {
    Val value;
};

py::object val_to_py(const Val& v);

Val py_to_val(const py::handle& obj) {
    if (py::isinstance<ValueBox>(obj)) return obj.cast<ValueBox&>().value;
    if (py::isinstance<py::bool_>(obj)) return Val::boolean(obj.cast<bool>());
    if (py::isinstance<py::int_>(obj)) return Val::integer(obj.cast<std::int64_t>());
    if (py::isinstance<py::str>(obj)) return Val::text(obj.cast<std::string>());
    if (!PyDateTimeAPI) PyDateTime_IMPORT;
    if (PyDate_Check(obj.ptr()) && !PyDateTime_Check(obj.ptr())) {
        PyDateTime_Date* date = reinterpret_cast<PyDateTime_Date*>(obj.ptr());
        return Val::date(Date{PyDateTime_GET_YEAR(date), PyDateTime_GET_MONTH(date),
                              PyDateTime_GET_DAY(date)});
    }
    if (py::isinstance<py::tuple>(obj)) {
        std::vector<Val> items;
        for (const auto& item : obj.cast<py::tuple>()) items.push_back(py_to_val(item));
        return Val::tuple(std::move(items));
    }
    if (py::isinstance<py::list>(obj)) {
        std::vector<Val> items;
        for (const auto& item : obj.cast<py::list>()) items.push_back(py_to_val(item));
        return Val::seq(std::move(items));
    }
    throw py::type_error("cannot convert object to a content value");
}

py::object val_to_py(const Val& v) {
    switch (v.kind()) {
    case Val::Kind::Text:
        return py::cast(v.str());
    case Val::Kind::Int:
        return py::cast(v.as_int());
    case Val::Kind::Bool:
        return py::cast(v.as_bool());
    case Val::Kind::Date: {
        if (!PyDateTimeAPI) PyDateTime_IMPORT;
        const Date& d = v.as_date();
        return py::reinterpret_steal<py::object>(PyDate_FromDate(d.year, d.month, d.day));
    }
    case Val::Kind::Tuple: {
        py::tuple out(v.items().size());
        for (std::size_t i = 0; i < v.items().size(); ++i) out[i] = val_to_py(v.items()[i]);
        return out;
    }
    case Val::Kind::Seq: {
        py::list out;
        for (const auto& item : v.items()) out.append(val_to_py(item));
        return out;
    }
    default:
        return py::cast(ValueBox{v});
    }
}

Formula parse_predicate_or_throw(const std::string& text) {
    auto f = parse_predicate_text(text);
    if (!f.ok()) throw py::value_error(render_diagnostic(f.error()));
    return std::move(f.value());
}

std::vector<Individual> individuals_of(const py::list& values) {
    std::vector<Individual> out;
    for (const auto& item : values) out.emplace_back(py_to_val(item));
    return out;
}

RegistrationStatus status_of(const std::string& name) {
    auto s = parse_status(name);
    if (!s) throw py::value_error("unknown registration status '" + name + "'");
    return *s;
}

}  // namespace

PYBIND11_MODULE(_ecm, m) {
    m.doc() = "typed content models, machine-executed binding, page rendering";

    py::class_<ValueBox>(m, "Value")
        .def("__repr__", [](const ValueBox& b) { return render_literal(b.value); })
        .def("__str__", [](const ValueBox& b) { return render_literal(b.value); })
        .def("__eq__",
             [](const ValueBox& a, const py::object& other) {
                 try {
                     return value_eq(a.value, py_to_val(other));
                 } catch (const py::type_error&) {
                     return false;
                 }
             })
        .def_property_readonly("kind", [](const ValueBox& b) {
            switch (b.value.kind()) {
            case Val::Kind::Markup: return "markup";
            case Val::Kind::Uri: return "uri";
            case Val::Kind::Finite: return "finite";
            case Val::Kind::Inj: return "inj";
            default: return "value";
            }
        })
        .def_property_readonly("text", [](const ValueBox& b) {
            return b.value.kind() == Val::Kind::Inj ? render_literal(b.value) : b.value.str();
        });

    m.def("literal", [](const std::string& text) {
        auto v = parse_literal_text(text);
        if (!v.ok()) throw py::value_error(render_diagnostic(v.error()));
        return val_to_py(v.value());
    });

    py::class_<ModelFile>(m, "Model")
        .def_property_readonly("classes",
                               [](const ModelFile& m_) {
                                   std::vector<std::string> names;
                                   for (const auto& c : m_.classes) names.push_back(c.name);
                                   return names;
                               })
        .def_property_readonly("slot_count", &ModelFile::slot_count)
        .def_property_readonly("rule_count",
                               [](const ModelFile& m_) { return m_.rules.size(); })
        .def("min_status",
             [](const ModelFile& m_, const std::string& class_name) {
                 const ClassDef* cls = m_.find_class(class_name);
                 if (!cls) throw py::key_error("no class '" + class_name + "'");
                 return std::string(status_name(cls->min_status));
             })
        .def("__repr__", [](const ModelFile& m_) {
            return "<ecm.Model: " + std::to_string(m_.classes.size()) + " classes>";
        });

    py::class_<ContentDocument>(m, "Document")
        .def_readonly("object_name", &ContentDocument::object_name)
        .def_readonly("class_name", &ContentDocument::class_name);

    py::class_<DigitalObject>(m, "Object")
        .def_property_readonly("class_name", &DigitalObject::class_name)
        .def_property_readonly("object_name", &DigitalObject::object_name)
        .def("stage",
             [](const DigitalObject& d) { return std::string(stage_name(stage_of(d))); })
        .def("unbound", [](const DigitalObject& d) { return list_unbound(d); })
        .def("get",
             [](const DigitalObject& d, const std::string& slot) -> py::object {
                 const std::optional<Val>* b = d.binding(slot);
                 if (!b) throw py::key_error("no slot '" + slot + "'");
                 if (!b->has_value()) return py::none();
                 return val_to_py(**b);
             })
        .def("__repr__", [](const DigitalObject& d) {
            return "<ecm.Object " + d.class_name() + "/" + d.object_name() + " at stage " +
                   std::string(stage_name(stage_of(d))) + ">";
        });

    py::class_<PersonalizationContext>(m, "Context")
        .def_property_readonly("status", [](const PersonalizationContext& c) {
            return std::string(status_name(c.p));
        });

    m.def("parse_model", [](const std::string& text) {
        auto parsed = parse_model(text);
        if (!parsed.ok()) throw py::value_error(join_diagnostics(parsed.error()));
        return std::move(parsed.value());
    });

    m.def("parse_document", [](const std::string& text) {
        auto parsed = parse_document(text);
        if (!parsed.ok()) throw py::value_error(join_diagnostics(parsed.error()));
        return std::move(parsed.value());
    });

    m.def("parse_context", [](const std::string& text) {
        auto parsed = parse_context(text);
        if (!parsed.ok()) throw py::value_error(join_diagnostics(parsed.error()));
        return std::move(parsed.value());
    });

    m.def("bind", [](const ContentDocument& doc, const ModelFile& model) {
        auto bound = bind(doc, model);
        if (!bound.ok()) throw py::value_error(render_bind_error(bound.error()));
        return std::move(bound.value());
    });

    m.def("render_page", [](const DigitalObject& d, const ModelFile& model) {
        auto page = render(d, model);
        if (!page.ok()) throw py::value_error(render_render_error(page.error()));
        return page.value().markup;
    });

    m.def(
        "apply_rules",
        [](const DigitalObject& d, const ModelFile& model, const PersonalizationContext& ctx) {
            auto out = apply_functional(d, model.rules, ctx);
            return py::make_tuple(out.object, out.suppressed);
        },
        py::arg("object"), py::arg("model"), py::arg("context"));

    m.def("access_allowed",
          [](const PersonalizationContext& ctx, const std::string& required) {
              return access_allowed(ctx, status_of(required));
          });

    m.def("compress", [](const py::list& values, const std::string& predicate) {
        auto domain = individuals_of(values);
        auto out = compress(domain, parse_predicate_or_throw(predicate));
        if (!out.ok()) throw py::value_error(render_domain_error(out.error()));
        py::list result;
        for (const auto& elem : out.value()) result.append(val_to_py(std::get<Val>(elem)));
        return result;
    });

    m.def("individualize", [](const py::list& values, const std::string& predicate) {
        auto domain = individuals_of(values);
        auto out = individualize(domain, parse_predicate_or_throw(predicate));
        if (!out.ok()) throw py::value_error(render_domain_error(out.error()));
        return val_to_py(std::get<Val>(out.value()));
    });

    m.def("run_program", [](const std::string& text, const py::list& inputs) {
        auto program = parse_program(text);
        if (!program.ok()) throw py::value_error(join_diagnostics(program.error()));
        std::vector<Val> input;
        for (const auto& item : inputs) input.push_back(py_to_val(item));
        auto end = run(program.value(), std::move(input));
        if (!end.ok()) throw py::value_error(render_machine_error(end.error()));
        py::list output;
        for (const auto& v : end.value().output) output.append(val_to_py(v));
        return output;
    });

    m.def("trace_program", [](const std::string& text, const py::list& inputs) {
        auto program = parse_program(text);
        if (!program.ok()) throw py::value_error(join_diagnostics(program.error()));
        std::vector<Val> input;
        for (const auto& item : inputs) input.push_back(py_to_val(item));
        auto result = trace(program.value(), std::move(input));
        std::string out;
        for (const auto& entry : result.entries) out += render_trace_entry(entry) + "\n";
        if (result.error) out += render_machine_error(*result.error) + "\n";
        return out;
    });

    m.def("compile_schema_sql", [](const ModelFile& model) {
        auto rels = compile_schema(model);
        if (!rels.ok()) throw py::value_error(render_schema_error(rels.error()));
        auto meta = compile_meta(model);
        for (auto& rel : meta) rels.value().push_back(std::move(rel));
        return emit_ddl(rels.value());
    });

    m.attr("__version__") = "1.0.0";
}
