#include "ecm/template.hpp"

namespace ecm {

std::string render_compile_error(const CompileError& e) {
    switch (e.kind) {
    case CompileError::Kind::UnknownClass: return "UnknownClass(" + e.detail + ")";
    case CompileError::Kind::UnknownSlot: return "UnknownSlot(" + e.detail + ")";
    }
    return "?";
}

std::string render_bind_error(const BindError& e) {
    if (const auto* ce = std::get_if<CompileError>(&e)) return render_compile_error(*ce);
    return render_machine_error(std::get<MachineError>(e));
}

std::string render_render_error(const RenderError& e) {
    if (const auto* ce = std::get_if<CompileError>(&e)) return render_compile_error(*ce);
    const auto& u = std::get<UnboundSlots>(e);
    std::string out = "UnboundSlots([";
    for (std::size_t i = 0; i < u.slots.size(); ++i) {
        if (i) out += ", ";
        out += u.slots[i];
    }
    return out + "])";
}

Result<Program, CompileError> compile_binding_program(const ContentDocument& doc,
                                                      const ModelFile& model) {
    const ClassDef* cls = model.find_class(doc.class_name);
    if (!cls) return CompileError{CompileError::Kind::UnknownClass, doc.class_name};

    Program p;
    for (const auto& slot : cls->slots) p.declarations.emplace_back(slot.name, slot.ty);
    for (const auto& [slot_name, value] : doc.assignments) {
        const Slot* slot = cls->find_slot(slot_name);
        if (!slot)
            return CompileError{CompileError::Kind::UnknownSlot,
                                doc.class_name + "." + slot_name};
        p.commands.push_back(
            Command::assign(slot_name, Expression::lit(adapt_literal(value, slot->ty))));
    }
    return p;
}

Result<DigitalObject, BindError> bind(const ContentDocument& doc, const ModelFile& model) {
    auto prog = compile_binding_program(doc, model);
    if (!prog) return BindError{std::move(prog.error())};

    auto end = run(prog.value(), {});
    if (!end) return BindError{std::move(end.error())};

    const ClassDef* cls = model.find_class(doc.class_name);
    DigitalObject d = DigitalObject(cls->name, cls->slots).with_name(doc.object_name);
    for (const auto& [ident, value] : end.value().mem)
        if (value) d = d.with_binding(ident, *value);
    return d;
}

namespace {

std::string escape_text(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        default: out += c;
        }
    }
    return out;
}

}  // namespace

std::string render_page_value(const Val& v) {
    switch (v.kind()) {
    case Val::Kind::Text:
        return escape_text(v.str());
    case Val::Kind::Markup:
    case Val::Kind::Uri:
        return v.str();
    case Val::Kind::Int:
        return std::to_string(v.as_int());
    case Val::Kind::Bool:
        return v.as_bool() ? "true" : "false";
    case Val::Kind::Date:
        return render_literal(v);
    case Val::Kind::Finite:
        return v.str();
    case Val::Kind::Tuple: {
        std::string out = "(";
        for (std::size_t i = 0; i < v.items().size(); ++i) {
            if (i) out += ", ";
            out += render_page_value(v.items()[i]);
        }
        return out + ")";
    }
    case Val::Kind::Seq: {
        std::string out;
        for (std::size_t i = 0; i < v.items().size(); ++i) {
            if (i) out += ", ";
            out += render_page_value(v.items()[i]);
        }
        return out;
    }
    case Val::Kind::Inj:
        return render_page_value(v.inj_payload());
    }
    return "";
}

Result<Page, RenderError> render(const DigitalObject& d, const ModelFile& model) {
    const ClassDef* cls = model.find_class(d.class_name());
    if (!cls)
        return RenderError{CompileError{CompileError::Kind::UnknownClass, d.class_name()}};

    auto unbound = list_unbound(d);
    if (!unbound.empty()) return RenderError{UnboundSlots{std::move(unbound)}};

    std::string markup;
    for (const auto& seg : cls->skeleton.segments()) {
        if (!seg.placeholder) {
            markup += seg.text;
            continue;
        }
        const std::optional<Val>* b = d.binding(seg.text);
        markup += render_page_value(**b);
    }
    return Page{d.object_name(), std::move(markup)};
}

}  // namespace ecm
