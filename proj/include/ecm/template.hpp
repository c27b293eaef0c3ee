#pragma once

#include <string>
#include <variant>
#include <vector>

#include "ecm/machine.hpp"
#include "ecm/model.hpp"
#include "ecm/object.hpp"
#include "ecm/result.hpp"

namespace ecm {

struct CompileError {
    enum class Kind { UnknownClass, UnknownSlot };
    Kind kind = Kind::UnknownClass;
    std::string detail;
};

std::string render_compile_error(const CompileError& e);

// Binding failures: either the document does not fit the model, or the
// machine rejected an assignment.
using BindError = std::variant<CompileError, MachineError>;

std::string render_bind_error(const BindError& e);

struct UnboundSlots {
    std::vector<std::string> slots;  // class slot order
};

using RenderError = std::variant<CompileError, UnboundSlots>;

std::string render_render_error(const RenderError& e);

// A fully expanded page: no placeholders remain.
struct Page {
    std::string name;  // the object name
    std::string markup;
};

// Translates a document into machine code: one declaration per class slot,
// one assignment command per document assignment, in document order.
// Running the program yields the object's bindings as machine memory.
Result<Program, CompileError> compile_binding_program(const ContentDocument& doc,
                                                      const ModelFile& model);

// Machine-executed binding; the resulting object's stage reflects slot
// coverage.
Result<DigitalObject, BindError> bind(const ContentDocument& doc, const ModelFile& model);

// Expands the class skeleton for a fully evaluated object. Text values are
// escaped (& < >), Markup is inserted verbatim, everything else renders in
// its plain textual form.
Result<Page, RenderError> render(const DigitalObject& d, const ModelFile& model);

// Plain page text of one value (no markup escaping applied to Markup).
std::string render_page_value(const Val& v);

}  // namespace ecm
