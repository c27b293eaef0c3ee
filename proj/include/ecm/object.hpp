#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ecm/value.hpp"

namespace ecm {

struct Slot {
    std::string name;
    TypeExpr ty;
};

// Lifecycle stages of a digital object: a bare class (template), a partially
// evaluated object, a fully evaluated value ready to become a page.
enum class Stage { Class = 0, Object = 1, Value = 2 };

std::string_view stage_name(Stage s);

// A class reference plus per-slot bindings that may be unbound. The binding
// list always covers exactly the slots of the class, in class order; bound
// values typecheck against the slot types.
class DigitalObject {
public:
    DigitalObject(std::string class_name, std::vector<Slot> slots);

    const std::string& class_name() const { return class_name_; }
    const std::vector<Slot>& slots() const { return slots_; }

    // Document-given instance name; travels with the object so pages can be
    // named after it. Empty for objects never read from a document.
    const std::string& object_name() const { return object_name_; }
    DigitalObject with_name(std::string name) const;

    bool has_slot(std::string_view name) const;
    // nullptr when the class has no such slot; nullopt when unbound.
    const std::optional<Val>* binding(std::string_view name) const;

    // Returns a copy with the slot bound; the value must typecheck against
    // the slot's declared type.
    DigitalObject with_binding(std::string_view name, Val v) const;

private:
    std::string class_name_;
    std::string object_name_;
    std::vector<Slot> slots_;
    std::vector<std::optional<Val>> bindings_;  // parallel to slots_
};

Stage stage_of(const DigitalObject& d);

// Names of unbound slots, in class slot order. Empty iff stage is Value.
std::vector<std::string> list_unbound(const DigitalObject& d);

}  // namespace ecm
