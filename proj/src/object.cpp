#include "ecm/object.hpp"

#include <set>
#include <stdexcept>

namespace ecm {

std::string_view stage_name(Stage s) {
    switch (s) {
    case Stage::Class: return "class";
    case Stage::Object: return "object";
    case Stage::Value: return "value";
    }
    return "?";
}

DigitalObject::DigitalObject(std::string class_name, std::vector<Slot> slots)
    : class_name_(std::move(class_name)), slots_(std::move(slots)) {
    if (!is_identifier(class_name_)) throw std::invalid_argument("class name must be an identifier");
    std::set<std::string_view> seen;
    for (const auto& s : slots_) {
        if (!is_identifier(s.name)) throw std::invalid_argument("slot name must be an identifier");
        if (!seen.insert(s.name).second) throw std::invalid_argument("duplicate slot name");
    }
    bindings_.resize(slots_.size());
}

DigitalObject DigitalObject::with_name(std::string name) const {
    DigitalObject out = *this;
    out.object_name_ = std::move(name);
    return out;
}

bool DigitalObject::has_slot(std::string_view name) const {
    for (const auto& s : slots_)
        if (s.name == name) return true;
    return false;
}

const std::optional<Val>* DigitalObject::binding(std::string_view name) const {
    for (std::size_t i = 0; i < slots_.size(); ++i)
        if (slots_[i].name == name) return &bindings_[i];
    return nullptr;
}

DigitalObject DigitalObject::with_binding(std::string_view name, Val v) const {
    for (std::size_t i = 0; i < slots_.size(); ++i) {
        if (slots_[i].name == name) {
            if (!typecheck(v, slots_[i].ty))
                throw std::invalid_argument("binding does not typecheck against slot '" +
                                            slots_[i].name + "'");
            DigitalObject out = *this;
            out.bindings_[i] = std::move(v);
            return out;
        }
    }
    throw std::invalid_argument("no slot named '" + std::string(name) + "'");
}

Stage stage_of(const DigitalObject& d) {
    std::size_t bound = 0;
    for (const auto& s : d.slots())
        if (d.binding(s.name)->has_value()) ++bound;
    // a slotless class is vacuously fully evaluated
    if (bound == d.slots().size()) return Stage::Value;
    if (bound == 0) return Stage::Class;
    return Stage::Object;
}

std::vector<std::string> list_unbound(const DigitalObject& d) {
    std::vector<std::string> out;
    for (const auto& s : d.slots())
        if (!d.binding(s.name)->has_value()) out.push_back(s.name);
    return out;
}

}  // namespace ecm
