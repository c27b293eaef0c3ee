#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "ecm/object.hpp"
#include "ecm/predicate.hpp"
#include "ecm/result.hpp"
#include "ecm/status.hpp"
#include "ecm/text.hpp"

namespace ecm {

// The assignment quadruple driving the personalization functional: client
// interface parameters (v), device parameters (e), personal preferences (s)
// and registration status (p). Map values are atomic.
struct PersonalizationContext {
    std::map<std::string, Val> v;
    std::map<std::string, Val> e;
    std::map<std::string, Val> s;
    RegistrationStatus p = RegistrationStatus::Anonymous;
};

// A guard over exactly one parameter group plus either slot overrides or a
// suppression marker (never both).
struct PersonalizationRule {
    std::string class_name;
    RuleGroup group = RuleGroup::V;
    Formula guard;
    std::vector<std::pair<std::string, Val>> overrides;  // distinct slots, file order
    bool suppress = false;
};

// Context files: lines `v.<key> = <literal>`, `e.<key> = ...`,
// `s.<key> = ...`, `p = <status>`. Missing groups default to empty,
// p to anonymous.
Result<PersonalizationContext, std::vector<Diagnostic>> parse_context(std::string_view text);

// A guard comparison over a key the context does not carry is simply
// unsatisfied; guards never error against a well-formed context.
bool guard_satisfied(const Formula& guard, const PersonalizationContext& ctx);

struct PersonalizedObject {
    DigitalObject object;
    bool suppressed = false;
};

// Applies the satisfied rules for the object's class in group order
// V, E, S, P (inner parameter lists first), declaration order within a
// group; later applications overwrite earlier ones. A satisfied suppress
// rule marks the result; rendering must then refuse the object.
PersonalizedObject apply_functional(const DigitalObject& d,
                                    std::span<const PersonalizationRule> rules,
                                    const PersonalizationContext& ctx);

// True iff the context's registration status reaches the required level.
bool access_allowed(const PersonalizationContext& ctx, RegistrationStatus required);

}  // namespace ecm
