#pragma once

#include <string>
#include <vector>

#include "ecm/result.hpp"
#include "ecm/status.hpp"
#include "ecm/text.hpp"
#include "ecm/value.hpp"

namespace ecm {

enum class CmpOp { Eq, Ne, Lt, Le, Gt, Ge };

std::string_view cmp_op_name(CmpOp op);

// Which personalization parameter group an operand reads.
enum class RuleGroup { V = 0, E = 1, S = 2, P = 3 };

std::string_view group_name(RuleGroup g);

// One side of a comparison. Individual predicates use Self / SlotRef /
// CountRef / Lit; rule guards use GroupKey / StatusSelf / StatusLit / Lit.
struct Operand {
    enum class Kind { Self, SlotRef, CountRef, GroupKey, StatusSelf, StatusLit, Lit };

    Kind kind = Kind::Self;
    std::string name;        // SlotRef slot / GroupKey key
    RuleGroup group = RuleGroup::V;
    Val lit = Val::boolean(false);
    RegistrationStatus status = RegistrationStatus::Anonymous;
};

// Formula over comparisons with and/or/not and the constants true/false.
// 'and' and 'or' associate left at equal precedence, as the concrete
// grammar reads.
struct Formula {
    enum class Node { True, False, Not, And, Or, Cmp };

    Node node = Node::True;
    std::vector<Formula> kids;  // Not: 1; And/Or: 2
    CmpOp op = CmpOp::Eq;
    Operand lhs, rhs;

    static Formula constant(bool b);
    static Formula negation(Formula f);
    static Formula conj(Formula a, Formula b);
    static Formula disj(Formula a, Formula b);
    static Formula compare(Operand lhs, CmpOp op, Operand rhs);
};

// Individual predicate: operands are v, v.<slot>, v.count and literals.
Result<Formula, Diagnostic> parse_predicate(Lexer& lx);
Result<Formula, Diagnostic> parse_predicate_text(std::string_view text);

// Rule guard: operands are v.<key>, e.<key>, s.<key>, p and literals
// (status names compared with p). Also reports which groups the guard
// reads; a rule must read exactly one.
struct GuardInfo {
    Formula formula;
    std::vector<RuleGroup> groups_read;  // distinct, in first-reference order
};
Result<GuardInfo, Diagnostic> parse_guard(Lexer& lx);
Result<GuardInfo, Diagnostic> parse_guard_text(std::string_view text);

// Canonical concrete syntax; parsing the rendering reproduces the formula.
std::string render_formula(const Formula& f);

// Total comparison used by every predicate evaluator: equality is
// structural, order is the canonical total value order.
bool compare_values(const Val& a, CmpOp op, const Val& b);

}  // namespace ecm
