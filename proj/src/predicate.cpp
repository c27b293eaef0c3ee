#include "ecm/predicate.hpp"

#include <algorithm>

namespace ecm {

std::string_view cmp_op_name(CmpOp op) {
    switch (op) {
    case CmpOp::Eq: return "=";
    case CmpOp::Ne: return "!=";
    case CmpOp::Lt: return "<";
    case CmpOp::Le: return "<=";
    case CmpOp::Gt: return ">";
    case CmpOp::Ge: return ">=";
    }
    return "?";
}

std::string_view group_name(RuleGroup g) {
    switch (g) {
    case RuleGroup::V: return "v";
    case RuleGroup::E: return "e";
    case RuleGroup::S: return "s";
    case RuleGroup::P: return "p";
    }
    return "?";
}

Formula Formula::constant(bool b) {
    Formula f;
    f.node = b ? Node::True : Node::False;
    return f;
}

Formula Formula::negation(Formula inner) {
    Formula f;
    f.node = Node::Not;
    f.kids.push_back(std::move(inner));
    return f;
}

Formula Formula::conj(Formula a, Formula b) {
    Formula f;
    f.node = Node::And;
    f.kids.push_back(std::move(a));
    f.kids.push_back(std::move(b));
    return f;
}

Formula Formula::disj(Formula a, Formula b) {
    Formula f;
    f.node = Node::Or;
    f.kids.push_back(std::move(a));
    f.kids.push_back(std::move(b));
    return f;
}

Formula Formula::compare(Operand lhs, CmpOp op, Operand rhs) {
    Formula f;
    f.node = Node::Cmp;
    f.op = op;
    f.lhs = std::move(lhs);
    f.rhs = std::move(rhs);
    return f;
}

bool compare_values(const Val& a, CmpOp op, const Val& b) {
    switch (op) {
    case CmpOp::Eq: return value_eq(a, b);
    case CmpOp::Ne: return !value_eq(a, b);
    case CmpOp::Lt: return value_less(a, b);
    case CmpOp::Le: return value_less(a, b) || value_eq(a, b);
    case CmpOp::Gt: return value_less(b, a);
    case CmpOp::Ge: return value_less(b, a) || value_eq(a, b);
    }
    return false;
}

namespace {

// guards vs individual predicates share everything but the operand forms
enum class OperandDialect { Individual, Guard };

std::optional<CmpOp> as_cmp_op(const Lexer::Token& t) {
    if (t.kind != Lexer::TokKind::Sym) return std::nullopt;
    if (t.text == "=") return CmpOp::Eq;
    if (t.text == "!=") return CmpOp::Ne;
    if (t.text == "<") return CmpOp::Lt;
    if (t.text == "<=") return CmpOp::Le;
    if (t.text == ">") return CmpOp::Gt;
    if (t.text == ">=") return CmpOp::Ge;
    return std::nullopt;
}

struct PredParser {
    Lexer& lx;
    OperandDialect dialect;
    std::vector<RuleGroup> groups;

    void note_group(RuleGroup g) {
        if (std::find(groups.begin(), groups.end(), g) == groups.end()) groups.push_back(g);
    }

    Result<Operand, Diagnostic> operand() {
        const auto& t = lx.peek();
        if (t.kind == Lexer::TokKind::Ident) {
            if (dialect == OperandDialect::Individual && t.text == "v") {
                lx.next();
                if (lx.is_sym(".")) {
                    lx.next();
                    if (lx.peek().kind != Lexer::TokKind::Ident)
                        return lx.error_here("expected slot name after 'v.'");
                    auto slot = lx.next();
                    Operand o;
                    if (slot.text == "count") {
                        o.kind = Operand::Kind::CountRef;
                    } else {
                        o.kind = Operand::Kind::SlotRef;
                        o.name = std::move(slot.text);
                    }
                    return o;
                }
                Operand o;
                o.kind = Operand::Kind::Self;
                return o;
            }
            if (dialect == OperandDialect::Guard &&
                (t.text == "v" || t.text == "e" || t.text == "s")) {
                RuleGroup g = t.text == "v"   ? RuleGroup::V
                              : t.text == "e" ? RuleGroup::E
                                              : RuleGroup::S;
                lx.next();
                if (!lx.is_sym(".")) return lx.error_here("expected '.' after group letter");
                lx.next();
                if (lx.peek().kind != Lexer::TokKind::Ident)
                    return lx.error_here("expected context key after '.'");
                auto key = lx.next();
                note_group(g);
                Operand o;
                o.kind = Operand::Kind::GroupKey;
                o.group = g;
                o.name = std::move(key.text);
                return o;
            }
            if (dialect == OperandDialect::Guard && t.text == "p") {
                lx.next();
                note_group(RuleGroup::P);
                Operand o;
                o.kind = Operand::Kind::StatusSelf;
                return o;
            }
            if (dialect == OperandDialect::Guard) {
                if (auto st = parse_status(t.text)) {
                    lx.next();
                    Operand o;
                    o.kind = Operand::Kind::StatusLit;
                    o.status = *st;
                    return o;
                }
            }
        }
        auto lit = parse_literal(lx);
        if (!lit) return lit.error();
        Operand o;
        o.kind = Operand::Kind::Lit;
        o.lit = std::move(lit.value());
        return o;
    }

    Result<Formula, Diagnostic> term() {
        if (lx.is_ident("not")) {
            lx.next();
            auto inner = term();
            if (!inner) return inner;
            return Formula::negation(std::move(inner.value()));
        }
        // bare true/false are constants unless they open a comparison
        if ((lx.is_ident("true") || lx.is_ident("false")) ) {
            bool b = lx.peek().text == "true";
            auto save = lx;
            lx.next();
            if (!as_cmp_op(lx.peek())) return Formula::constant(b);
            lx = save;  // it was a literal operand after all
        }
        if (lx.is_sym("(")) {
            // '(' opens a grouped formula unless it scans as a tuple literal
            // operand; try the formula reading first.
            auto save = lx;
            lx.next();
            auto inner = expr();
            if (inner && lx.is_sym(")")) {
                lx.next();
                if (!as_cmp_op(lx.peek())) return inner;
            }
            lx = save;
        }
        auto lhs = operand();
        if (!lhs) return lhs.error();
        auto op = as_cmp_op(lx.peek());
        if (!op) return lx.error_here("expected comparison operator");
        lx.next();
        auto rhs = operand();
        if (!rhs) return rhs.error();
        return Formula::compare(std::move(lhs.value()), *op, std::move(rhs.value()));
    }

    Result<Formula, Diagnostic> expr() {
        auto acc = term();
        if (!acc) return acc;
        while (lx.is_ident("and") || lx.is_ident("or")) {
            bool conj = lx.peek().text == "and";
            lx.next();
            auto rhs = term();
            if (!rhs) return rhs;
            acc = conj ? Formula::conj(std::move(acc.value()), std::move(rhs.value()))
                       : Formula::disj(std::move(acc.value()), std::move(rhs.value()));
        }
        return acc;
    }
};

}  // namespace

Result<Formula, Diagnostic> parse_predicate(Lexer& lx) {
    PredParser p{lx, OperandDialect::Individual, {}};
    return p.expr();
}

Result<Formula, Diagnostic> parse_predicate_text(std::string_view text) {
    Lexer lx(text);
    auto f = parse_predicate(lx);
    if (!f) return f;
    if (!lx.scan_errors().empty()) return lx.scan_errors().front();
    if (!lx.at_end()) return lx.error_here("trailing input after predicate");
    return f;
}

Result<GuardInfo, Diagnostic> parse_guard(Lexer& lx) {
    PredParser p{lx, OperandDialect::Guard, {}};
    auto f = p.expr();
    if (!f) return f.error();
    return GuardInfo{std::move(f.value()), std::move(p.groups)};
}

Result<GuardInfo, Diagnostic> parse_guard_text(std::string_view text) {
    Lexer lx(text);
    auto g = parse_guard(lx);
    if (!g) return g;
    if (!lx.scan_errors().empty()) return lx.scan_errors().front();
    if (!lx.at_end()) return lx.error_here("trailing input after guard");
    return g;
}

namespace {

std::string render_operand(const Operand& o) {
    switch (o.kind) {
    case Operand::Kind::Self: return "v";
    case Operand::Kind::SlotRef: return "v." + o.name;
    case Operand::Kind::CountRef: return "v.count";
    case Operand::Kind::GroupKey: return std::string(group_name(o.group)) + "." + o.name;
    case Operand::Kind::StatusSelf: return "p";
    case Operand::Kind::StatusLit: return std::string(status_name(o.status));
    case Operand::Kind::Lit: return render_literal(o.lit);
    }
    return "?";
}

bool needs_parens(const Formula& f) {
    return f.node == Formula::Node::And || f.node == Formula::Node::Or;
}

}  // namespace

std::string render_formula(const Formula& f) {
    switch (f.node) {
    case Formula::Node::True: return "true";
    case Formula::Node::False: return "false";
    case Formula::Node::Not: {
        const Formula& k = f.kids[0];
        if (needs_parens(k)) return "not (" + render_formula(k) + ")";
        return "not " + render_formula(k);
    }
    case Formula::Node::And:
    case Formula::Node::Or: {
        auto side = [](const Formula& k) {
            return needs_parens(k) ? "(" + render_formula(k) + ")" : render_formula(k);
        };
        const char* con = f.node == Formula::Node::And ? " and " : " or ";
        return side(f.kids[0]) + con + side(f.kids[1]);
    }
    case Formula::Node::Cmp:
        return render_operand(f.lhs) + " " + std::string(cmp_op_name(f.op)) + " " +
               render_operand(f.rhs);
    }
    return "?";
}

}  // namespace ecm
