#include "ecm/personalization.hpp"

#include <algorithm>

namespace ecm {

Result<PersonalizationContext, std::vector<Diagnostic>> parse_context(std::string_view text) {
    PersonalizationContext ctx;
    std::vector<Diagnostic> diags;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto eol = text.find('\n', pos);
        std::string_view line =
            text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
        ++line_no;
        Lexer lx(line, line_no);
        if (!lx.at_end()) {
            auto bad = [&](std::string msg) { diags.push_back(lx.error_here(std::move(msg))); };
            if (lx.is_ident("p")) {
                lx.next();
                if (!lx.is_sym("=")) {
                    bad("expected '=' after p");
                } else {
                    lx.next();
                    if (lx.peek().kind != Lexer::TokKind::Ident) {
                        bad("expected registration status");
                    } else {
                        auto name = lx.next();
                        if (auto st = parse_status(name.text)) {
                            ctx.p = *st;
                            if (!lx.at_end()) bad("trailing input after status");
                        } else {
                            diags.push_back(
                                {name.line, name.col, "unknown status '" + name.text + "'"});
                        }
                    }
                }
            } else if (lx.is_ident("v") || lx.is_ident("e") || lx.is_ident("s")) {
                auto group = lx.next();
                auto* map = group.text == "v" ? &ctx.v : group.text == "e" ? &ctx.e : &ctx.s;
                if (!lx.is_sym(".")) {
                    bad("expected '.' after group letter");
                } else {
                    lx.next();
                    if (lx.peek().kind != Lexer::TokKind::Ident) {
                        bad("expected context key");
                    } else {
                        auto key = lx.next();
                        if (!lx.is_sym("=")) {
                            bad("expected '=' after context key");
                        } else {
                            lx.next();
                            auto v = parse_literal(lx);
                            if (!v) {
                                diags.push_back(std::move(v.error()));
                            } else if (!lx.at_end()) {
                                bad("trailing input after value");
                            } else {
                                switch (v.value().kind()) {
                                case Val::Kind::Tuple:
                                case Val::Kind::Seq:
                                case Val::Kind::Inj:
                                    diags.push_back({key.line, key.col,
                                                     "context values must be atomic"});
                                    break;
                                default:
                                    map->insert_or_assign(key.text, std::move(v.value()));
                                }
                            }
                        }
                    }
                }
            } else {
                bad("expected 'v.', 'e.', 's.' or 'p' assignment");
            }
            for (const auto& d : lx.scan_errors()) diags.push_back(d);
        }
        if (eol == std::string_view::npos) break;
        pos = eol + 1;
    }
    if (!diags.empty()) return diags;
    return ctx;
}

namespace {

// Resolves a guard operand against the context; absent keys yield nothing.
const Val* resolve_key(const Operand& o, const PersonalizationContext& ctx) {
    const auto* map = o.group == RuleGroup::V ? &ctx.v : o.group == RuleGroup::E ? &ctx.e : &ctx.s;
    auto it = map->find(o.name);
    return it == map->end() ? nullptr : &it->second;
}

bool guard_compare(const Operand& lhs, CmpOp op, const Operand& rhs,
                   const PersonalizationContext& ctx) {
    // status comparisons use the registration order
    auto as_status = [&](const Operand& o) -> std::optional<RegistrationStatus> {
        if (o.kind == Operand::Kind::StatusSelf) return ctx.p;
        if (o.kind == Operand::Kind::StatusLit) return o.status;
        return std::nullopt;
    };
    auto ls = as_status(lhs);
    auto rs = as_status(rhs);
    if (ls && rs) {
        int a = static_cast<int>(*ls), b = static_cast<int>(*rs);
        switch (op) {
        case CmpOp::Eq: return a == b;
        case CmpOp::Ne: return a != b;
        case CmpOp::Lt: return a < b;
        case CmpOp::Le: return a <= b;
        case CmpOp::Gt: return a > b;
        case CmpOp::Ge: return a >= b;
        }
        return false;
    }
    if (ls || rs) return op == CmpOp::Ne;  // status vs plain value never matches

    auto value_of = [&](const Operand& o) -> const Val* {
        if (o.kind == Operand::Kind::GroupKey) return resolve_key(o, ctx);
        if (o.kind == Operand::Kind::Lit) return &o.lit;
        return nullptr;
    };
    const Val* a = value_of(lhs);
    const Val* b = value_of(rhs);
    if (!a || !b) return false;  // absent key: comparison unsatisfied
    return compare_values(*a, op, *b);
}

}  // namespace

bool guard_satisfied(const Formula& guard, const PersonalizationContext& ctx) {
    switch (guard.node) {
    case Formula::Node::True: return true;
    case Formula::Node::False: return false;
    case Formula::Node::Not: return !guard_satisfied(guard.kids[0], ctx);
    case Formula::Node::And:
        return guard_satisfied(guard.kids[0], ctx) && guard_satisfied(guard.kids[1], ctx);
    case Formula::Node::Or:
        return guard_satisfied(guard.kids[0], ctx) || guard_satisfied(guard.kids[1], ctx);
    case Formula::Node::Cmp: return guard_compare(guard.lhs, guard.op, guard.rhs, ctx);
    }
    return false;
}

PersonalizedObject apply_functional(const DigitalObject& d,
                                    std::span<const PersonalizationRule> rules,
                                    const PersonalizationContext& ctx) {
    PersonalizedObject out{d, false};
    for (RuleGroup g : {RuleGroup::V, RuleGroup::E, RuleGroup::S, RuleGroup::P}) {
        for (const auto& rule : rules) {
            if (rule.group != g || rule.class_name != d.class_name()) continue;
            if (!guard_satisfied(rule.guard, ctx)) continue;
            if (rule.suppress) {
                out.suppressed = true;
                continue;
            }
            for (const auto& [slot, value] : rule.overrides)
                out.object = out.object.with_binding(slot, value);
        }
    }
    return out;
}

bool access_allowed(const PersonalizationContext& ctx, RegistrationStatus required) {
    return ctx.p >= required;
}

}  // namespace ecm
