#include <algorithm>
#include <set>

#include "ecm/machine.hpp"

namespace ecm {

namespace {

bool reserved_word(std::string_view s) {
    return s == "var" || s == "read" || s == "emit" || s == "cmp" || s == "true" ||
           s == "false" || s == "markup";
}

struct ProgramParser {
    Lexer lx;
    std::vector<Diagnostic> diags;

    explicit ProgramParser(std::string_view text) : lx(text) {}

    void fail(Diagnostic d) { diags.push_back(std::move(d)); }

    // expr := primary ('.' INT)*
    std::optional<Expression> expression() {
        auto head = primary();
        if (!head) return std::nullopt;
        while (lx.is_sym(".")) {
            // a dot only continues the expression when a projection index follows
            auto save = lx;
            lx.next();
            if (lx.peek().kind != Lexer::TokKind::Int) {
                lx = save;
                break;
            }
            auto idx = lx.next();
            if (idx.int_value < 1) {
                fail({idx.line, idx.col, "projection index must be >= 1"});
                return std::nullopt;
            }
            head = Expression::proj(std::move(*head), static_cast<int>(idx.int_value));
        }
        return head;
    }

    std::optional<Expression> primary() {
        const auto& t = lx.peek();
        if (lx.is_sym("(")) {
            lx.next();
            std::vector<Expression> items;
            while (true) {
                auto e = expression();
                if (!e) return std::nullopt;
                items.push_back(std::move(*e));
                if (lx.is_sym(",")) {
                    lx.next();
                    continue;
                }
                break;
            }
            if (!lx.is_sym(")")) {
                fail(lx.error_here("expected ',' or ')'"));
                return std::nullopt;
            }
            lx.next();
            if (items.size() == 1) return std::move(items[0]);  // grouping
            // fold all-constant tuples so rendering round-trips to the same tree
            bool all_lit = std::all_of(items.begin(), items.end(), [](const Expression& e) {
                return e.kind() == Expression::Kind::Lit;
            });
            if (all_lit) {
                std::vector<Val> vals;
                for (auto& e : items) vals.push_back(e.lit_value());
                return Expression::lit(Val::tuple(std::move(vals)));
            }
            return Expression::tuple(std::move(items));
        }
        if (t.kind == Lexer::TokKind::Ident && !reserved_word(t.text)) {
            // Domain.literal and tag(literal) shapes read as literals;
            // anything else is an identifier reference.
            auto save = lx;
            auto lit = parse_literal(lx);
            if (lit) return Expression::lit(std::move(lit.value()));
            lx = save;
            return Expression::ident(lx.next().text);
        }
        auto lit = parse_literal(lx);
        if (!lit) {
            fail(std::move(lit.error()));
            return std::nullopt;
        }
        return Expression::lit(std::move(lit.value()));
    }

    std::optional<std::vector<Command>> blockof() {
        if (!lx.is_sym("{")) {
            fail(lx.error_here("expected '{'"));
            return std::nullopt;
        }
        lx.next();
        std::vector<Command> cs;
        while (!lx.is_sym("}")) {
            if (lx.at_end()) {
                fail(lx.error_here("unterminated block"));
                return std::nullopt;
            }
            if (lx.is_sym(";")) {
                lx.next();
                continue;
            }
            auto c = command();
            if (!c) return std::nullopt;
            cs.push_back(std::move(*c));
        }
        lx.next();
        return cs;
    }

    std::optional<Command> command() {
        const auto& t = lx.peek();
        if (t.kind != Lexer::TokKind::Ident) {
            fail(lx.error_here("expected command"));
            return std::nullopt;
        }
        if (t.text == "read") {
            lx.next();
            if (lx.peek().kind != Lexer::TokKind::Ident || reserved_word(lx.peek().text)) {
                fail(lx.error_here("expected identifier after 'read'"));
                return std::nullopt;
            }
            return Command::read(lx.next().text);
        }
        if (t.text == "emit") {
            lx.next();
            auto e = expression();
            if (!e) return std::nullopt;
            return Command::emit(std::move(*e));
        }
        if (t.text == "cmp") {
            lx.next();
            auto l = expression();
            if (!l) return std::nullopt;
            auto r = expression();
            if (!r) return std::nullopt;
            auto then_block = blockof();
            if (!then_block) return std::nullopt;
            auto else_block = blockof();
            if (!else_block) return std::nullopt;
            return Command::cmp(std::move(*l), std::move(*r), std::move(*then_block),
                                std::move(*else_block));
        }
        if (reserved_word(t.text)) {
            fail(lx.error_here("unexpected '" + t.text + "'"));
            return std::nullopt;
        }
        auto target = lx.next();
        if (!lx.is_sym("=")) {
            fail(lx.error_here("expected '=' after assignment target"));
            return std::nullopt;
        }
        lx.next();
        auto e = expression();
        if (!e) return std::nullopt;
        return Command::assign(std::move(target.text), std::move(*e));
    }

    Result<Program, std::vector<Diagnostic>> parse() {
        Program p;
        std::set<std::string> declared;
        while (lx.is_ident("var")) {
            lx.next();
            if (lx.peek().kind != Lexer::TokKind::Ident || reserved_word(lx.peek().text)) {
                fail(lx.error_here("expected identifier after 'var'"));
                return finish(std::move(p));
            }
            auto name = lx.next();
            if (!declared.insert(name.text).second)
                fail({name.line, name.col, "duplicate declaration of '" + name.text + "'"});
            if (!lx.is_sym(":")) {
                fail(lx.error_here("expected ':' in declaration"));
                return finish(std::move(p));
            }
            lx.next();
            auto ty = parse_type(lx);
            if (!ty) {
                fail(std::move(ty.error()));
                return finish(std::move(p));
            }
            p.declarations.emplace_back(std::move(name.text), std::move(ty.value()));
            if (lx.is_sym(";")) lx.next();
        }
        while (!lx.at_end()) {
            if (lx.is_sym(";")) {
                lx.next();
                continue;
            }
            if (lx.is_ident("var")) {
                fail(lx.error_here("declarations must precede commands"));
                return finish(std::move(p));
            }
            auto c = command();
            if (!c) return finish(std::move(p));
            p.commands.push_back(std::move(*c));
        }
        return finish(std::move(p));
    }

    Result<Program, std::vector<Diagnostic>> finish(Program p) {
        for (const auto& d : lx.scan_errors()) diags.push_back(d);
        if (!diags.empty()) {
            std::sort(diags.begin(), diags.end(), [](const Diagnostic& a, const Diagnostic& b) {
                return std::tie(a.line, a.col) < std::tie(b.line, b.col);
            });
            return diags;
        }
        return p;
    }
};

}  // namespace

Result<Program, std::vector<Diagnostic>> parse_program(std::string_view text) {
    ProgramParser p(text);
    return p.parse();
}

Result<std::vector<Val>, std::vector<Diagnostic>> parse_input_values(std::string_view text) {
    std::vector<Val> values;
    std::vector<Diagnostic> diags;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto eol = text.find('\n', pos);
        std::string_view line = text.substr(pos, eol == std::string_view::npos ? std::string_view::npos
                                                                               : eol - pos);
        ++line_no;
        Lexer lx(line, line_no);
        if (!lx.at_end()) {
            auto v = parse_literal(lx);
            if (!v) {
                diags.push_back(std::move(v.error()));
            } else if (!lx.at_end()) {
                diags.push_back(lx.error_here("one literal per line"));
            } else {
                values.push_back(std::move(v.value()));
            }
            for (const auto& d : lx.scan_errors()) diags.push_back(d);
        }
        if (eol == std::string_view::npos) break;
        pos = eol + 1;
    }
    if (!diags.empty()) return diags;
    return values;
}

}  // namespace ecm
