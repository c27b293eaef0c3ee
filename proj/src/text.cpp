#include "ecm/text.hpp"

#include <cctype>
#include <charconv>

namespace ecm {

std::string render_diagnostic(const Diagnostic& d) {
    return std::to_string(d.line) + ":" + std::to_string(d.col) + ": " + d.message;
}

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)); }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool digit(char c) { return std::isdigit(static_cast<unsigned char>(c)); }

bool scheme_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '+' || c == '.' || c == '-';
}

bool uri_terminator(char c) {
    return std::isspace(static_cast<unsigned char>(c)) || c == ',' || c == ';' || c == ')' ||
           c == ']' || c == '}' || c == '"';
}

}  // namespace

Lexer::Lexer(std::string_view text, int first_line) : src_(text), line_(first_line) {
    advance();
}

Lexer::Token Lexer::next() {
    Token t = tok_;
    advance();
    return t;
}

bool Lexer::is_sym(std::string_view s) const {
    return tok_.kind == TokKind::Sym && tok_.text == s;
}

bool Lexer::is_ident(std::string_view s) const {
    return tok_.kind == TokKind::Ident && tok_.text == s;
}

Diagnostic Lexer::error_here(std::string message) const {
    return Diagnostic{tok_.line, tok_.col, std::move(message)};
}

void Lexer::advance() {
    // skip whitespace and comments
    while (pos_ < src_.size()) {
        char c = src_[pos_];
        if (c == '\n') {
            ++line_;
            col_ = 1;
            ++pos_;
        } else if (std::isspace(static_cast<unsigned char>(c))) {
            ++col_;
            ++pos_;
        } else if (c == '#') {
            while (pos_ < src_.size() && src_[pos_] != '\n') ++pos_;
        } else {
            break;
        }
    }

    tok_ = Token{};
    tok_.line = line_;
    tok_.col = col_;
    if (pos_ >= src_.size()) {
        tok_.kind = TokKind::End;
        return;
    }

    auto take = [&](std::size_t n) {
        pos_ += n;
        col_ += static_cast<int>(n);
    };

    char c = src_[pos_];

    if (ident_start(c)) {
        std::size_t end = pos_;
        while (end < src_.size() && ident_char(src_[end])) ++end;
        // scheme://... continues as a uri token
        if (src_.size() - end >= 3 && src_.compare(end, 3, "://") == 0) {
            std::size_t scan = pos_;
            while (scan < end && scheme_char(src_[scan])) ++scan;
            if (scan == end) {
                std::size_t ue = end + 3;
                while (ue < src_.size() && !uri_terminator(src_[ue])) ++ue;
                tok_.kind = TokKind::Uri;
                tok_.text = std::string(src_.substr(pos_, ue - pos_));
                take(ue - pos_);
                return;
            }
        }
        tok_.kind = TokKind::Ident;
        tok_.text = std::string(src_.substr(pos_, end - pos_));
        take(end - pos_);
        return;
    }

    if (digit(c) || (c == '-' && pos_ + 1 < src_.size() && digit(src_[pos_ + 1]))) {
        std::size_t end = pos_ + (c == '-' ? 1 : 0);
        while (end < src_.size() && digit(src_[end])) ++end;
        std::size_t digits = end - pos_ - (c == '-' ? 1 : 0);
        // YYYY-MM-DD
        if (c != '-' && digits == 4 && src_.size() - end >= 6 && src_[end] == '-' &&
            digit(src_[end + 1]) && digit(src_[end + 2]) && src_[end + 3] == '-' &&
            digit(src_[end + 4]) && digit(src_[end + 5])) {
            auto part = [&](std::size_t off, std::size_t n) {
                int v = 0;
                std::from_chars(src_.data() + off, src_.data() + off + n, v);
                return v;
            };
            Date d{part(pos_, 4), part(end + 1, 2), part(end + 4, 2)};
            if (!date_valid(d)) {
                errors_.push_back(Diagnostic{tok_.line, tok_.col, "invalid calendar date"});
                d = Date{1970, 1, 1};
            }
            tok_.kind = TokKind::Date;
            tok_.date_value = d;
            tok_.text = std::string(src_.substr(pos_, end + 6 - pos_));
            take(end + 6 - pos_);
            return;
        }
        std::int64_t v = 0;
        auto res = std::from_chars(src_.data() + pos_, src_.data() + end, v);
        if (res.ec != std::errc{})
            errors_.push_back(Diagnostic{tok_.line, tok_.col, "integer literal out of range"});
        tok_.kind = TokKind::Int;
        tok_.int_value = v;
        tok_.text = std::string(src_.substr(pos_, end - pos_));
        take(end - pos_);
        return;
    }

    if (c == '"') {
        std::string out;
        std::size_t i = pos_ + 1;
        bool closed = false;
        while (i < src_.size()) {
            char d = src_[i];
            if (d == '"') {
                closed = true;
                ++i;
                break;
            }
            if (d == '\n') break;
            if (d == '\\') {
                if (i + 1 >= src_.size()) break;
                char e = src_[i + 1];
                switch (e) {
                case '"': out += '"'; break;
                case '\\': out += '\\'; break;
                case 'n': out += '\n'; break;
                case 't': out += '\t'; break;
                case 'r': out += '\r'; break;
                default:
                    errors_.push_back(Diagnostic{line_, col_ + static_cast<int>(i - pos_),
                                                 std::string("unknown escape \\") + e});
                }
                i += 2;
            } else {
                out += d;
                ++i;
            }
        }
        if (!closed)
            errors_.push_back(Diagnostic{tok_.line, tok_.col, "unterminated string literal"});
        tok_.kind = TokKind::String;
        tok_.text = std::move(out);
        take(i - pos_);
        return;
    }

    // multi-char symbols first
    for (std::string_view sym : {"<=", ">=", "!=", "->"}) {
        if (src_.compare(pos_, 2, sym) == 0) {
            tok_.kind = TokKind::Sym;
            tok_.text = std::string(sym);
            take(2);
            return;
        }
    }
    tok_.kind = TokKind::Sym;
    tok_.text = std::string(1, c);
    take(1);
}

// ---------------------------------------------------------------------------
// Literals

Result<Val, Diagnostic> parse_literal(Lexer& lx) {
    const auto& t = lx.peek();
    switch (t.kind) {
    case Lexer::TokKind::Int: {
        auto tok = lx.next();
        return Val::integer(tok.int_value);
    }
    case Lexer::TokKind::Date: {
        auto tok = lx.next();
        return Val::date(tok.date_value);
    }
    case Lexer::TokKind::String: {
        auto tok = lx.next();
        return Val::text(std::move(tok.text));
    }
    case Lexer::TokKind::Uri: {
        auto tok = lx.next();
        return Val::uri(std::move(tok.text));
    }
    case Lexer::TokKind::Ident: {
        if (t.text == "true" || t.text == "false") {
            auto tok = lx.next();
            return Val::boolean(tok.text == "true");
        }
        if (t.text == "markup") {
            lx.next();
            if (lx.peek().kind != Lexer::TokKind::String)
                return lx.error_here("expected string after 'markup'");
            auto tok = lx.next();
            return Val::markup(std::move(tok.text));
        }
        auto head = lx.next();
        if (lx.is_sym(".")) {
            lx.next();
            if (lx.peek().kind != Lexer::TokKind::Ident)
                return lx.error_here("expected literal name after '.'");
            auto lit = lx.next();
            return Val::finite(std::move(head.text), std::move(lit.text));
        }
        if (lx.is_sym("(")) {
            lx.next();
            auto payload = parse_literal(lx);
            if (!payload) return payload.error();
            if (!lx.is_sym(")")) return lx.error_here("expected ')' after injection payload");
            lx.next();
            return Val::inj(std::move(head.text), std::move(payload.value()));
        }
        return Diagnostic{head.line, head.col, "unexpected identifier '" + head.text + "' in literal"};
    }
    case Lexer::TokKind::Sym: {
        if (t.text == "(") {
            lx.next();
            std::vector<Val> items;
            while (true) {
                auto item = parse_literal(lx);
                if (!item) return item.error();
                items.push_back(std::move(item.value()));
                if (lx.is_sym(",")) {
                    lx.next();
                    continue;
                }
                break;
            }
            if (!lx.is_sym(")")) return lx.error_here("expected ',' or ')' in tuple literal");
            lx.next();
            if (items.size() < 2)
                return Diagnostic{t.line, t.col, "tuple literal needs at least two components"};
            return Val::tuple(std::move(items));
        }
        if (t.text == "[") {
            lx.next();
            std::vector<Val> items;
            if (!lx.is_sym("]")) {
                while (true) {
                    auto item = parse_literal(lx);
                    if (!item) return item.error();
                    items.push_back(std::move(item.value()));
                    if (lx.is_sym(",")) {
                        lx.next();
                        continue;
                    }
                    break;
                }
            }
            if (!lx.is_sym("]")) return lx.error_here("expected ',' or ']' in sequence literal");
            lx.next();
            return Val::seq(std::move(items));
        }
        return lx.error_here("expected literal, found '" + t.text + "'");
    }
    case Lexer::TokKind::End:
        return lx.error_here("expected literal, found end of input");
    }
    return lx.error_here("expected literal");
}

Result<Val, Diagnostic> parse_literal_text(std::string_view text) {
    Lexer lx(text);
    auto v = parse_literal(lx);
    if (!v) return v;
    if (!lx.scan_errors().empty()) return lx.scan_errors().front();
    if (!lx.at_end()) return lx.error_here("trailing input after literal");
    return v;
}

// ---------------------------------------------------------------------------
// Types

Result<TypeExpr, Diagnostic> parse_type(Lexer& lx) {
    const auto& t = lx.peek();
    if (t.kind == Lexer::TokKind::Ident) {
        if (t.text == "Text") { lx.next(); return TypeExpr::atomic(AtomicKind::Text); }
        if (t.text == "Markup") { lx.next(); return TypeExpr::atomic(AtomicKind::Markup); }
        if (t.text == "Int") { lx.next(); return TypeExpr::atomic(AtomicKind::Int); }
        if (t.text == "Bool") { lx.next(); return TypeExpr::atomic(AtomicKind::Bool); }
        if (t.text == "Date") { lx.next(); return TypeExpr::atomic(AtomicKind::Date); }
        if (t.text == "Uri") { lx.next(); return TypeExpr::atomic(AtomicKind::Uri); }
        if (t.text == "enum") {
            lx.next();
            if (lx.peek().kind != Lexer::TokKind::Ident)
                return lx.error_here("expected enum domain name");
            auto name = lx.next();
            if (!lx.is_sym("(")) return lx.error_here("expected '(' after enum name");
            lx.next();
            std::vector<std::string> lits;
            while (true) {
                if (lx.peek().kind != Lexer::TokKind::Ident)
                    return lx.error_here("expected enum literal");
                lits.push_back(lx.next().text);
                if (lx.is_sym(",")) {
                    lx.next();
                    continue;
                }
                break;
            }
            if (!lx.is_sym(")")) return lx.error_here("expected ')' after enum literals");
            lx.next();
            for (std::size_t i = 0; i < lits.size(); ++i)
                for (std::size_t j = i + 1; j < lits.size(); ++j)
                    if (lits[i] == lits[j])
                        return Diagnostic{name.line, name.col, "duplicate enum literal '" + lits[i] + "'"};
            return TypeExpr::finite(name.text, std::move(lits));
        }
        if (t.text == "seq") {
            lx.next();
            if (!lx.is_sym("(")) return lx.error_here("expected '(' after seq");
            lx.next();
            auto elem = parse_type(lx);
            if (!elem) return elem;
            if (!lx.is_sym(")")) return lx.error_here("expected ')' after seq element type");
            lx.next();
            return TypeExpr::seq(std::move(elem.value()));
        }
        if (t.text == "sum") {
            lx.next();
            if (!lx.is_sym("(")) return lx.error_here("expected '(' after sum");
            lx.next();
            std::vector<std::pair<std::string, TypeExpr>> variants;
            while (true) {
                if (lx.peek().kind != Lexer::TokKind::Ident)
                    return lx.error_here("expected sum variant tag");
                auto tag = lx.next();
                if (!lx.is_sym(":")) return lx.error_here("expected ':' after variant tag");
                lx.next();
                auto ty = parse_type(lx);
                if (!ty) return ty;
                for (const auto& [seen, unused] : variants)
                    if (seen == tag.text)
                        return Diagnostic{tag.line, tag.col, "duplicate sum tag '" + tag.text + "'"};
                variants.emplace_back(tag.text, std::move(ty.value()));
                if (lx.is_sym(",")) {
                    lx.next();
                    continue;
                }
                break;
            }
            if (!lx.is_sym(")")) return lx.error_here("expected ')' after sum variants");
            lx.next();
            if (variants.size() < 2)
                return Diagnostic{t.line, t.col, "sum type needs at least two variants"};
            return TypeExpr::sum(std::move(variants));
        }
        if (t.text == "fn") {
            lx.next();
            if (!lx.is_sym("(")) return lx.error_here("expected '(' after fn");
            lx.next();
            auto dom = parse_type(lx);
            if (!dom) return dom;
            if (!lx.is_sym("->")) return lx.error_here("expected '->' in fn type");
            lx.next();
            auto cod = parse_type(lx);
            if (!cod) return cod;
            if (!lx.is_sym(")")) return lx.error_here("expected ')' after fn type");
            lx.next();
            return TypeExpr::fn(std::move(dom.value()), std::move(cod.value()));
        }
        return Diagnostic{t.line, t.col, "unknown type name '" + t.text + "'"};
    }
    if (lx.is_sym("(")) {
        auto open = lx.next();
        std::vector<TypeExpr> comps;
        while (true) {
            auto c = parse_type(lx);
            if (!c) return c;
            comps.push_back(std::move(c.value()));
            if (lx.is_sym(",")) {
                lx.next();
                continue;
            }
            break;
        }
        if (!lx.is_sym(")")) return lx.error_here("expected ',' or ')' in product type");
        lx.next();
        if (comps.size() < 2)
            return Diagnostic{open.line, open.col, "product type needs at least two components"};
        return TypeExpr::product(std::move(comps));
    }
    return lx.error_here("expected type");
}

Result<TypeExpr, Diagnostic> parse_type_text(std::string_view text) {
    Lexer lx(text);
    auto t = parse_type(lx);
    if (!t) return t;
    if (!lx.scan_errors().empty()) return lx.scan_errors().front();
    if (!lx.at_end()) return lx.error_here("trailing input after type");
    return t;
}

}  // namespace ecm
