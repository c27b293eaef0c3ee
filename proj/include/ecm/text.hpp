#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ecm/result.hpp"
#include "ecm/value.hpp"

namespace ecm {

struct Diagnostic {
    int line = 0;
    int col = 0;
    std::string message;
};

std::string render_diagnostic(const Diagnostic& d);

// Token scanner shared by every textual format. `#` starts a comment that
// runs to end of line; newlines are plain whitespace (line-oriented formats
// lex one line at a time). Bare tokens of the shape scheme://... are
// recognized as uri literals and run until whitespace or a delimiter.
class Lexer {
public:
    enum class TokKind { End, Ident, Int, Date, String, Uri, Sym };

    struct Token {
        TokKind kind = TokKind::End;
        std::string text;          // Ident/Uri/Sym spelling; String holds decoded content
        std::int64_t int_value = 0;
        Date date_value;
        int line = 1;
        int col = 1;
    };

    explicit Lexer(std::string_view text, int first_line = 1);

    const Token& peek() const { return tok_; }
    Token next();
    bool at_end() const { return tok_.kind == TokKind::End; }

    // True if the current token is the given symbol / identifier.
    bool is_sym(std::string_view s) const;
    bool is_ident(std::string_view s) const;

    // Diagnostics produced while scanning (bad escapes, unterminated strings).
    const std::vector<Diagnostic>& scan_errors() const { return errors_; }

    Diagnostic error_here(std::string message) const;

private:
    void advance();

    std::string_view src_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
    Token tok_;
    std::vector<Diagnostic> errors_;
};

// Literal grammar shared by documents, rules, predicates, contexts, machine
// programs and machine input files:
//   int | "string" | markup "string" | true | false | YYYY-MM-DD |
//   scheme://... | Domain.literal | (l1, l2, ...) | [l1, ...] | tag(l)
Result<Val, Diagnostic> parse_literal(Lexer& lx);

// Parses one literal from a complete string; trailing tokens are an error.
Result<Val, Diagnostic> parse_literal_text(std::string_view text);

// Type syntax: Text | Markup | Int | Bool | Date | Uri | enum Name(a, b) |
// (T1, T2, ...) | seq(T) | sum(tag: T, ...) | fn(T -> T)
Result<TypeExpr, Diagnostic> parse_type(Lexer& lx);

Result<TypeExpr, Diagnostic> parse_type_text(std::string_view text);

}  // namespace ecm
