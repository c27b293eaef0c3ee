#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ecm {

enum class AtomicKind { Text, Markup, Int, Bool, Date, Uri };

std::string_view atomic_name(AtomicKind k);

// Calendar date, ISO-8601. Validity follows the proleptic Gregorian calendar.
struct Date {
    int year = 1970;
    int month = 1;
    int day = 1;

    friend bool operator==(const Date&, const Date&) = default;
};

bool date_valid(const Date& d);
bool date_less(const Date& a, const Date& b);

// The type universe: six atomic kinds plus the four constructors
// (functional space, product, sequence, disjunctive sum) and finite
// enumerations. Fn types never describe runtime values; they exist so the
// schema layer can name and reject them.
class TypeExpr {
public:
    enum class Kind { Atomic, Finite, Fn, Product, Seq, Sum };

    static TypeExpr atomic(AtomicKind k);
    // literals must be nonempty, identifier-shaped and pairwise distinct.
    static TypeExpr finite(std::string name, std::vector<std::string> literals);
    static TypeExpr fn(TypeExpr dom, TypeExpr cod);
    // arity >= 2
    static TypeExpr product(std::vector<TypeExpr> components);
    static TypeExpr seq(TypeExpr elem);
    // arity >= 2, tags pairwise distinct
    static TypeExpr sum(std::vector<std::pair<std::string, TypeExpr>> variants);

    Kind kind() const { return kind_; }
    AtomicKind atomic_kind() const;
    const std::string& finite_name() const;
    const std::vector<std::string>& finite_literals() const;
    const TypeExpr& fn_dom() const;
    const TypeExpr& fn_cod() const;
    const std::vector<TypeExpr>& product_components() const;
    const TypeExpr& seq_elem() const;
    const std::vector<std::string>& sum_tags() const;
    const TypeExpr& sum_variant(std::string_view tag) const;
    const std::vector<TypeExpr>& sum_variant_types() const;

    // Structural equality.
    friend bool operator==(const TypeExpr& a, const TypeExpr& b);
    friend bool operator!=(const TypeExpr& a, const TypeExpr& b) { return !(a == b); }

private:
    TypeExpr() = default;

    Kind kind_ = Kind::Atomic;
    AtomicKind atomic_ = AtomicKind::Text;
    std::string name_;                 // Finite name
    std::vector<std::string> labels_;  // Finite literals / Sum tags
    std::vector<TypeExpr> kids_;       // Fn: [dom, cod]; Product; Seq: [elem]; Sum: variant types
};

// Runtime value universe. Fn has no value form; every other constructor does.
class Val {
public:
    enum class Kind { Text, Markup, Int, Bool, Date, Uri, Finite, Tuple, Seq, Inj };

    static Val text(std::string s);
    static Val markup(std::string s);
    static Val integer(std::int64_t n);
    static Val boolean(bool b);
    static Val date(Date d);
    // must look like scheme://... with no whitespace or literal delimiters,
    // so the bare-token literal syntax round-trips.
    static Val uri(std::string s);
    static std::optional<Val> uri_checked(std::string s);
    static Val finite(std::string domain, std::string literal);
    static Val tuple(std::vector<Val> items);  // arity >= 2
    static Val seq(std::vector<Val> items);
    static Val inj(std::string tag, Val payload);

    Kind kind() const { return kind_; }
    const std::string& str() const;          // Text/Markup/Uri content, Finite literal
    const std::string& finite_domain() const;
    const std::string& inj_tag() const;
    std::int64_t as_int() const;
    bool as_bool() const;
    const Date& as_date() const;
    const std::vector<Val>& items() const;   // Tuple/Seq elements
    const Val& inj_payload() const;

private:
    Val() = default;

    Kind kind_ = Kind::Text;
    std::string str_;
    std::string domain_;  // Finite domain, Inj tag
    std::int64_t int_ = 0;
    bool bool_ = false;
    Date date_;
    std::vector<Val> items_;
};

// True iff v inhabits t under the structural typing rules. Total and
// deterministic; never errors.
bool typecheck(const Val& v, const TypeExpr& t);

// Structural equality. Values of different kinds are never equal.
bool value_eq(const Val& a, const Val& b);

// Canonical total order over all values: kind rank first, then within a
// kind (Int numeric, Date calendar, string-likes bytewise, false < true,
// Finite by (domain, literal), composites lexicographic). Gives order
// comparisons a deterministic, platform-independent meaning everywhere.
bool value_less(const Val& a, const Val& b);

// Runtime type compatibility as decidable from the values alone: same kind,
// same finite domain, componentwise for tuples, elementwise for nonempty
// sequences, same tag and payload type for injections. This is the notion
// the machine uses for comparison typing and first-binding type fixing.
bool same_runtime_type(const Val& a, const Val& b);

// Canonical literal syntax (parseable back by the shared literal parser).
std::string render_literal(const Val& v);

// Canonical type syntax as written in model files and var declarations.
std::string render_type(const TypeExpr& t);

// Adjusts a syntactic literal to a declared type where the surface syntax
// cannot tell the kinds apart: quoted strings adopt Markup/Uri/Finite slots,
// recursively through tuples, sequences and injections. Values that cannot
// fit are returned unchanged (the typecheck then fails normally).
Val adapt_literal(const Val& v, const TypeExpr& t);

bool is_identifier(std::string_view s);

}  // namespace ecm
