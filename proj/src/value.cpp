#include "ecm/value.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <set>
#include <stdexcept>
#include <tuple>

namespace ecm {

std::string_view atomic_name(AtomicKind k) {
    switch (k) {
    case AtomicKind::Text: return "Text";
    case AtomicKind::Markup: return "Markup";
    case AtomicKind::Int: return "Int";
    case AtomicKind::Bool: return "Bool";
    case AtomicKind::Date: return "Date";
    case AtomicKind::Uri: return "Uri";
    }
    return "?";
}

bool date_valid(const Date& d) {
    using namespace std::chrono;
    if (d.month < 1 || d.month > 12 || d.day < 1 || d.day > 31) return false;
    year_month_day ymd{year{d.year}, month{static_cast<unsigned>(d.month)},
                       day{static_cast<unsigned>(d.day)}};
    return ymd.ok();
}

bool date_less(const Date& a, const Date& b) {
    return std::tie(a.year, a.month, a.day) < std::tie(b.year, b.month, b.day);
}

bool is_identifier(std::string_view s) {
    if (s.empty()) return false;
    if (!std::isalpha(static_cast<unsigned char>(s[0]))) return false;
    return std::all_of(s.begin() + 1, s.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
    });
}

// ---------------------------------------------------------------------------
// TypeExpr

TypeExpr TypeExpr::atomic(AtomicKind k) {
    TypeExpr t;
    t.kind_ = Kind::Atomic;
    t.atomic_ = k;
    return t;
}

TypeExpr TypeExpr::finite(std::string name, std::vector<std::string> literals) {
    if (!is_identifier(name)) throw std::invalid_argument("finite domain name must be an identifier");
    if (literals.empty()) throw std::invalid_argument("finite domain needs at least one literal");
    std::set<std::string_view> seen;
    for (const auto& l : literals) {
        if (!is_identifier(l)) throw std::invalid_argument("finite literal must be an identifier");
        if (!seen.insert(l).second) throw std::invalid_argument("finite literals must be distinct");
    }
    TypeExpr t;
    t.kind_ = Kind::Finite;
    t.name_ = std::move(name);
    t.labels_ = std::move(literals);
    return t;
}

TypeExpr TypeExpr::fn(TypeExpr dom, TypeExpr cod) {
    TypeExpr t;
    t.kind_ = Kind::Fn;
    t.kids_.push_back(std::move(dom));
    t.kids_.push_back(std::move(cod));
    return t;
}

TypeExpr TypeExpr::product(std::vector<TypeExpr> components) {
    if (components.size() < 2) throw std::invalid_argument("product arity must be >= 2");
    TypeExpr t;
    t.kind_ = Kind::Product;
    t.kids_ = std::move(components);
    return t;
}

TypeExpr TypeExpr::seq(TypeExpr elem) {
    TypeExpr t;
    t.kind_ = Kind::Seq;
    t.kids_.push_back(std::move(elem));
    return t;
}

TypeExpr TypeExpr::sum(std::vector<std::pair<std::string, TypeExpr>> variants) {
    if (variants.size() < 2) throw std::invalid_argument("sum arity must be >= 2");
    TypeExpr t;
    t.kind_ = Kind::Sum;
    std::set<std::string_view> seen;
    for (auto& [tag, ty] : variants) {
        if (!is_identifier(tag)) throw std::invalid_argument("sum tag must be an identifier");
        if (!seen.insert(tag).second) throw std::invalid_argument("sum tags must be distinct");
        t.labels_.push_back(std::move(tag));
        t.kids_.push_back(std::move(ty));
    }
    return t;
}

AtomicKind TypeExpr::atomic_kind() const { return atomic_; }
const std::string& TypeExpr::finite_name() const { return name_; }
const std::vector<std::string>& TypeExpr::finite_literals() const { return labels_; }
const TypeExpr& TypeExpr::fn_dom() const { return kids_[0]; }
const TypeExpr& TypeExpr::fn_cod() const { return kids_[1]; }
const std::vector<TypeExpr>& TypeExpr::product_components() const { return kids_; }
const TypeExpr& TypeExpr::seq_elem() const { return kids_[0]; }
const std::vector<std::string>& TypeExpr::sum_tags() const { return labels_; }
const std::vector<TypeExpr>& TypeExpr::sum_variant_types() const { return kids_; }

const TypeExpr& TypeExpr::sum_variant(std::string_view tag) const {
    for (std::size_t i = 0; i < labels_.size(); ++i)
        if (labels_[i] == tag) return kids_[i];
    throw std::out_of_range("no such sum variant");
}

bool operator==(const TypeExpr& a, const TypeExpr& b) {
    if (a.kind_ != b.kind_) return false;
    switch (a.kind_) {
    case TypeExpr::Kind::Atomic:
        return a.atomic_ == b.atomic_;
    case TypeExpr::Kind::Finite:
        return a.name_ == b.name_ && a.labels_ == b.labels_;
    case TypeExpr::Kind::Fn:
    case TypeExpr::Kind::Product:
    case TypeExpr::Kind::Seq:
        return a.kids_ == b.kids_;
    case TypeExpr::Kind::Sum:
        return a.labels_ == b.labels_ && a.kids_ == b.kids_;
    }
    return false;
}

// ---------------------------------------------------------------------------
// Val

Val Val::text(std::string s) {
    Val v;
    v.kind_ = Kind::Text;
    v.str_ = std::move(s);
    return v;
}

Val Val::markup(std::string s) {
    Val v;
    v.kind_ = Kind::Markup;
    v.str_ = std::move(s);
    return v;
}

Val Val::integer(std::int64_t n) {
    Val v;
    v.kind_ = Kind::Int;
    v.int_ = n;
    return v;
}

Val Val::boolean(bool b) {
    Val v;
    v.kind_ = Kind::Bool;
    v.bool_ = b;
    return v;
}

Val Val::date(Date d) {
    if (!date_valid(d)) throw std::invalid_argument("invalid calendar date");
    Val v;
    v.kind_ = Kind::Date;
    v.date_ = d;
    return v;
}

namespace {

bool uri_shape_ok(std::string_view s) {
    auto sep = s.find("://");
    if (sep == std::string_view::npos || sep == 0) return false;
    if (!std::isalpha(static_cast<unsigned char>(s[0]))) return false;
    for (std::size_t i = 1; i < sep; ++i) {
        char c = s[i];
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '+' && c != '.' && c != '-')
            return false;
    }
    // the bare-token form ends at whitespace or a literal delimiter
    return s.find_first_of(" \t\r\n,;)]}\"") == std::string_view::npos;
}

}  // namespace

Val Val::uri(std::string s) {
    if (!uri_shape_ok(s)) throw std::invalid_argument("uri must look like scheme://... without delimiters");
    Val v;
    v.kind_ = Kind::Uri;
    v.str_ = std::move(s);
    return v;
}

std::optional<Val> Val::uri_checked(std::string s) {
    if (!uri_shape_ok(s)) return std::nullopt;
    return uri(std::move(s));
}

Val Val::finite(std::string domain, std::string literal) {
    if (!is_identifier(domain) || !is_identifier(literal))
        throw std::invalid_argument("finite value parts must be identifiers");
    Val v;
    v.kind_ = Kind::Finite;
    v.domain_ = std::move(domain);
    v.str_ = std::move(literal);
    return v;
}

Val Val::tuple(std::vector<Val> items) {
    if (items.size() < 2) throw std::invalid_argument("tuple arity must be >= 2");
    Val v;
    v.kind_ = Kind::Tuple;
    v.items_ = std::move(items);
    return v;
}

Val Val::seq(std::vector<Val> items) {
    Val v;
    v.kind_ = Kind::Seq;
    v.items_ = std::move(items);
    return v;
}

Val Val::inj(std::string tag, Val payload) {
    if (!is_identifier(tag)) throw std::invalid_argument("injection tag must be an identifier");
    Val v;
    v.kind_ = Kind::Inj;
    v.domain_ = std::move(tag);
    v.items_.push_back(std::move(payload));
    return v;
}

const std::string& Val::str() const { return str_; }
const std::string& Val::finite_domain() const { return domain_; }
const std::string& Val::inj_tag() const { return domain_; }
std::int64_t Val::as_int() const { return int_; }
bool Val::as_bool() const { return bool_; }
const Date& Val::as_date() const { return date_; }
const std::vector<Val>& Val::items() const { return items_; }
const Val& Val::inj_payload() const { return items_[0]; }

bool typecheck(const Val& v, const TypeExpr& t) {
    switch (t.kind()) {
    case TypeExpr::Kind::Atomic:
        switch (t.atomic_kind()) {
        case AtomicKind::Text: return v.kind() == Val::Kind::Text;
        case AtomicKind::Markup: return v.kind() == Val::Kind::Markup;
        case AtomicKind::Int: return v.kind() == Val::Kind::Int;
        case AtomicKind::Bool: return v.kind() == Val::Kind::Bool;
        case AtomicKind::Date: return v.kind() == Val::Kind::Date;
        case AtomicKind::Uri: return v.kind() == Val::Kind::Uri;
        }
        return false;
    case TypeExpr::Kind::Finite: {
        if (v.kind() != Val::Kind::Finite) return false;
        if (v.finite_domain() != t.finite_name()) return false;
        const auto& lits = t.finite_literals();
        return std::find(lits.begin(), lits.end(), v.str()) != lits.end();
    }
    case TypeExpr::Kind::Fn:
        return false;  // no runtime function values
    case TypeExpr::Kind::Product: {
        if (v.kind() != Val::Kind::Tuple) return false;
        const auto& comps = t.product_components();
        if (v.items().size() != comps.size()) return false;
        for (std::size_t i = 0; i < comps.size(); ++i)
            if (!typecheck(v.items()[i], comps[i])) return false;
        return true;
    }
    case TypeExpr::Kind::Seq: {
        if (v.kind() != Val::Kind::Seq) return false;
        for (const auto& e : v.items())
            if (!typecheck(e, t.seq_elem())) return false;
        return true;
    }
    case TypeExpr::Kind::Sum: {
        if (v.kind() != Val::Kind::Inj) return false;
        const auto& tags = t.sum_tags();
        for (std::size_t i = 0; i < tags.size(); ++i)
            if (tags[i] == v.inj_tag()) return typecheck(v.inj_payload(), t.sum_variant_types()[i]);
        return false;
    }
    }
    return false;
}

bool value_eq(const Val& a, const Val& b) {
    if (a.kind() != b.kind()) return false;
    switch (a.kind()) {
    case Val::Kind::Text:
    case Val::Kind::Markup:
    case Val::Kind::Uri:
        return a.str() == b.str();
    case Val::Kind::Int:
        return a.as_int() == b.as_int();
    case Val::Kind::Bool:
        return a.as_bool() == b.as_bool();
    case Val::Kind::Date:
        return a.as_date() == b.as_date();
    case Val::Kind::Finite:
        return a.finite_domain() == b.finite_domain() && a.str() == b.str();
    case Val::Kind::Tuple:
    case Val::Kind::Seq: {
        if (a.items().size() != b.items().size()) return false;
        for (std::size_t i = 0; i < a.items().size(); ++i)
            if (!value_eq(a.items()[i], b.items()[i])) return false;
        return true;
    }
    case Val::Kind::Inj:
        return a.inj_tag() == b.inj_tag() && value_eq(a.inj_payload(), b.inj_payload());
    }
    return false;
}

bool value_less(const Val& a, const Val& b) {
    if (a.kind() != b.kind()) return static_cast<int>(a.kind()) < static_cast<int>(b.kind());
    switch (a.kind()) {
    case Val::Kind::Text:
    case Val::Kind::Markup:
    case Val::Kind::Uri:
        return a.str() < b.str();
    case Val::Kind::Int:
        return a.as_int() < b.as_int();
    case Val::Kind::Bool:
        return !a.as_bool() && b.as_bool();
    case Val::Kind::Date:
        return date_less(a.as_date(), b.as_date());
    case Val::Kind::Finite:
        if (a.finite_domain() != b.finite_domain()) return a.finite_domain() < b.finite_domain();
        return a.str() < b.str();
    case Val::Kind::Tuple:
    case Val::Kind::Seq: {
        const auto& xs = a.items();
        const auto& ys = b.items();
        for (std::size_t i = 0; i < std::min(xs.size(), ys.size()); ++i) {
            if (value_less(xs[i], ys[i])) return true;
            if (value_less(ys[i], xs[i])) return false;
        }
        return xs.size() < ys.size();
    }
    case Val::Kind::Inj:
        if (a.inj_tag() != b.inj_tag()) return a.inj_tag() < b.inj_tag();
        return value_less(a.inj_payload(), b.inj_payload());
    }
    return false;
}

bool same_runtime_type(const Val& a, const Val& b) {
    if (a.kind() != b.kind()) return false;
    switch (a.kind()) {
    case Val::Kind::Finite:
        return a.finite_domain() == b.finite_domain();
    case Val::Kind::Tuple: {
        if (a.items().size() != b.items().size()) return false;
        for (std::size_t i = 0; i < a.items().size(); ++i)
            if (!same_runtime_type(a.items()[i], b.items()[i])) return false;
        return true;
    }
    case Val::Kind::Seq:
        // empty sequences carry no element type of their own
        if (a.items().empty() || b.items().empty()) return true;
        return same_runtime_type(a.items()[0], b.items()[0]);
    case Val::Kind::Inj:
        return a.inj_tag() == b.inj_tag() && same_runtime_type(a.inj_payload(), b.inj_payload());
    default:
        return true;
    }
}

namespace {

std::string quote_string(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        switch (c) {
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        case '\n': out += "\\n"; break;
        case '\t': out += "\\t"; break;
        case '\r': out += "\\r"; break;
        default: out += c;
        }
    }
    out += '"';
    return out;
}

std::string render_date(const Date& d) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02d-%02d", d.year, d.month, d.day);
    return buf;
}

}  // namespace

std::string render_literal(const Val& v) {
    switch (v.kind()) {
    case Val::Kind::Text:
        return quote_string(v.str());
    case Val::Kind::Markup:
        return "markup " + quote_string(v.str());
    case Val::Kind::Int:
        return std::to_string(v.as_int());
    case Val::Kind::Bool:
        return v.as_bool() ? "true" : "false";
    case Val::Kind::Date:
        return render_date(v.as_date());
    case Val::Kind::Uri:
        return v.str();
    case Val::Kind::Finite:
        return v.finite_domain() + "." + v.str();
    case Val::Kind::Tuple: {
        std::string out = "(";
        for (std::size_t i = 0; i < v.items().size(); ++i) {
            if (i) out += ", ";
            out += render_literal(v.items()[i]);
        }
        return out + ")";
    }
    case Val::Kind::Seq: {
        std::string out = "[";
        for (std::size_t i = 0; i < v.items().size(); ++i) {
            if (i) out += ", ";
            out += render_literal(v.items()[i]);
        }
        return out + "]";
    }
    case Val::Kind::Inj:
        return v.inj_tag() + "(" + render_literal(v.inj_payload()) + ")";
    }
    return "?";
}

Val adapt_literal(const Val& v, const TypeExpr& t) {
    switch (t.kind()) {
    case TypeExpr::Kind::Atomic:
        if (v.kind() == Val::Kind::Text) {
            if (t.atomic_kind() == AtomicKind::Markup) return Val::markup(v.str());
            if (t.atomic_kind() == AtomicKind::Uri) {
                if (auto u = Val::uri_checked(v.str())) return *u;
            }
        }
        return v;
    case TypeExpr::Kind::Finite:
        if (v.kind() == Val::Kind::Text && is_identifier(v.str()))
            return Val::finite(t.finite_name(), v.str());
        return v;
    case TypeExpr::Kind::Product: {
        if (v.kind() != Val::Kind::Tuple) return v;
        const auto& comps = t.product_components();
        if (v.items().size() != comps.size()) return v;
        std::vector<Val> items;
        for (std::size_t i = 0; i < comps.size(); ++i)
            items.push_back(adapt_literal(v.items()[i], comps[i]));
        return Val::tuple(std::move(items));
    }
    case TypeExpr::Kind::Seq: {
        if (v.kind() != Val::Kind::Seq) return v;
        std::vector<Val> items;
        for (const auto& e : v.items()) items.push_back(adapt_literal(e, t.seq_elem()));
        return Val::seq(std::move(items));
    }
    case TypeExpr::Kind::Sum: {
        if (v.kind() != Val::Kind::Inj) return v;
        const auto& tags = t.sum_tags();
        for (std::size_t i = 0; i < tags.size(); ++i)
            if (tags[i] == v.inj_tag())
                return Val::inj(v.inj_tag(), adapt_literal(v.inj_payload(), t.sum_variant_types()[i]));
        return v;
    }
    case TypeExpr::Kind::Fn:
        return v;
    }
    return v;
}

std::string render_type(const TypeExpr& t) {
    switch (t.kind()) {
    case TypeExpr::Kind::Atomic:
        return std::string(atomic_name(t.atomic_kind()));
    case TypeExpr::Kind::Finite: {
        std::string out = "enum " + t.finite_name() + "(";
        const auto& lits = t.finite_literals();
        for (std::size_t i = 0; i < lits.size(); ++i) {
            if (i) out += ", ";
            out += lits[i];
        }
        return out + ")";
    }
    case TypeExpr::Kind::Fn:
        return "fn(" + render_type(t.fn_dom()) + " -> " + render_type(t.fn_cod()) + ")";
    case TypeExpr::Kind::Product: {
        std::string out = "(";
        const auto& comps = t.product_components();
        for (std::size_t i = 0; i < comps.size(); ++i) {
            if (i) out += ", ";
            out += render_type(comps[i]);
        }
        return out + ")";
    }
    case TypeExpr::Kind::Seq:
        return "seq(" + render_type(t.seq_elem()) + ")";
    case TypeExpr::Kind::Sum: {
        std::string out = "sum(";
        const auto& tags = t.sum_tags();
        for (std::size_t i = 0; i < tags.size(); ++i) {
            if (i) out += ", ";
            out += tags[i] + ": " + render_type(t.sum_variant_types()[i]);
        }
        return out + ")";
    }
    }
    return "?";
}

}  // namespace ecm
