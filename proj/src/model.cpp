#include "ecm/model.hpp"

#include <algorithm>
#include <set>
#include <tuple>

namespace ecm {

// ---------------------------------------------------------------------------
// MarkupTemplate

Result<MarkupTemplate, std::string> MarkupTemplate::parse(std::string raw) {
    MarkupTemplate t;
    std::vector<Segment> segs;
    std::string text;
    std::size_t i = 0;
    while (i < raw.size()) {
        char c = raw[i];
        if (c == '{') {
            if (i + 1 < raw.size() && raw[i + 1] == '{') {
                text += '{';
                i += 2;
                continue;
            }
            std::size_t close = raw.find('}', i + 1);
            if (close == std::string::npos) return std::string("unterminated placeholder");
            std::string name = raw.substr(i + 1, close - i - 1);
            if (!is_identifier(name))
                return "placeholder name '" + name + "' is not an identifier";
            if (!text.empty()) {
                segs.push_back({false, std::move(text)});
                text.clear();
            }
            segs.push_back({true, std::move(name)});
            i = close + 1;
            continue;
        }
        if (c == '}') {
            if (i + 1 < raw.size() && raw[i + 1] == '}') {
                text += '}';
                i += 2;
                continue;
            }
            text += '}';
            ++i;
            continue;
        }
        text += c;
        ++i;
    }
    if (!text.empty()) segs.push_back({false, std::move(text)});
    t.raw_ = std::move(raw);
    t.segments_ = std::move(segs);
    return t;
}

std::vector<std::string> MarkupTemplate::placeholders() const {
    std::vector<std::string> out;
    for (const auto& s : segments_)
        if (s.placeholder && std::find(out.begin(), out.end(), s.text) == out.end())
            out.push_back(s.text);
    return out;
}

const Slot* ClassDef::find_slot(std::string_view slot_name) const {
    for (const auto& s : slots)
        if (s.name == slot_name) return &s;
    return nullptr;
}

const ClassDef* ModelFile::find_class(std::string_view name) const {
    for (const auto& c : classes)
        if (c.name == name) return &c;
    return nullptr;
}

std::size_t ModelFile::slot_count() const {
    std::size_t n = 0;
    for (const auto& c : classes) n += c.slots.size();
    return n;
}

// ---------------------------------------------------------------------------
// Model parsing

namespace {

bool model_keyword(std::string_view s) {
    return s == "class" || s == "rule" || s == "domain" || s == "slot" || s == "skeleton" ||
           s == "min_status" || s == "suppress" || s == "for" || s == "when";
}

struct ModelParser {
    Lexer lx;
    std::vector<Diagnostic> diags;

    explicit ModelParser(std::string_view text) : lx(text) {}

    void fail(Diagnostic d) { diags.push_back(std::move(d)); }

    // skips to the next top-level keyword so several diagnostics can be
    // reported in one pass
    void recover() {
        int depth = 0;
        while (!lx.at_end()) {
            if (depth == 0 && lx.peek().kind == Lexer::TokKind::Ident &&
                (lx.is_ident("class") || lx.is_ident("rule") || lx.is_ident("domain")))
                return;
            if (lx.is_sym("{")) ++depth;
            if (lx.is_sym("}") && depth > 0) --depth;
            lx.next();
        }
    }

    std::optional<std::string> expect_ident(const char* what) {
        if (lx.peek().kind != Lexer::TokKind::Ident || model_keyword(lx.peek().text)) {
            fail(lx.error_here(std::string("expected ") + what));
            return std::nullopt;
        }
        return lx.next().text;
    }

    bool expect_sym(std::string_view s) {
        if (!lx.is_sym(s)) {
            fail(lx.error_here("expected '" + std::string(s) + "'"));
            return false;
        }
        lx.next();
        return true;
    }

    void skip_separators() {
        while (lx.is_sym(";")) lx.next();
    }

    bool parse_class(ModelFile& m) {
        auto kw = lx.next();  // 'class'
        auto name = expect_ident("class name");
        if (!name || !expect_sym("{")) return false;

        ClassDef cls;
        cls.name = *name;
        std::optional<MarkupTemplate> skeleton;
        bool have_status = false;

        while (!lx.is_sym("}")) {
            skip_separators();
            if (lx.is_sym("}")) break;
            if (lx.at_end()) {
                fail(lx.error_here("unterminated class block"));
                return false;
            }
            if (lx.is_ident("slot")) {
                lx.next();
                auto pos = lx.peek();
                auto slot_name = expect_ident("slot name");
                if (!slot_name || !expect_sym(":")) return false;
                auto ty = parse_type(lx);
                if (!ty) {
                    fail(std::move(ty.error()));
                    return false;
                }
                if (cls.find_slot(*slot_name))
                    fail({pos.line, pos.col, "duplicate slot '" + *slot_name + "'"});
                else
                    cls.slots.push_back(Slot{std::move(*slot_name), std::move(ty.value())});
            } else if (lx.is_ident("skeleton")) {
                auto pos = lx.next();
                if (lx.peek().kind != Lexer::TokKind::String) {
                    fail(lx.error_here("expected string after 'skeleton'"));
                    return false;
                }
                auto raw = lx.next();
                if (skeleton) {
                    fail({pos.line, pos.col, "duplicate skeleton"});
                } else {
                    auto tpl = MarkupTemplate::parse(std::move(raw.text));
                    if (!tpl) {
                        fail({raw.line, raw.col, tpl.error()});
                        return false;
                    }
                    skeleton = std::move(tpl.value());
                }
            } else if (lx.is_ident("min_status")) {
                auto pos = lx.next();
                if (lx.peek().kind != Lexer::TokKind::Ident) {
                    fail(lx.error_here("expected registration status"));
                    return false;
                }
                auto st = lx.next();
                auto parsed = parse_status(st.text);
                if (!parsed) {
                    fail({st.line, st.col, "unknown status '" + st.text + "'"});
                } else if (have_status) {
                    fail({pos.line, pos.col, "duplicate min_status"});
                } else {
                    cls.min_status = *parsed;
                    have_status = true;
                }
            } else {
                fail(lx.error_here("expected 'slot', 'skeleton' or 'min_status'"));
                return false;
            }
        }
        lx.next();  // '}'

        if (!skeleton) {
            fail({kw.line, kw.col, "class '" + cls.name + "' has no skeleton"});
            return true;
        }
        for (const auto& ph : skeleton->placeholders())
            if (!cls.find_slot(ph))
                fail({kw.line, kw.col,
                      "unknown placeholder '{" + ph + "}' in class '" + cls.name + "'"});
        cls.skeleton = std::move(*skeleton);
        m.classes.push_back(std::move(cls));
        return true;
    }

    bool parse_rule(ModelFile& m) {
        auto kw = lx.next();  // 'rule'
        if (!lx.is_ident("for")) {
            fail(lx.error_here("expected 'for'"));
            return false;
        }
        lx.next();
        auto class_name = expect_ident("class name");
        if (!class_name) return false;
        if (!lx.is_ident("when")) {
            fail(lx.error_here("expected 'when'"));
            return false;
        }
        lx.next();
        auto guard = parse_guard(lx);
        if (!guard) {
            fail(std::move(guard.error()));
            return false;
        }
        if (guard.value().groups_read.size() != 1) {
            fail({kw.line, kw.col, "rule guard must read exactly one parameter group"});
            // keep parsing the body to catch further errors
        }
        if (!expect_sym("{")) return false;

        PersonalizationRule rule;
        rule.class_name = std::move(*class_name);
        rule.guard = std::move(guard.value().formula);
        if (!guard.value().groups_read.empty()) rule.group = guard.value().groups_read.front();

        while (!lx.is_sym("}")) {
            skip_separators();
            if (lx.is_sym("}")) break;
            if (lx.at_end()) {
                fail(lx.error_here("unterminated rule block"));
                return false;
            }
            if (lx.is_ident("suppress")) {
                auto pos = lx.next();
                if (rule.suppress) fail({pos.line, pos.col, "duplicate suppress"});
                rule.suppress = true;
                continue;
            }
            auto pos = lx.peek();
            auto slot = expect_ident("slot name");
            if (!slot || !expect_sym("=")) return false;
            auto lit = parse_literal(lx);
            if (!lit) {
                fail(std::move(lit.error()));
                return false;
            }
            bool dup = std::any_of(rule.overrides.begin(), rule.overrides.end(),
                                   [&](const auto& kv) { return kv.first == *slot; });
            if (dup)
                fail({pos.line, pos.col, "duplicate override for slot '" + *slot + "'"});
            else
                rule.overrides.emplace_back(std::move(*slot), std::move(lit.value()));
        }
        lx.next();  // '}'

        if (rule.suppress && !rule.overrides.empty())
            fail({kw.line, kw.col, "a rule either suppresses or overrides, not both"});
        if (!rule.suppress && rule.overrides.empty())
            fail({kw.line, kw.col, "rule has no effect: add overrides or 'suppress'"});
        m.rules.push_back(std::move(rule));
        return true;
    }

    bool parse_domain(ModelFile& m) {
        lx.next();  // 'domain'
        auto pos = lx.peek();
        auto name = expect_ident("domain name");
        if (!name || !expect_sym(":")) return false;
        auto ty = parse_type(lx);
        if (!ty) {
            fail(std::move(ty.error()));
            return false;
        }
        if (!expect_sym("{")) return false;

        VariableDomain vd{std::move(*name), std::move(ty.value()), {}};

        while (!lx.is_sym("}")) {
            skip_separators();
            if (lx.is_sym("}")) break;
            if (lx.at_end()) {
                fail(lx.error_here("unterminated domain block"));
                return false;
            }
            auto key_pos = lx.peek();
            auto key = expect_ident("assignment key");
            if (!key || !expect_sym(":")) return false;
            if (!lx.is_sym("[")) {
                fail(lx.error_here("expected '[' to open the extent"));
                return false;
            }
            lx.next();
            std::vector<Individual> extent;
            if (!lx.is_sym("]")) {
                while (true) {
                    auto lit = parse_literal(lx);
                    if (!lit) {
                        fail(std::move(lit.error()));
                        return false;
                    }
                    extent.emplace_back(adapt_literal(lit.value(), vd.elem_ty));
                    if (lx.is_sym(",")) {
                        lx.next();
                        continue;
                    }
                    break;
                }
            }
            if (!expect_sym("]")) return false;
            bool dup = std::any_of(vd.extents.begin(), vd.extents.end(),
                                   [&](const auto& kv) { return kv.first == *key; });
            if (dup)
                fail({key_pos.line, key_pos.col, "duplicate assignment key '" + *key + "'"});
            else
                vd.extents.emplace_back(std::move(*key), std::move(extent));
        }
        lx.next();  // '}'

        bool dup = std::any_of(m.domains.begin(), m.domains.end(),
                               [&](const VariableDomain& d) { return d.name == vd.name; });
        if (dup) fail({pos.line, pos.col, "duplicate domain '" + vd.name + "'"});
        m.domains.push_back(std::move(vd));
        return true;
    }

    // cross-declaration checks once the whole file is read
    void validate(ModelFile& m) {
        std::set<std::string_view> class_names;
        for (const auto& c : m.classes)
            if (!class_names.insert(c.name).second)
                fail({1, 1, "duplicate class '" + c.name + "'"});

        for (auto& rule : m.rules) {
            const ClassDef* cls = m.find_class(rule.class_name);
            if (!cls) {
                fail({1, 1, "rule references unknown class '" + rule.class_name + "'"});
                continue;
            }
            for (auto& [slot_name, value] : rule.overrides) {
                const Slot* slot = cls->find_slot(slot_name);
                if (!slot) {
                    fail({1, 1, "rule for '" + rule.class_name + "' overrides unknown slot '" +
                                    slot_name + "'"});
                    continue;
                }
                value = adapt_literal(value, slot->ty);
                if (!typecheck(value, slot->ty))
                    fail({1, 1, "override for '" + rule.class_name + "." + slot_name +
                                    "' does not typecheck against " + render_type(slot->ty)});
            }
        }

        for (const auto& vd : m.domains) {
            for (const auto& [key, extent] : vd.extents) {
                for (const auto& elem : extent) {
                    const Val* v = std::get_if<Val>(&elem);
                    if (v && !typecheck(*v, vd.elem_ty))
                        fail({1, 1, "domain '" + vd.name + "' extent '" + key +
                                        "' member " + render_literal(*v) +
                                        " does not typecheck against " +
                                        render_type(vd.elem_ty)});
                }
            }
        }
    }

    Result<ModelFile, std::vector<Diagnostic>> parse() {
        ModelFile m;
        while (!lx.at_end()) {
            skip_separators();
            if (lx.at_end()) break;
            bool ok;
            if (lx.is_ident("class"))
                ok = parse_class(m);
            else if (lx.is_ident("rule"))
                ok = parse_rule(m);
            else if (lx.is_ident("domain"))
                ok = parse_domain(m);
            else {
                fail(lx.error_here("expected 'class', 'rule' or 'domain'"));
                ok = false;
            }
            if (!ok) recover();
        }
        validate(m);
        for (const auto& d : lx.scan_errors()) diags.push_back(d);
        if (!diags.empty()) {
            std::sort(diags.begin(), diags.end(), [](const Diagnostic& a, const Diagnostic& b) {
                return std::tie(a.line, a.col) < std::tie(b.line, b.col);
            });
            return diags;
        }
        return m;
    }
};

}  // namespace

Result<ModelFile, std::vector<Diagnostic>> parse_model(std::string_view text) {
    ModelParser p(text);
    return p.parse();
}

Result<ContentDocument, std::vector<Diagnostic>> parse_document(std::string_view text) {
    Lexer lx(text);
    std::vector<Diagnostic> diags;
    ContentDocument doc;

    auto bail = [&](Diagnostic d) -> Result<ContentDocument, std::vector<Diagnostic>> {
        diags.push_back(std::move(d));
        for (const auto& e : lx.scan_errors()) diags.push_back(e);
        return diags;
    };

    if (!lx.is_ident("object")) return bail(lx.error_here("expected 'object'"));
    lx.next();
    if (lx.peek().kind != Lexer::TokKind::Ident)
        return bail(lx.error_here("expected object name"));
    doc.object_name = lx.next().text;
    if (!lx.is_sym(":")) return bail(lx.error_here("expected ':' after object name"));
    lx.next();
    if (lx.peek().kind != Lexer::TokKind::Ident)
        return bail(lx.error_here("expected class name"));
    doc.class_name = lx.next().text;
    if (!lx.is_sym("{")) return bail(lx.error_here("expected '{'"));
    lx.next();

    while (!lx.is_sym("}")) {
        while (lx.is_sym(";")) lx.next();
        if (lx.is_sym("}")) break;
        if (lx.at_end()) return bail(lx.error_here("unterminated assignment block"));
        if (lx.peek().kind != Lexer::TokKind::Ident)
            return bail(lx.error_here("expected slot name"));
        auto slot = lx.next();
        if (!lx.is_sym("=")) return bail(lx.error_here("expected '=' after slot name"));
        lx.next();
        auto lit = parse_literal(lx);
        if (!lit) return bail(std::move(lit.error()));
        bool dup = std::any_of(doc.assignments.begin(), doc.assignments.end(),
                               [&](const auto& kv) { return kv.first == slot.text; });
        if (dup)
            diags.push_back({slot.line, slot.col, "duplicate assignment to '" + slot.text + "'"});
        else
            doc.assignments.emplace_back(std::move(slot.text), std::move(lit.value()));
    }
    lx.next();
    if (!lx.at_end()) diags.push_back(lx.error_here("trailing input after document"));

    for (const auto& d : lx.scan_errors()) diags.push_back(d);
    if (!diags.empty()) return diags;
    return doc;
}

// ---------------------------------------------------------------------------
// Canonical printing

namespace {

std::string quote(const std::string& s) {
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

std::string render_individual(const Individual& elem) {
    if (const Val* v = std::get_if<Val>(&elem)) return render_literal(*v);
    return "?";  // object and collection extents have no file syntax
}

}  // namespace

std::string render_model(const ModelFile& m) {
    std::string out;
    for (const auto& c : m.classes) {
        out += "class " + c.name + " {\n";
        for (const auto& s : c.slots) out += "  slot " + s.name + ": " + render_type(s.ty) + "\n";
        out += "  skeleton " + quote(c.skeleton.raw()) + "\n";
        if (c.min_status != RegistrationStatus::Anonymous)
            out += "  min_status " + std::string(status_name(c.min_status)) + "\n";
        out += "}\n";
    }
    for (const auto& r : m.rules) {
        out += "rule for " + r.class_name + " when " + render_formula(r.guard) + " {";
        if (r.suppress) {
            out += " suppress";
        } else {
            bool first = true;
            for (const auto& [slot, value] : r.overrides) {
                out += first ? " " : "; ";
                first = false;
                out += slot + " = " + render_literal(value);
            }
        }
        out += " }\n";
    }
    for (const auto& d : m.domains) {
        out += "domain " + d.name + ": " + render_type(d.elem_ty) + " {\n";
        for (const auto& [key, extent] : d.extents) {
            out += "  " + key + ": [";
            for (std::size_t i = 0; i < extent.size(); ++i) {
                if (i) out += ", ";
                out += render_individual(extent[i]);
            }
            out += "]\n";
        }
        out += "}\n";
    }
    return out;
}

}  // namespace ecm
