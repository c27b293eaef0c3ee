#pragma once

#include <string>
#include <vector>

#include "ecm/collection.hpp"
#include "ecm/object.hpp"
#include "ecm/personalization.hpp"
#include "ecm/result.hpp"
#include "ecm/text.hpp"

namespace ecm {

// Markup text with `{slot}` placeholders; `{{` and `}}` write literal braces.
class MarkupTemplate {
public:
    struct Segment {
        bool placeholder = false;
        std::string text;  // literal text (unescaped) or slot name
    };

    // Fails on unterminated or ill-formed placeholders.
    static Result<MarkupTemplate, std::string> parse(std::string raw);

    const std::string& raw() const { return raw_; }
    const std::vector<Segment>& segments() const { return segments_; }
    std::vector<std::string> placeholders() const;

private:
    std::string raw_;
    std::vector<Segment> segments_;
};

struct ClassDef {
    std::string name;
    std::vector<Slot> slots;
    MarkupTemplate skeleton;
    RegistrationStatus min_status = RegistrationStatus::Anonymous;

    const Slot* find_slot(std::string_view name) const;
};

struct ContentDocument {
    std::string object_name;
    std::string class_name;
    std::vector<std::pair<std::string, Val>> assignments;  // distinct slot names
};

// Aggregated declarations of one model file: classes, personalization
// rules, variable domains.
struct ModelFile {
    std::vector<ClassDef> classes;
    std::vector<PersonalizationRule> rules;
    std::vector<VariableDomain> domains;

    const ClassDef* find_class(std::string_view name) const;
    std::size_t slot_count() const;
};

// .ecm files. Diagnostics carry line/column; a parse either yields a model
// satisfying every invariant or at least one diagnostic.
Result<ModelFile, std::vector<Diagnostic>> parse_model(std::string_view text);

// .ecd files.
Result<ContentDocument, std::vector<Diagnostic>> parse_document(std::string_view text);

// Canonical model printing; parse(render_model(parse(text))) reproduces the
// structure exactly.
std::string render_model(const ModelFile& m);

}  // namespace ecm
