#include "ecm/schema.hpp"

#include <optional>
#include <set>

namespace ecm {

std::string render_schema_error(const SchemaError& e) {
    switch (e.kind) {
    case SchemaError::Kind::NotRepresentable: return "NotRepresentable(" + e.detail + ")";
    case SchemaError::Kind::NameCollision: return "NameCollision(" + e.detail + ")";
    }
    return "?";
}

namespace {

constexpr const char* kVarchar = "VARCHAR(1024)";

const char* atomic_ddl(AtomicKind k) {
    switch (k) {
    case AtomicKind::Text:
    case AtomicKind::Uri:
        return kVarchar;
    case AtomicKind::Markup: return "TEXT";
    case AtomicKind::Int: return "INTEGER";
    case AtomicKind::Bool: return "BOOLEAN";
    case AtomicKind::Date: return "DATE";
    }
    return kVarchar;
}

// Inline column group for one slot-derived name/type pair. Sequences only
// appear at the top of a slot type (they map to child relations there);
// anywhere deeper there is no relational spot for them.
std::optional<SchemaError> columns_for(const std::string& where, const std::string& prefix,
                                       const TypeExpr& ty, std::vector<Column>& out) {
    switch (ty.kind()) {
    case TypeExpr::Kind::Atomic:
        out.push_back({prefix, atomic_ddl(ty.atomic_kind()), true});
        return std::nullopt;
    case TypeExpr::Kind::Finite:
        out.push_back({prefix, kVarchar, true});
        return std::nullopt;
    case TypeExpr::Kind::Product: {
        const auto& comps = ty.product_components();
        for (std::size_t i = 0; i < comps.size(); ++i) {
            if (auto err = columns_for(where, prefix + "_" + std::to_string(i + 1), comps[i], out))
                return err;
        }
        return std::nullopt;
    }
    case TypeExpr::Kind::Sum: {
        out.push_back({prefix + "_tag", kVarchar, true});
        const auto& tags = ty.sum_tags();
        for (std::size_t i = 0; i < tags.size(); ++i) {
            if (auto err =
                    columns_for(where, prefix + "_" + tags[i], ty.sum_variant_types()[i], out))
                return err;
        }
        return std::nullopt;
    }
    case TypeExpr::Kind::Seq:
        return SchemaError{SchemaError::Kind::NotRepresentable,
                           where + ": nested sequence has no relational mapping"};
    case TypeExpr::Kind::Fn:
        return SchemaError{SchemaError::Kind::NotRepresentable, where + ": function type"};
    }
    return std::nullopt;
}

std::optional<SchemaError> check_distinct_columns(const Relation& r) {
    std::set<std::string_view> seen;
    for (const auto& c : r.columns)
        if (!seen.insert(c.name).second)
            return SchemaError{SchemaError::Kind::NameCollision, r.name + "." + std::string(c.name)};
    return std::nullopt;
}

}  // namespace

Result<std::vector<Relation>, SchemaError> compile_schema(const ModelFile& model) {
    std::vector<Relation> out;
    for (const auto& cls : model.classes) {
        Relation rel;
        rel.name = cls.name;
        rel.columns.push_back({"id", "INTEGER", false});
        rel.primary_key = {"id"};

        std::vector<Relation> children;
        for (const auto& slot : cls.slots) {
            const std::string where = cls.name + "." + slot.name;
            if (slot.ty.kind() == TypeExpr::Kind::Seq) {
                Relation child;
                child.name = cls.name + "_" + slot.name;
                child.columns.push_back({"id", "INTEGER", false});
                child.columns.push_back({"parent_id", "INTEGER", false});
                child.columns.push_back({"position", "INTEGER", false});
                if (auto err = columns_for(where, "value", slot.ty.seq_elem(), child.columns))
                    return *err;
                child.primary_key = {"id"};
                child.foreign_keys.push_back({"parent_id", cls.name, "id"});
                if (auto err = check_distinct_columns(child)) return *err;
                children.push_back(std::move(child));
                continue;
            }
            if (auto err = columns_for(where, slot.name, slot.ty, rel.columns)) return *err;
        }
        if (auto err = check_distinct_columns(rel)) return *err;
        out.push_back(std::move(rel));
        for (auto& child : children) out.push_back(std::move(child));
    }

    std::set<std::string_view> names;
    for (const auto& r : out)
        if (!names.insert(r.name).second)
            return SchemaError{SchemaError::Kind::NameCollision, r.name};
    return out;
}

std::vector<Relation> compile_meta(const ModelFile& model) {
    Relation meta_class;
    meta_class.name = "meta_class";
    meta_class.columns = {{"name", kVarchar, false}, {"min_status", kVarchar, false}};
    meta_class.primary_key = {"name"};
    for (const auto& cls : model.classes)
        meta_class.rows.push_back({cls.name, std::string(status_name(cls.min_status))});

    Relation meta_slot;
    meta_slot.name = "meta_slot";
    meta_slot.columns = {{"class_name", kVarchar, false},
                         {"slot_name", kVarchar, false},
                         {"type_text", "TEXT", false},
                         {"position", "INTEGER", false}};
    meta_slot.primary_key = {"class_name", "slot_name"};
    meta_slot.foreign_keys.push_back({"class_name", "meta_class", "name"});
    for (const auto& cls : model.classes) {
        std::int64_t position = 1;
        for (const auto& slot : cls.slots)
            meta_slot.rows.push_back({cls.name, slot.name, render_type(slot.ty), position++});
    }

    std::vector<Relation> out;
    out.push_back(std::move(meta_class));
    out.push_back(std::move(meta_slot));
    return out;
}

namespace {

std::string sql_string(const std::string& s) {
    std::string out = "'";
    for (char c : s) {
        if (c == '\'') out += "''";
        else out += c;
    }
    out += '\'';
    return out;
}

std::string sql_cell(const SchemaCell& cell) {
    if (const auto* n = std::get_if<std::int64_t>(&cell)) return std::to_string(*n);
    return sql_string(std::get<std::string>(cell));
}

}  // namespace

std::string emit_ddl(std::span<const Relation> relations) {
    std::string out;
    bool first = true;
    for (const auto& rel : relations) {
        if (!first) out += "\n";
        first = false;

        out += "CREATE TABLE " + rel.name + " (\n";
        std::vector<std::string> lines;
        for (const auto& col : rel.columns)
            lines.push_back("  " + col.name + " " + col.ddl_type +
                            (col.nullable ? " NULL" : " NOT NULL"));
        if (!rel.primary_key.empty()) {
            std::string pk = "  PRIMARY KEY (";
            for (std::size_t i = 0; i < rel.primary_key.size(); ++i) {
                if (i) pk += ", ";
                pk += rel.primary_key[i];
            }
            lines.push_back(pk + ")");
        }
        for (const auto& fk : rel.foreign_keys)
            lines.push_back("  FOREIGN KEY (" + fk.local_column + ") REFERENCES " +
                            fk.target_relation + " (" + fk.target_column + ")");
        for (std::size_t i = 0; i < lines.size(); ++i) {
            out += lines[i];
            if (i + 1 < lines.size()) out += ",";
            out += "\n";
        }
        out += ");\n";

        for (const auto& row : rel.rows) {
            out += "INSERT INTO " + rel.name + " (";
            for (std::size_t i = 0; i < rel.columns.size(); ++i) {
                if (i) out += ", ";
                out += rel.columns[i].name;
            }
            out += ") VALUES (";
            for (std::size_t i = 0; i < row.size(); ++i) {
                if (i) out += ", ";
                out += sql_cell(row[i]);
            }
            out += ");\n";
        }
    }
    return out;
}

}  // namespace ecm
