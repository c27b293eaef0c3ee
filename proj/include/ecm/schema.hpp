#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "ecm/model.hpp"
#include "ecm/result.hpp"

namespace ecm {

struct Column {
    std::string name;
    std::string ddl_type;  // VARCHAR(1024) | TEXT | INTEGER | BOOLEAN | DATE
    bool nullable = true;
};

struct ForeignKey {
    std::string local_column;
    std::string target_relation;
    std::string target_column;
};

using SchemaCell = std::variant<std::int64_t, std::string>;
using SchemaRow = std::vector<SchemaCell>;

struct Relation {
    std::string name;
    std::vector<Column> columns;
    std::vector<std::string> primary_key;  // names existing columns
    std::vector<ForeignKey> foreign_keys;
    std::vector<SchemaRow> rows;  // emitted as INSERT statements
};

struct SchemaError {
    enum class Kind { NotRepresentable, NameCollision };
    Kind kind = Kind::NotRepresentable;
    std::string detail;  // class/slot or generated name involved
};

std::string render_schema_error(const SchemaError& e);

// One relation per class (synthetic `id` key, one nullable column group per
// slot under the type map), plus one child relation per sequence slot.
Result<std::vector<Relation>, SchemaError> compile_schema(const ModelFile& model);

// The level-1 description of the level-0 data: meta_class and meta_slot,
// rows enumerating the model's classes and slots.
std::vector<Relation> compile_meta(const ModelFile& model);

// Deterministic DDL text: relations in input order, uppercase keywords,
// two-space indentation, `;`-terminated statements.
std::string emit_ddl(std::span<const Relation> relations);

}  // namespace ecm
