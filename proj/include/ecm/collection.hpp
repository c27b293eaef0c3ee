#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "ecm/object.hpp"
#include "ecm/predicate.hpp"
#include "ecm/result.hpp"
#include "ecm/value.hpp"

namespace ecm {

class MetaCollection;

// An element a predicate can range over: a plain value, a digital object,
// or (inside metalevel collections) a collection of the level below.
using Individual = std::variant<Val, DigitalObject, MetaCollection>;

// Metalevel cap; levels 0..3 keep the j -> j+1 schema observable while
// brute-force oracles stay tractable.
inline constexpr int kMaxMetaLevel = 3;

// Level-0 collections hold values or digital objects; a level-(j+1)
// collection holds level-j collections.
class MetaCollection {
public:
    static MetaCollection of_individuals(std::vector<Individual> elements);  // level 0
    static MetaCollection of_collections(int level, std::vector<MetaCollection> elements);

    int level() const { return level_; }
    const std::vector<Individual>& elements() const;
    std::size_t size() const;

private:
    MetaCollection() = default;

    int level_ = 0;
    std::vector<Individual> elems_;
};

struct DomainError {
    enum class Kind { UnknownSlot, UnboundReference, NoWitness, NotUnique, UnknownAssignment };

    Kind kind = Kind::UnknownSlot;
    std::string detail;
    std::size_t count = 0;  // NotUnique: number of satisfiers
};

std::string render_domain_error(const DomainError& e);

// Assignment-indexed extents of a typed collection: distinct named context
// snapshots may see different members.
struct VariableDomain {
    std::string name;
    TypeExpr elem_ty;
    std::vector<std::pair<std::string, std::vector<Individual>>> extents;
};

// Evaluates an individual predicate against one element. `v` reads the
// element itself (values only), `v.<slot>` a bound slot of an object,
// `v.count` the cardinality of a nested collection.
Result<bool, DomainError> eval_predicate(const Formula& f, const Individual& elem);

// The compression principle: the sub-sequence of elements satisfying delta,
// input order preserved.
Result<std::vector<Individual>, DomainError> compress(std::span<const Individual> domain,
                                                      const Formula& delta);

// Definite description: the unique element satisfying delta, or NoWitness /
// NotUnique when the description is undefined.
Result<Individual, DomainError> individualize(std::span<const Individual> domain,
                                              const Formula& delta);

// Lifts compression one metalevel up: the singleton level-(j+1) collection
// whose sole element is the filtered level-j collection.
Result<MetaCollection, DomainError> meta_compress(const MetaCollection& coll,
                                                  const Formula& delta);

Result<std::vector<Individual>, DomainError> domain_members(const VariableDomain& vd,
                                                            std::string_view assignment_key);

}  // namespace ecm
