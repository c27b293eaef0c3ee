#include "ecm/collection.hpp"

#include <stdexcept>

namespace ecm {

MetaCollection MetaCollection::of_individuals(std::vector<Individual> elements) {
    for (const auto& e : elements)
        if (std::holds_alternative<MetaCollection>(e))
            throw std::invalid_argument("level-0 collections hold values or objects only");
    MetaCollection c;
    c.level_ = 0;
    c.elems_ = std::move(elements);
    return c;
}

MetaCollection MetaCollection::of_collections(int level, std::vector<MetaCollection> elements) {
    if (level < 1 || level > kMaxMetaLevel)
        throw std::invalid_argument("metalevel must be between 1 and " +
                                    std::to_string(kMaxMetaLevel));
    MetaCollection c;
    c.level_ = level;
    for (auto& e : elements) {
        if (e.level() != level - 1)
            throw std::invalid_argument("elements of a level-j collection must have level j-1");
        c.elems_.emplace_back(std::move(e));
    }
    return c;
}

const std::vector<Individual>& MetaCollection::elements() const { return elems_; }
std::size_t MetaCollection::size() const { return elems_.size(); }

std::string render_domain_error(const DomainError& e) {
    switch (e.kind) {
    case DomainError::Kind::UnknownSlot: return "UnknownSlot(" + e.detail + ")";
    case DomainError::Kind::UnboundReference: return "UnboundReference(" + e.detail + ")";
    case DomainError::Kind::NoWitness: return "NoWitness";
    case DomainError::Kind::NotUnique: return "NotUnique(" + std::to_string(e.count) + ")";
    case DomainError::Kind::UnknownAssignment: return "UnknownAssignment(" + e.detail + ")";
    }
    return "?";
}

namespace {

// Resolves one operand against the element under test. Literals resolve to
// themselves. Returns a value, owned or borrowed via the scratch slot.
Result<Val, DomainError> resolve(const Operand& o, const Individual& elem) {
    switch (o.kind) {
    case Operand::Kind::Lit:
        return o.lit;
    case Operand::Kind::Self:
        if (const Val* v = std::get_if<Val>(&elem)) return *v;
        return DomainError{DomainError::Kind::UnknownSlot, "v", 0};
    case Operand::Kind::SlotRef: {
        const DigitalObject* d = std::get_if<DigitalObject>(&elem);
        if (!d) return DomainError{DomainError::Kind::UnknownSlot, "v." + o.name, 0};
        const std::optional<Val>* b = d->binding(o.name);
        if (!b) return DomainError{DomainError::Kind::UnknownSlot, "v." + o.name, 0};
        if (!b->has_value())
            return DomainError{DomainError::Kind::UnboundReference, "v." + o.name, 0};
        return **b;
    }
    case Operand::Kind::CountRef: {
        const MetaCollection* c = std::get_if<MetaCollection>(&elem);
        if (!c) return DomainError{DomainError::Kind::UnknownSlot, "v.count", 0};
        return Val::integer(static_cast<std::int64_t>(c->size()));
    }
    default:
        // guard-only operand forms never reach individual evaluation
        return DomainError{DomainError::Kind::UnknownSlot, "v", 0};
    }
}

}  // namespace

Result<bool, DomainError> eval_predicate(const Formula& f, const Individual& elem) {
    switch (f.node) {
    case Formula::Node::True: return true;
    case Formula::Node::False: return false;
    case Formula::Node::Not: {
        auto inner = eval_predicate(f.kids[0], elem);
        if (!inner) return inner;
        return !inner.value();
    }
    case Formula::Node::And: {
        auto a = eval_predicate(f.kids[0], elem);
        if (!a) return a;
        auto b = eval_predicate(f.kids[1], elem);
        if (!b) return b;
        return a.value() && b.value();
    }
    case Formula::Node::Or: {
        auto a = eval_predicate(f.kids[0], elem);
        if (!a) return a;
        auto b = eval_predicate(f.kids[1], elem);
        if (!b) return b;
        return a.value() || b.value();
    }
    case Formula::Node::Cmp: {
        auto l = resolve(f.lhs, elem);
        if (!l) return l.error();
        auto r = resolve(f.rhs, elem);
        if (!r) return r.error();
        return compare_values(l.value(), f.op, r.value());
    }
    }
    return false;
}

Result<std::vector<Individual>, DomainError> compress(std::span<const Individual> domain,
                                                      const Formula& delta) {
    std::vector<Individual> out;
    for (const auto& elem : domain) {
        auto keep = eval_predicate(delta, elem);
        if (!keep) return keep.error();
        if (keep.value()) out.push_back(elem);
    }
    return out;
}

Result<Individual, DomainError> individualize(std::span<const Individual> domain,
                                              const Formula& delta) {
    auto hits = compress(domain, delta);
    if (!hits) return hits.error();
    if (hits.value().empty()) return DomainError{DomainError::Kind::NoWitness, "", 0};
    if (hits.value().size() > 1)
        return DomainError{DomainError::Kind::NotUnique, "", hits.value().size()};
    return std::move(hits.value()[0]);
}

Result<MetaCollection, DomainError> meta_compress(const MetaCollection& coll,
                                                  const Formula& delta) {
    if (coll.level() + 1 > kMaxMetaLevel)
        throw std::invalid_argument("metalevel cap " + std::to_string(kMaxMetaLevel) + " reached");
    auto kept = compress(coll.elements(), delta);
    if (!kept) return kept.error();
    if (coll.level() == 0) {
        MetaCollection inner = MetaCollection::of_individuals(std::move(kept.value()));
        std::vector<MetaCollection> one;
        one.push_back(std::move(inner));
        return MetaCollection::of_collections(1, std::move(one));
    }
    std::vector<MetaCollection> inner_elems;
    for (auto& e : kept.value()) inner_elems.push_back(std::move(std::get<MetaCollection>(e)));
    MetaCollection inner = MetaCollection::of_collections(coll.level(), std::move(inner_elems));
    std::vector<MetaCollection> one;
    one.push_back(std::move(inner));
    return MetaCollection::of_collections(coll.level() + 1, std::move(one));
}

Result<std::vector<Individual>, DomainError> domain_members(const VariableDomain& vd,
                                                            std::string_view assignment_key) {
    for (const auto& [key, extent] : vd.extents)
        if (key == assignment_key) return extent;
    return DomainError{DomainError::Kind::UnknownAssignment, std::string(assignment_key), 0};
}

}  // namespace ecm
