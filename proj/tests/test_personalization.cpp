#include <doctest.h>

#include <algorithm>

#include "ecm/model.hpp"
#include "ecm/personalization.hpp"

using namespace ecm;

namespace {

PersonalizationContext context_of(const char* text) {
    auto ctx = parse_context(text);
    REQUIRE(ctx.ok());
    return ctx.value();
}

DigitalObject news_object() {
    DigitalObject d("News", {Slot{"title", TypeExpr::atomic(AtomicKind::Text)},
                             Slot{"body", TypeExpr::atomic(AtomicKind::Markup)}});
    return d.with_binding("title", Val::text("Launch"))
        .with_binding("body", Val::markup("<p>full story</p>"));
}

PersonalizationRule rule_for(RuleGroup group, const char* guard, const char* slot,
                             Val value) {
    auto g = parse_guard_text(guard);
    REQUIRE(g.ok());
    PersonalizationRule r;
    r.class_name = "News";
    r.group = group;
    r.guard = std::move(g.value().formula);
    r.overrides.emplace_back(slot, std::move(value));
    return r;
}

}  // namespace

TEST_CASE("context parsing defaults and assignments") {
    auto empty = context_of("");
    CHECK(empty.v.empty());
    CHECK(empty.e.empty());
    CHECK(empty.s.empty());
    CHECK(empty.p == RegistrationStatus::Anonymous);

    auto admin = context_of("p = administrator");
    CHECK(admin.p == RegistrationStatus::Administrator);

    auto maps = context_of("v.theme = \"dark\"\ne.device = \"mobile\"\ns.fontsize = 14");
    CHECK(value_eq(maps.v.at("theme"), Val::text("dark")));
    CHECK(value_eq(maps.e.at("device"), Val::text("mobile")));
    CHECK(value_eq(maps.s.at("fontsize"), Val::integer(14)));

    CHECK_FALSE(parse_context("p = overlord").ok());
    CHECK_FALSE(parse_context("q.x = 1").ok());
    CHECK_FALSE(parse_context("v.x = (1, 2)").ok());  // atomic values only
}

TEST_CASE("access_allowed follows the status order") {
    PersonalizationContext admin;
    admin.p = RegistrationStatus::Administrator;
    PersonalizationContext anon;
    PersonalizationContext reader;
    reader.p = RegistrationStatus::Reader;

    CHECK(access_allowed(admin, RegistrationStatus::Reader));
    CHECK_FALSE(access_allowed(anon, RegistrationStatus::Reader));
    CHECK(access_allowed(reader, RegistrationStatus::Reader));

    // raising the status never revokes access
    for (auto required : {RegistrationStatus::Anonymous, RegistrationStatus::Reader,
                          RegistrationStatus::Editor, RegistrationStatus::Administrator}) {
        bool was_allowed = false;
        for (auto held : {RegistrationStatus::Anonymous, RegistrationStatus::Reader,
                          RegistrationStatus::Editor, RegistrationStatus::Administrator}) {
            PersonalizationContext c;
            c.p = held;
            bool now = access_allowed(c, required);
            CHECK(static_cast<int>(now) >= static_cast<int>(was_allowed));
            was_allowed = now;
        }
    }
}

TEST_CASE("apply_functional: empty rule set is the identity") {
    auto d = news_object();
    auto out = apply_functional(d, {}, context_of("p = reader"));
    CHECK_FALSE(out.suppressed);
    CHECK(value_eq(**out.object.binding("title"), Val::text("Launch")));
    CHECK(value_eq(**out.object.binding("body"), Val::markup("<p>full story</p>")));
}

TEST_CASE("apply_functional: a satisfied guard rewrites the slot") {
    std::vector<PersonalizationRule> rules;
    rules.push_back(rule_for(RuleGroup::P, "p = anonymous", "body",
                             Val::markup("Login to read")));

    auto anon = apply_functional(news_object(), rules, context_of(""));
    CHECK(value_eq(**anon.object.binding("body"), Val::markup("Login to read")));

    auto reader = apply_functional(news_object(), rules, context_of("p = reader"));
    CHECK(value_eq(**reader.object.binding("body"), Val::markup("<p>full story</p>")));
}

TEST_CASE("apply_functional: later groups override earlier ones") {
    std::vector<PersonalizationRule> rules;
    rules.push_back(rule_for(RuleGroup::P, "p = anonymous", "title", Val::text("from P")));
    rules.push_back(rule_for(RuleGroup::V, "v.theme = \"plain\"", "title", Val::text("from V")));

    auto ctx = context_of("v.theme = \"plain\"");
    auto out = apply_functional(news_object(), rules, ctx);
    CHECK(value_eq(**out.object.binding("title"), Val::text("from P")));

    // declaration order decides within one group
    std::vector<PersonalizationRule> same_group;
    same_group.push_back(rule_for(RuleGroup::V, "v.theme = \"plain\"", "title", Val::text("first")));
    same_group.push_back(rule_for(RuleGroup::V, "v.theme = \"plain\"", "title", Val::text("second")));
    auto ordered = apply_functional(news_object(), same_group, ctx);
    CHECK(value_eq(**ordered.object.binding("title"), Val::text("second")));
}

TEST_CASE("apply_functional: group-order law under every declaration interleaving") {
    std::vector<PersonalizationRule> rules;
    rules.push_back(rule_for(RuleGroup::V, "v.on = 1", "title", Val::text("V")));
    rules.push_back(rule_for(RuleGroup::E, "e.on = 1", "title", Val::text("E")));
    rules.push_back(rule_for(RuleGroup::S, "s.on = 1", "title", Val::text("S")));
    rules.push_back(rule_for(RuleGroup::P, "p >= anonymous", "title", Val::text("P")));
    auto ctx = context_of("v.on = 1\ne.on = 1\ns.on = 1");

    std::sort(rules.begin(), rules.end(),
              [](const auto& a, const auto& b) { return a.overrides[0].second.str() <
                                                        b.overrides[0].second.str(); });
    do {
        auto out = apply_functional(news_object(), rules, ctx);
        CAPTURE(rules[0].overrides[0].second.str());
        CHECK(value_eq(**out.object.binding("title"), Val::text("P")));
    } while (std::next_permutation(rules.begin(), rules.end(), [](const auto& a, const auto& b) {
        return a.overrides[0].second.str() < b.overrides[0].second.str();
    }));
}

TEST_CASE("apply_functional: suppression marks the object and sticks") {
    std::vector<PersonalizationRule> rules;
    PersonalizationRule sup;
    sup.class_name = "News";
    sup.group = RuleGroup::S;
    auto g = parse_guard_text("s.captions = \"off\"");
    REQUIRE(g.ok());
    sup.guard = std::move(g.value().formula);
    sup.suppress = true;
    rules.push_back(std::move(sup));
    rules.push_back(rule_for(RuleGroup::P, "p = anonymous", "title", Val::text("teaser")));

    auto out = apply_functional(news_object(), rules, context_of("s.captions = \"off\""));
    CHECK(out.suppressed);
    // the P rule still applied after the suppression marker
    CHECK(value_eq(**out.object.binding("title"), Val::text("teaser")));

    auto kept = apply_functional(news_object(), rules, context_of("p = reader"));
    CHECK_FALSE(kept.suppressed);
}

TEST_CASE("apply_functional: rules for other classes never fire") {
    std::vector<PersonalizationRule> rules;
    auto other = rule_for(RuleGroup::P, "p = anonymous", "title", Val::text("x"));
    other.class_name = "Menu";
    rules.push_back(std::move(other));
    auto out = apply_functional(news_object(), rules, context_of(""));
    CHECK(value_eq(**out.object.binding("title"), Val::text("Launch")));
}

TEST_CASE("apply_functional: absent context keys leave guards unsatisfied") {
    std::vector<PersonalizationRule> rules;
    rules.push_back(rule_for(RuleGroup::V, "v.theme = \"plain\"", "title", Val::text("plain")));
    rules.push_back(rule_for(RuleGroup::E, "not e.device = \"desktop\"", "title",
                             Val::text("negated")));

    // theme absent: comparison false; negated absent comparison: true
    auto out = apply_functional(news_object(), rules, context_of(""));
    CHECK(value_eq(**out.object.binding("title"), Val::text("negated")));
}

TEST_CASE("apply_functional: never unbinds, stage is monotone") {
    DigitalObject partial("News", {Slot{"title", TypeExpr::atomic(AtomicKind::Text)},
                                   Slot{"body", TypeExpr::atomic(AtomicKind::Markup)}});
    partial = partial.with_binding("title", Val::text("t"));
    CHECK(stage_of(partial) == Stage::Object);

    std::vector<PersonalizationRule> rules;
    rules.push_back(rule_for(RuleGroup::P, "p >= anonymous", "body", Val::markup("b")));
    auto out = apply_functional(partial, rules, context_of(""));
    CHECK(stage_of(out.object) >= stage_of(partial));
    CHECK(stage_of(out.object) == Stage::Value);
}

TEST_CASE("apply_functional: referential transparency") {
    std::vector<PersonalizationRule> rules;
    rules.push_back(rule_for(RuleGroup::P, "p = anonymous", "title", Val::text("teaser")));
    auto ctx = context_of("");
    auto first = apply_functional(news_object(), rules, ctx);
    for (int i = 0; i < 100; ++i) {
        auto again = apply_functional(news_object(), rules, ctx);
        REQUIRE(again.suppressed == first.suppressed);
        REQUIRE(value_eq(**again.object.binding("title"), **first.object.binding("title")));
        REQUIRE(value_eq(**again.object.binding("body"), **first.object.binding("body")));
    }
}
