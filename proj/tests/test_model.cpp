#include <doctest.h>

#include <fstream>
#include <sstream>

#include "ecm/model.hpp"

using namespace ecm;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in);
    std::ostringstream buf;
    buf << in.rdbuf();
    return std::move(buf).str();
}

}  // namespace

TEST_CASE("minimal model: one class, one slot") {
    auto m = parse_model("class A { slot t: Text skeleton \"{t}\" }");
    REQUIRE(m.ok());
    REQUIRE(m.value().classes.size() == 1);
    const auto& cls = m.value().classes[0];
    CHECK(cls.name == "A");
    REQUIRE(cls.slots.size() == 1);
    CHECK(cls.slots[0].name == "t");
    CHECK(cls.min_status == RegistrationStatus::Anonymous);
    CHECK(cls.skeleton.placeholders() == std::vector<std::string>{"t"});
}

TEST_CASE("model diagnostics") {
    // unknown placeholder
    auto unknown = parse_model("class A { slot t: Text skeleton \"{missing}\" }");
    REQUIRE_FALSE(unknown.ok());
    bool found = false;
    for (const auto& d : unknown.error())
        found = found || d.message.find("unknown placeholder") != std::string::npos;
    CHECK(found);

    CHECK_FALSE(parse_model("class A { slot t: Text }").ok());  // no skeleton
    CHECK_FALSE(parse_model("class A { slot t: Text slot t: Int skeleton \"\" }").ok());
    CHECK_FALSE(parse_model("class A { slot t: Text skeleton \"\" }\nclass A { skeleton \"\" }").ok());
    CHECK_FALSE(parse_model("class A { slot t: Wibble skeleton \"\" }").ok());
    CHECK_FALSE(parse_model("class A { skeleton \"{t\" }").ok());  // unterminated
    CHECK_FALSE(parse_model("class A { skeleton \"{bad name}\" }").ok());
}

TEST_CASE("several diagnostics are reported in one pass") {
    auto bad = parse_model(
        "class A { slot t: Wibble skeleton \"\" }\n"
        "class B { slot u: Text skeleton \"{nope}\" }\n");
    REQUIRE_FALSE(bad.ok());
    CHECK(bad.error().size() >= 2);
}

TEST_CASE("rule parsing, group inference and override typing") {
    const char* text =
        "class News { slot title: Text slot body: Markup skeleton \"{title}{body}\" }\n"
        "rule for News when p = anonymous { body = \"<p>register</p>\" }\n"
        "rule for News when v.theme = \"plain\" { title = \"news\" }\n"
        "rule for News when s.teasers = \"on\" { suppress }\n";
    auto m = parse_model(text);
    REQUIRE(m.ok());
    REQUIRE(m.value().rules.size() == 3);
    CHECK(m.value().rules[0].group == RuleGroup::P);
    CHECK(m.value().rules[1].group == RuleGroup::V);
    CHECK(m.value().rules[2].group == RuleGroup::S);
    CHECK(m.value().rules[2].suppress);
    // override coerced to the slot's markup kind
    CHECK(m.value().rules[0].overrides[0].second.kind() == Val::Kind::Markup);

    // guard reading two groups
    CHECK_FALSE(parse_model("class A { skeleton \"\" }\n"
                            "rule for A when v.x = 1 and e.y = 2 { suppress }").ok());
    // unknown class
    CHECK_FALSE(parse_model("rule for Ghost when p = reader { suppress }").ok());
    // unknown slot
    CHECK_FALSE(parse_model("class A { skeleton \"\" }\n"
                            "rule for A when p = reader { t = 1 }").ok());
    // override violating the slot type
    CHECK_FALSE(parse_model("class A { slot n: Int skeleton \"\" }\n"
                            "rule for A when p = reader { n = \"x\" }").ok());
    // suppress and overrides are mutually exclusive
    CHECK_FALSE(parse_model("class A { slot n: Int skeleton \"\" }\n"
                            "rule for A when p = reader { n = 1 suppress }").ok());
}

TEST_CASE("domain declarations typecheck their extents") {
    const char* text =
        "domain Positions: Int {\n"
        "  weekday: [1, 2, 3]\n"
        "  weekend: []\n"
        "}\n";
    auto m = parse_model(text);
    REQUIRE(m.ok());
    REQUIRE(m.value().domains.size() == 1);
    CHECK(m.value().domains[0].extents.size() == 2);

    CHECK_FALSE(parse_model("domain P: Int { a: [\"x\"] }").ok());
    CHECK_FALSE(parse_model("domain P: Int { a: [1] a: [2] }").ok());
    CHECK_FALSE(parse_model("domain P: Int { a: [1] }\ndomain P: Int { b: [2] }").ok());
}

TEST_CASE("the shipped portal model carries the six subsystems") {
    auto m = parse_model(slurp(std::string(DEMO_DIR) + "/portal.ecm"));
    REQUIRE(m.ok());
    const auto& model = m.value();
    REQUIRE(model.classes.size() == 6);
    CHECK(model.classes[0].name == "MenuItem");
    CHECK(model.classes[1].name == "PageEntry");
    CHECK(model.classes[2].name == "ImageAsset");
    CHECK(model.classes[3].name == "NewsItem");
    CHECK(model.classes[4].name == "Section");
    CHECK(model.classes[5].name == "AdminProfile");
    CHECK(model.find_class("Section")->min_status == RegistrationStatus::Editor);
    CHECK(model.find_class("AdminProfile")->min_status == RegistrationStatus::Administrator);
    CHECK(model.slot_count() == 22);
    CHECK(model.rules.size() == 4);
    CHECK(model.domains.size() == 2);
}

TEST_CASE("canonical printing reaches a fixpoint after one normalization") {
    std::vector<std::string> sources = {
        slurp(std::string(DEMO_DIR) + "/portal.ecm"),
        "class A { slot t: Text slot u: (Int, Text) skeleton \"{t} {{raw}} {u}\" }\n"
        "rule for A when v.k = \"x\" { t = \"y\" }\n"
        "domain D: Date { base: [2006-01-01] }\n",
    };
    for (const auto& source : sources) {
        auto first = parse_model(source);
        REQUIRE(first.ok());
        std::string canon = render_model(first.value());
        auto second = parse_model(canon);
        REQUIRE(second.ok());
        CHECK(render_model(second.value()) == canon);
    }
}

TEST_CASE("document parsing") {
    auto doc = parse_document("object n1 : NewsItem { title = \"Launch\" }");
    REQUIRE(doc.ok());
    CHECK(doc.value().object_name == "n1");
    CHECK(doc.value().class_name == "NewsItem");
    REQUIRE(doc.value().assignments.size() == 1);
    CHECK(doc.value().assignments[0].first == "title");

    auto empty = parse_document("object n2 : NewsItem { }");
    REQUIRE(empty.ok());
    CHECK(empty.value().assignments.empty());

    CHECK_FALSE(parse_document("object n : C { t = \"a\"; t = \"b\" }").ok());
    CHECK_FALSE(parse_document("object n : C { t = }").ok());
    CHECK_FALSE(parse_document("object n { }").ok());
    CHECK_FALSE(parse_document("object n : C { } trailing").ok());
}

TEST_CASE("markup templates keep literal braces out of placeholders") {
    auto t = MarkupTemplate::parse("a {{x}} b {slot} c }} {{");
    REQUIRE(t.ok());
    std::string flat;
    for (const auto& seg : t.value().segments())
        flat += seg.placeholder ? "<" + seg.text + ">" : seg.text;
    CHECK(flat == "a {x} b <slot> c } {");
    CHECK(t.value().placeholders() == std::vector<std::string>{"slot"});
}
