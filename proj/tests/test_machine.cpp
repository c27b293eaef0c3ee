#include <doctest.h>

#include "ecm/machine.hpp"
#include "generators.hpp"
#include "reference_interp.hpp"

using namespace ecm;

namespace {

Program program_of(const char* text) {
    auto p = parse_program(text);
    if (!p.ok()) {
        for (const auto& d : p.error()) MESSAGE(render_diagnostic(d));
    }
    REQUIRE(p.ok());
    return std::move(p.value());
}

bool outputs_equal(const std::vector<Val>& a, const std::vector<Val>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!value_eq(a[i], b[i])) return false;
    return true;
}

}  // namespace

TEST_CASE("constants denote their values and leave the state alone") {
    MachineState st;
    st.mem["y"] = Val::integer(7);
    auto v = eval_expr(Expression::lit(Val::integer(42)), st);
    REQUIRE(v.ok());
    CHECK(value_eq(v.value(), Val::integer(42)));
}

TEST_CASE("reading an unbound identifier is an error") {
    MachineState st;
    st.mem["x"] = std::nullopt;  // declared, unbound
    auto v = eval_expr(Expression::ident("x"), st);
    REQUIRE_FALSE(v.ok());
    CHECK(v.error().kind == MachineError::Kind::UnboundIdentifier);
    CHECK(v.error().detail == "x");

    auto w = eval_expr(Expression::ident("absent"), st);
    REQUIRE_FALSE(w.ok());
    CHECK(w.error().kind == MachineError::Kind::UnboundIdentifier);
}

TEST_CASE("tuple projection selects one-based components") {
    MachineState st;
    auto e = Expression::proj(
        Expression::tuple({Expression::lit(Val::integer(1)), Expression::lit(Val::text("a"))}), 2);
    auto v = eval_expr(e, st);
    REQUIRE(v.ok());
    CHECK(value_eq(v.value(), Val::text("a")));

    auto out_of_range = eval_expr(
        Expression::proj(Expression::lit(Val::tuple({Val::integer(1), Val::integer(2)})), 3), st);
    REQUIRE_FALSE(out_of_range.ok());
    CHECK(out_of_range.error().kind == MachineError::Kind::BadProjection);

    auto non_tuple = eval_expr(Expression::proj(Expression::lit(Val::integer(5)), 1), st);
    REQUIRE_FALSE(non_tuple.ok());
    CHECK(non_tuple.error().kind == MachineError::Kind::BadProjection);
}

TEST_CASE("assignment substitutes the value in memory") {
    auto st = exec_command(Command::assign("x", Expression::lit(Val::integer(5))), MachineState{});
    REQUIRE(st.ok());
    REQUIRE(st.value().mem.count("x") == 1);
    CHECK(value_eq(*st.value().mem["x"], Val::integer(5)));
    CHECK(st.value().input.empty());
    CHECK(st.value().output.empty());
}

TEST_CASE("emit appends the value to the output") {
    MachineState st;
    st.mem["x"] = Val::integer(5);
    auto next = exec_command(Command::emit(Expression::ident("x")), st);
    REQUIRE(next.ok());
    REQUIRE(next.value().output.size() == 1);
    CHECK(value_eq(next.value().output[0], Val::integer(5)));
}

TEST_CASE("exec_command with a program enforces declared types directly") {
    auto p = program_of("var x: Int");
    MachineState st;
    st.mem["x"] = std::nullopt;
    auto bad = exec_command(Command::assign("x", Expression::lit(Val::text("a"))), st, p);
    REQUIRE_FALSE(bad.ok());
    CHECK(bad.error().kind == MachineError::Kind::TypeMismatch);
    CHECK(bad.error().detail == "x");

    // without the program the declaration is unknown, so the binding fixes
    // the type instead
    auto loose = exec_command(Command::assign("x", Expression::lit(Val::text("a"))), st);
    CHECK(loose.ok());
}

TEST_CASE("declared types reject incompatible assignments and preserve state") {
    auto p = program_of("var x: Int\nx = \"a\"");
    auto result = run(p, {});
    REQUIRE_FALSE(result.ok());
    CHECK(result.error().kind == MachineError::Kind::TypeMismatch);
    CHECK(result.error().detail == "x");
    CHECK(result.error().step == 1);

    auto t = trace(p, {});
    CHECK(t.entries.empty());  // nothing completed before the failure
}

TEST_CASE("first successful binding fixes the type of undeclared identifiers") {
    auto p = program_of("x = 5\nx = \"a\"");
    auto result = run(p, {});
    REQUIRE_FALSE(result.ok());
    CHECK(result.error().kind == MachineError::Kind::TypeMismatch);
    CHECK(result.error().step == 2);

    auto ok = run(program_of("x = 5\nx = 6"), {});
    REQUIRE(ok.ok());
    CHECK(value_eq(*ok.value().mem["x"], Val::integer(6)));
}

TEST_CASE("run: assignment then emit") {
    auto result = run(program_of("x = 5; emit x"), {});
    REQUIRE(result.ok());
    REQUIRE(result.value().output.size() == 1);
    CHECK(value_eq(result.value().output[0], Val::integer(5)));
}

TEST_CASE("run: read binds input under the declared type") {
    auto result = run(program_of("read x; emit x"), {Val::text("hi")});
    REQUIRE(result.ok());
    REQUIRE(result.value().output.size() == 1);
    CHECK(value_eq(result.value().output[0], Val::text("hi")));

    auto exhausted = run(program_of("read x"), {});
    REQUIRE_FALSE(exhausted.ok());
    CHECK(exhausted.error().kind == MachineError::Kind::InputExhausted);

    auto mismatched = run(program_of("var x: Int\nread x"), {Val::text("no")});
    REQUIRE_FALSE(mismatched.ok());
    CHECK(mismatched.error().kind == MachineError::Kind::TypeMismatch);
}

TEST_CASE("run: emitting an unbound identifier fails at step 1") {
    auto result = run(program_of("emit x"), {});
    REQUIRE_FALSE(result.ok());
    CHECK(result.error().kind == MachineError::Kind::UnboundIdentifier);
    CHECK(result.error().detail == "x");
    CHECK(result.error().step == 1);
}

TEST_CASE("cmp branches on structural equality and rejects unlike types") {
    auto eq = run(program_of("x = 1; cmp x 1 { emit 10 } { emit 20 }"), {});
    REQUIRE(eq.ok());
    CHECK(value_eq(eq.value().output[0], Val::integer(10)));

    auto ne = run(program_of("x = 2; cmp x 1 { emit 10 } { emit 20 }"), {});
    REQUIRE(ne.ok());
    CHECK(value_eq(ne.value().output[0], Val::integer(20)));

    auto bad = run(program_of("cmp 1 \"a\" { } { }"), {});
    REQUIRE_FALSE(bad.ok());
    CHECK(bad.error().kind == MachineError::Kind::CompareTypeMismatch);
}

TEST_CASE("trace: one entry per executed leaf command") {
    auto t = trace(program_of("x = 1; emit x"), {});
    REQUIRE_FALSE(t.error.has_value());
    REQUIRE(t.entries.size() == 2);
    CHECK(t.entries[0].step == 1);
    CHECK(t.entries[1].step == 2);
    REQUIRE(t.entries[1].state_after.output.size() == 1);
    CHECK(value_eq(t.entries[1].state_after.output[0], Val::integer(1)));
}

TEST_CASE("trace: empty program, error program") {
    auto empty = trace(Program{}, {});
    CHECK(empty.entries.empty());
    CHECK_FALSE(empty.error.has_value());

    auto failing = trace(program_of("emit y"), {});
    CHECK(failing.entries.empty());
    REQUIRE(failing.error.has_value());
    CHECK(failing.error->kind == MachineError::Kind::UnboundIdentifier);
    CHECK(failing.error->step == 1);
}

TEST_CASE("trace text format") {
    auto t = trace(program_of("var x: Int\nx = 5\nemit x"), {});
    REQUIRE(t.entries.size() == 2);
    CHECK(render_trace_entry(t.entries[0]) == "step 1: x = 5 | mem={x=5} in=[] out=[]");
    CHECK(render_trace_entry(t.entries[1]) == "step 2: emit x | mem={x=5} in=[] out=[5]");

    auto declared = trace(program_of("var a: Int\nvar b: Text\na = 1"), {});
    REQUIRE(declared.entries.size() == 1);
    CHECK(render_trace_entry(declared.entries[0]) ==
          "step 1: a = 1 | mem={a=1,b=unbound} in=[] out=[]");
}

TEST_CASE("command rendering is canonical") {
    CHECK(render_command(Command::assign("x", Expression::lit(Val::integer(5)))) == "x = 5");
    CHECK(render_command(Command::emit(Expression::ident("x"))) == "emit x");
    CHECK(render_command(Command::cmp(Expression::ident("a"), Expression::lit(Val::integer(0)),
                                      {Command::emit(Expression::ident("a"))}, {})) ==
          "cmp a 0 { emit a } { }");
    CHECK(render_command(Command::read("v1")) == "read v1");
}

TEST_CASE("program parsing accepts the concrete syntax") {
    auto p = program_of(
        "# binding example\n"
        "var n: Int; var t: (Int, Text)\n"
        "n = 5\n"
        "t = (n, \"a\")\n"
        "emit t.2\n"
        "cmp n 5 { emit \"five\" } { emit \"other\" }\n");
    CHECK(p.declarations.size() == 2);
    CHECK(p.commands.size() == 4);
    auto result = run(p, {});
    REQUIRE(result.ok());
    REQUIRE(result.value().output.size() == 2);
    CHECK(value_eq(result.value().output[0], Val::text("a")));
    CHECK(value_eq(result.value().output[1], Val::text("five")));
}

TEST_CASE("program parse diagnostics") {
    CHECK_FALSE(parse_program("var x: Int\nvar x: Text\nx = 1").ok());  // duplicate
    CHECK_FALSE(parse_program("x = 1\nvar y: Int").ok());  // declaration after command
    CHECK_FALSE(parse_program("emit (1").ok());
    CHECK_FALSE(parse_program("cmp 1 1 { emit 1 }").ok());  // missing else block
    CHECK_FALSE(parse_program("x = y.0").ok());             // projection index >= 1
    CHECK_FALSE(parse_program("read true").ok());
}

TEST_CASE("parsing a rendered program reproduces it") {
    gen::Rng rng(606);
    for (int i = 0; i < 400; ++i) {
        gen::ProgramGen pg(rng);
        Program p = pg.program();
        std::string text = render_program(p);
        auto back = parse_program(text);
        REQUIRE(back.ok());
        CAPTURE(text);
        CHECK(render_program(back.value()) == text);
    }
}

TEST_CASE("machine input files parse one literal per line") {
    auto vals = parse_input_values("5\n\"hi\"\n# comment\n\n2024-01-15\n(1, 2)\n");
    REQUIRE(vals.ok());
    REQUIRE(vals.value().size() == 4);
    CHECK(value_eq(vals.value()[1], Val::text("hi")));
    CHECK_FALSE(parse_input_values("5 6\n").ok());
}

TEST_CASE("generated programs agree with the reference evaluator") {
    gen::Rng rng(11001);
    int errors_seen = 0, successes_seen = 0;
    for (int i = 0; i < 1200; ++i) {
        gen::ProgramGen pg(rng);
        Program p = pg.program();
        std::vector<Val> input = pg.input();

        auto expected = refinterp::reference_run(p, input);
        auto got = run(p, input);
        CAPTURE(render_program(p));
        if (expected.ok) {
            ++successes_seen;
            REQUIRE(got.ok());
            REQUIRE(outputs_equal(got.value().output, expected.output));
        } else {
            ++errors_seen;
            REQUIRE_FALSE(got.ok());
            REQUIRE(std::string(machine_error_name(got.error().kind)) == expected.error_kind);
            REQUIRE(got.error().step == expected.error_step);
        }
    }
    CHECK(errors_seen > 100);
    CHECK(successes_seen > 100);
}

TEST_CASE("trace invariants: monotone output, shrinking input, replayable") {
    gen::Rng rng(11002);
    for (int i = 0; i < 300; ++i) {
        gen::ProgramGen pg(rng);
        Program p = pg.program();
        std::vector<Val> input = pg.input();

        auto t = trace(p, input);
        auto direct = run(p, input);

        // steps are consecutive from 1
        for (std::size_t k = 0; k < t.entries.size(); ++k)
            REQUIRE(t.entries[k].step == static_cast<int>(k) + 1);

        // output grows by prefix, input shrinks by suffix
        for (std::size_t k = 0; k + 1 < t.entries.size(); ++k) {
            const auto& a = t.entries[k].state_after;
            const auto& b = t.entries[k + 1].state_after;
            REQUIRE(a.output.size() <= b.output.size());
            for (std::size_t j = 0; j < a.output.size(); ++j)
                REQUIRE(value_eq(a.output[j], b.output[j]));
            REQUIRE(b.input.size() <= a.input.size());
            std::size_t drop = a.input.size() - b.input.size();
            for (std::size_t j = 0; j < b.input.size(); ++j)
                REQUIRE(value_eq(b.input[j], a.input[drop + j]));
        }

        // run result equals the last trace snapshot
        if (direct.ok()) {
            REQUIRE_FALSE(t.error.has_value());
            if (!t.entries.empty())
                REQUIRE(outputs_equal(direct.value().output, t.entries.back().state_after.output));
            else
                REQUIRE(direct.value().output.empty());
        } else {
            REQUIRE(t.error.has_value());
            REQUIRE(t.error->kind == direct.error().kind);
            REQUIRE(t.error->step == direct.error().step);
        }

        // replaying the recorded leaf commands as a flat program reproduces
        // the final state (errors included, at the same step)
        Program flat;
        flat.declarations = p.declarations;
        std::string flat_text;
        for (const auto& e : t.entries) flat_text += e.command_text + "\n";
        auto reparsed = parse_program(flat_text);
        REQUIRE(reparsed.ok());
        flat.commands = std::move(reparsed.value().commands);
        auto replay = run(flat, input);
        if (direct.ok()) {
            REQUIRE(replay.ok());
            REQUIRE(outputs_equal(replay.value().output, direct.value().output));
        } else if (!t.entries.empty()) {
            REQUIRE(replay.ok());  // the failing command is not part of the trace
            REQUIRE(outputs_equal(replay.value().output,
                                  t.entries.back().state_after.output));
        }
    }
}

TEST_CASE("determinism: identical runs yield identical renderings") {
    gen::Rng rng(11003);
    for (int i = 0; i < 100; ++i) {
        gen::ProgramGen pg(rng);
        Program p = pg.program();
        std::vector<Val> input = pg.input();
        auto t1 = trace(p, input);
        auto t2 = trace(p, input);
        REQUIRE(t1.entries.size() == t2.entries.size());
        for (std::size_t k = 0; k < t1.entries.size(); ++k)
            REQUIRE(render_trace_entry(t1.entries[k]) == render_trace_entry(t2.entries[k]));
        REQUIRE(t1.error.has_value() == t2.error.has_value());
        if (t1.error) REQUIRE(render_machine_error(*t1.error) == render_machine_error(*t2.error));
    }
}
