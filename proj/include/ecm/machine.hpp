#pragma once

#include <deque>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ecm/result.hpp"
#include "ecm/text.hpp"
#include "ecm/value.hpp"

namespace ecm {

// Machine state: identifier memory, input values still to consume, output
// values produced so far. Output only grows; input is consumed at the front.
struct MachineState {
    std::map<std::string, std::optional<Val>> mem;  // nullopt = unbound
    std::deque<Val> input;
    std::vector<Val> output;
};

class Expression {
public:
    enum class Kind { Lit, Ident, Tuple, Proj };

    static Expression lit(Val v);
    static Expression ident(std::string name);
    static Expression tuple(std::vector<Expression> components);  // arity >= 2
    static Expression proj(Expression inner, int index);          // index >= 1

    Kind kind() const { return kind_; }
    const Val& lit_value() const { return lit_; }
    const std::string& ident_name() const { return ident_; }
    const std::vector<Expression>& components() const { return kids_; }
    const Expression& proj_inner() const { return kids_[0]; }
    int proj_index() const { return index_; }

private:
    Expression() = default;

    Kind kind_ = Kind::Lit;
    Val lit_ = Val::boolean(false);
    std::string ident_;
    std::vector<Expression> kids_;
    int index_ = 0;
};

// Straight-line command language: assignment, comparison branching, input
// read, output emit. No loops, so every run terminates.
class Command {
public:
    enum class Kind { Assign, Cmp, Read, Emit };

    static Command assign(std::string target, Expression value);
    static Command cmp(Expression left, Expression right, std::vector<Command> then_block,
                       std::vector<Command> else_block);
    static Command read(std::string target);
    static Command emit(Expression value);

    Kind kind() const { return kind_; }
    const std::string& target() const { return target_; }
    const Expression& value() const { return exprs_[0]; }
    const Expression& left() const { return exprs_[0]; }
    const Expression& right() const { return exprs_[1]; }
    const std::vector<Command>& then_block() const { return then_; }
    const std::vector<Command>& else_block() const { return else_; }

private:
    Command() = default;

    Kind kind_ = Kind::Emit;
    std::string target_;
    std::vector<Expression> exprs_;
    std::vector<Command> then_, else_;
};

struct Program {
    // declared identifiers are distinct; a declaration fixes the type
    std::vector<std::pair<std::string, TypeExpr>> declarations;
    std::vector<Command> commands;

    const TypeExpr* declared_type(std::string_view ident) const;
};

struct MachineError {
    enum class Kind {
        UnboundIdentifier,
        TypeMismatch,
        InputExhausted,
        BadProjection,
        CompareTypeMismatch,
    };

    Kind kind = Kind::UnboundIdentifier;
    std::string detail;  // offending identifier or expression rendering
    int step = 0;        // leaf-command step index at which the run failed
};

std::string_view machine_error_name(MachineError::Kind k);
// `<Kind>(<detail>) at step <n>`
std::string render_machine_error(const MachineError& e);

struct TraceEntry {
    int step = 0;                // consecutive from 1
    std::string command_text;    // canonical rendering of the executed command
    MachineState state_after;
};

// Expression evaluation is pure: it never touches memory bindings, input or
// output. Errors carry no step index; the command layer supplies it.
Result<Val, MachineError> eval_expr(const Expression& e, const MachineState& st);

// Executes one command (blocks run to completion). On error the run aborts;
// the state as of the last fully completed leaf command is what run/trace
// report. The two-argument form knows no declarations, so only types fixed
// by existing bindings are enforced; the three-argument form also enforces
// the program's declared types, as run and trace do.
Result<MachineState, MachineError> exec_command(const Command& c, MachineState st);
Result<MachineState, MachineError> exec_command(const Command& c, MachineState st,
                                                const Program& program);

// Runs the program from the initial state (declared identifiers unbound,
// given input, empty output). Deterministic.
Result<MachineState, MachineError> run(const Program& p, std::vector<Val> input);

// One entry per executed leaf command (Assign/Read/Emit); a comparison
// contributes entries only through the branch it takes, so replaying the
// recorded commands as a flat program reproduces the run.
struct TraceResult {
    std::vector<TraceEntry> entries;
    std::optional<MachineError> error;
};

TraceResult trace(const Program& p, std::vector<Val> input);

// Canonical one-line renderings; parsing the rendering of any command
// reproduces the command.
std::string render_expression(const Expression& e);
std::string render_command(const Command& c);
std::string render_program(const Program& p);

// `step <n>: <command_text> | mem={k=v,...} in=[...] out=[...]`,
// memory keys sorted, values in canonical literal syntax.
std::string render_trace_entry(const TraceEntry& e);

// .amc concrete syntax: `var x: <type>` declarations first, then commands
// `x = E`, `read x`, `emit E`, `cmp E1 E2 { ... } { ... }`.
Result<Program, std::vector<Diagnostic>> parse_program(std::string_view text);

// Machine input files: one literal per line, `#` comments.
Result<std::vector<Val>, std::vector<Diagnostic>> parse_input_values(std::string_view text);

}  // namespace ecm
