#include "ecm/machine.hpp"

#include <stdexcept>

namespace ecm {

// ---------------------------------------------------------------------------
// Syntax

Expression Expression::lit(Val v) {
    Expression e;
    e.kind_ = Kind::Lit;
    e.lit_ = std::move(v);
    return e;
}

Expression Expression::ident(std::string name) {
    if (!is_identifier(name)) throw std::invalid_argument("bad identifier");
    Expression e;
    e.kind_ = Kind::Ident;
    e.ident_ = std::move(name);
    return e;
}

Expression Expression::tuple(std::vector<Expression> components) {
    if (components.size() < 2) throw std::invalid_argument("tuple expression arity must be >= 2");
    Expression e;
    e.kind_ = Kind::Tuple;
    e.kids_ = std::move(components);
    return e;
}

Expression Expression::proj(Expression inner, int index) {
    if (index < 1) throw std::invalid_argument("projection index must be >= 1");
    Expression e;
    e.kind_ = Kind::Proj;
    e.kids_.push_back(std::move(inner));
    e.index_ = index;
    return e;
}

Command Command::assign(std::string target, Expression value) {
    if (!is_identifier(target)) throw std::invalid_argument("bad identifier");
    Command c;
    c.kind_ = Kind::Assign;
    c.target_ = std::move(target);
    c.exprs_.push_back(std::move(value));
    return c;
}

Command Command::cmp(Expression left, Expression right, std::vector<Command> then_block,
                     std::vector<Command> else_block) {
    Command c;
    c.kind_ = Kind::Cmp;
    c.exprs_.push_back(std::move(left));
    c.exprs_.push_back(std::move(right));
    c.then_ = std::move(then_block);
    c.else_ = std::move(else_block);
    return c;
}

Command Command::read(std::string target) {
    if (!is_identifier(target)) throw std::invalid_argument("bad identifier");
    Command c;
    c.kind_ = Kind::Read;
    c.target_ = std::move(target);
    return c;
}

Command Command::emit(Expression value) {
    Command c;
    c.kind_ = Kind::Emit;
    c.exprs_.push_back(std::move(value));
    return c;
}

const TypeExpr* Program::declared_type(std::string_view ident) const {
    for (const auto& [name, ty] : declarations)
        if (name == ident) return &ty;
    return nullptr;
}

std::string_view machine_error_name(MachineError::Kind k) {
    switch (k) {
    case MachineError::Kind::UnboundIdentifier: return "UnboundIdentifier";
    case MachineError::Kind::TypeMismatch: return "TypeMismatch";
    case MachineError::Kind::InputExhausted: return "InputExhausted";
    case MachineError::Kind::BadProjection: return "BadProjection";
    case MachineError::Kind::CompareTypeMismatch: return "CompareTypeMismatch";
    }
    return "?";
}

std::string render_machine_error(const MachineError& e) {
    return std::string(machine_error_name(e.kind)) + "(" + e.detail + ") at step " +
           std::to_string(e.step);
}

// ---------------------------------------------------------------------------
// Semantics

Result<Val, MachineError> eval_expr(const Expression& e, const MachineState& st) {
    switch (e.kind()) {
    case Expression::Kind::Lit:
        return e.lit_value();
    case Expression::Kind::Ident: {
        auto it = st.mem.find(e.ident_name());
        if (it == st.mem.end() || !it->second.has_value())
            return MachineError{MachineError::Kind::UnboundIdentifier, e.ident_name(), 0};
        return *it->second;
    }
    case Expression::Kind::Tuple: {
        std::vector<Val> items;
        for (const auto& k : e.components()) {
            auto v = eval_expr(k, st);
            if (!v) return v;
            items.push_back(std::move(v.value()));
        }
        return Val::tuple(std::move(items));
    }
    case Expression::Kind::Proj: {
        auto inner = eval_expr(e.proj_inner(), st);
        if (!inner) return inner;
        const Val& v = inner.value();
        if (v.kind() != Val::Kind::Tuple ||
            e.proj_index() > static_cast<int>(v.items().size()))
            return MachineError{MachineError::Kind::BadProjection, render_expression(e), 0};
        return v.items()[static_cast<std::size_t>(e.proj_index() - 1)];
    }
    }
    return MachineError{MachineError::Kind::BadProjection, render_expression(e), 0};
}

namespace {

// Shared driver for exec_command / run / trace. Counts leaf command steps;
// a comparison takes no step of its own.
struct Machine {
    const Program* program = nullptr;          // null: no declared types known
    std::vector<TraceEntry>* sink = nullptr;   // null: no trace recording
    int steps_done = 0;

    MachineError at_next_step(MachineError e) const {
        e.step = steps_done + 1;
        return e;
    }

    // Declared type wins; otherwise a previous binding fixes the type.
    std::optional<MachineError> check_bind(const std::string& ident, const Val& v,
                                           const MachineState& st) const {
        if (program) {
            if (const TypeExpr* ty = program->declared_type(ident)) {
                if (!typecheck(v, *ty))
                    return at_next_step({MachineError::Kind::TypeMismatch, ident, 0});
                return std::nullopt;
            }
        }
        auto it = st.mem.find(ident);
        if (it != st.mem.end() && it->second.has_value() && !same_runtime_type(v, *it->second))
            return at_next_step({MachineError::Kind::TypeMismatch, ident, 0});
        return std::nullopt;
    }

    void completed(const Command& c, const MachineState& st) {
        ++steps_done;
        if (sink) sink->push_back(TraceEntry{steps_done, render_command(c), st});
    }

    Result<MachineState, MachineError> command(const Command& c, MachineState st) {
        switch (c.kind()) {
        case Command::Kind::Assign: {
            auto v = eval_expr(c.value(), st);
            if (!v) return at_next_step(std::move(v.error()));
            if (auto err = check_bind(c.target(), v.value(), st)) return *err;
            st.mem[c.target()] = std::move(v.value());
            completed(c, st);
            return st;
        }
        case Command::Kind::Read: {
            if (st.input.empty())
                return at_next_step({MachineError::Kind::InputExhausted, c.target(), 0});
            if (auto err = check_bind(c.target(), st.input.front(), st)) return *err;
            st.mem[c.target()] = std::move(st.input.front());
            st.input.pop_front();
            completed(c, st);
            return st;
        }
        case Command::Kind::Emit: {
            auto v = eval_expr(c.value(), st);
            if (!v) return at_next_step(std::move(v.error()));
            st.output.push_back(std::move(v.value()));
            completed(c, st);
            return st;
        }
        case Command::Kind::Cmp: {
            auto l = eval_expr(c.left(), st);
            if (!l) return at_next_step(std::move(l.error()));
            auto r = eval_expr(c.right(), st);
            if (!r) return at_next_step(std::move(r.error()));
            if (!same_runtime_type(l.value(), r.value()))
                return at_next_step({MachineError::Kind::CompareTypeMismatch,
                                     render_expression(c.left()) + " vs " +
                                         render_expression(c.right()),
                                     0});
            const auto& branch =
                value_eq(l.value(), r.value()) ? c.then_block() : c.else_block();
            return block(branch, std::move(st));
        }
        }
        return st;
    }

    Result<MachineState, MachineError> block(const std::vector<Command>& cs, MachineState st) {
        for (const auto& c : cs) {
            auto next = command(c, std::move(st));
            if (!next) return next;
            st = std::move(next.value());
        }
        return st;
    }
};

MachineState initial_state(const Program& p, std::vector<Val> input) {
    MachineState st;
    for (const auto& [name, ty] : p.declarations) st.mem[name] = std::nullopt;
    st.input.assign(std::make_move_iterator(input.begin()), std::make_move_iterator(input.end()));
    return st;
}

}  // namespace

Result<MachineState, MachineError> exec_command(const Command& c, MachineState st) {
    Machine m;
    return m.command(c, std::move(st));
}

Result<MachineState, MachineError> exec_command(const Command& c, MachineState st,
                                                const Program& program) {
    Machine m;
    m.program = &program;
    return m.command(c, std::move(st));
}

Result<MachineState, MachineError> run(const Program& p, std::vector<Val> input) {
    Machine m;
    m.program = &p;
    return m.block(p.commands, initial_state(p, std::move(input)));
}

TraceResult trace(const Program& p, std::vector<Val> input) {
    TraceResult out;
    Machine m;
    m.program = &p;
    m.sink = &out.entries;
    auto end = m.block(p.commands, initial_state(p, std::move(input)));
    if (!end) out.error = std::move(end.error());
    return out;
}

// ---------------------------------------------------------------------------
// Rendering

std::string render_expression(const Expression& e) {
    switch (e.kind()) {
    case Expression::Kind::Lit:
        return render_literal(e.lit_value());
    case Expression::Kind::Ident:
        return e.ident_name();
    case Expression::Kind::Tuple: {
        std::string out = "(";
        for (std::size_t i = 0; i < e.components().size(); ++i) {
            if (i) out += ", ";
            out += render_expression(e.components()[i]);
        }
        return out + ")";
    }
    case Expression::Kind::Proj:
        return render_expression(e.proj_inner()) + "." + std::to_string(e.proj_index());
    }
    return "?";
}

namespace {

std::string render_block(const std::vector<Command>& cs) {
    if (cs.empty()) return "{ }";
    std::string out = "{ ";
    for (std::size_t i = 0; i < cs.size(); ++i) {
        if (i) out += "; ";
        out += render_command(cs[i]);
    }
    return out + " }";
}

}  // namespace

std::string render_command(const Command& c) {
    switch (c.kind()) {
    case Command::Kind::Assign:
        return c.target() + " = " + render_expression(c.value());
    case Command::Kind::Read:
        return "read " + c.target();
    case Command::Kind::Emit:
        return "emit " + render_expression(c.value());
    case Command::Kind::Cmp:
        return "cmp " + render_expression(c.left()) + " " + render_expression(c.right()) + " " +
               render_block(c.then_block()) + " " + render_block(c.else_block());
    }
    return "?";
}

std::string render_program(const Program& p) {
    std::string out;
    for (const auto& [name, ty] : p.declarations) out += "var " + name + ": " + render_type(ty) + "\n";
    for (const auto& c : p.commands) out += render_command(c) + "\n";
    return out;
}

std::string render_trace_entry(const TraceEntry& e) {
    std::string out = "step " + std::to_string(e.step) + ": " + e.command_text + " | mem={";
    bool first = true;
    for (const auto& [k, v] : e.state_after.mem) {
        if (!first) out += ",";
        first = false;
        out += k + "=" + (v ? render_literal(*v) : "unbound");
    }
    out += "} in=[";
    first = true;
    for (const auto& v : e.state_after.input) {
        if (!first) out += ",";
        first = false;
        out += render_literal(v);
    }
    out += "] out=[";
    first = true;
    for (const auto& v : e.state_after.output) {
        if (!first) out += ",";
        first = false;
        out += render_literal(v);
    }
    return out + "]";
}

}  // namespace ecm
