"""Typed content models, machine-executed binding and page rendering."""

from ._ecm import (
    Context,
    Document,
    Model,
    Object,
    Value,
    __version__,
    access_allowed,
    apply_rules,
    bind,
    compile_schema_sql,
    compress,
    individualize,
    literal,
    parse_context,
    parse_document,
    parse_model,
    render_page,
    run_program,
    trace_program,
)

__all__ = [
    "Context",
    "Document",
    "Model",
    "Object",
    "Value",
    "__version__",
    "access_allowed",
    "apply_rules",
    "bind",
    "compile_schema_sql",
    "compress",
    "individualize",
    "literal",
    "parse_context",
    "parse_document",
    "parse_model",
    "render_page",
    "run_program",
    "trace_program",
]
