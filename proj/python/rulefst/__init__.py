"""Ordered rewrite rules compiled to finite-state transducers."""

from ._rulefst import (
    ApplyError,
    CompileError,
    FormatError,
    ParseError,
    Ruleset,
    RulefstError,
    compile,
    load,
    oracle,
    oracle_items,
    parse_items,
)

__all__ = [
    "ApplyError",
    "CompileError",
    "FormatError",
    "ParseError",
    "Ruleset",
    "RulefstError",
    "compile",
    "load",
    "oracle",
    "oracle_items",
    "parse_items",
]
