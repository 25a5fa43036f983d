from .terms import (
    Atom,
    Clause,
    Compound,
    Literal,
    Num,
    Rulebase,
    SlotMap,
    Term,
    Text,
    Var,
    format_clause,
    format_literal,
    format_rulebase,
    format_term,
    free_vars,
    is_ground,
    resolve,
    unify,
)
from .parser import RuleSyntaxError, parse_literal, parse_rulebase, parse_term
from .engine import (
    DEFAULT_DEPTH_LIMIT,
    Diagnostics,
    Effect,
    EvaluationError,
    dispatch,
    naf,
    solve,
)

__all__ = [
    "Atom",
    "Clause",
    "Compound",
    "DEFAULT_DEPTH_LIMIT",
    "Diagnostics",
    "Effect",
    "EvaluationError",
    "Literal",
    "Num",
    "Rulebase",
    "RuleSyntaxError",
    "SlotMap",
    "Term",
    "Text",
    "Var",
    "dispatch",
    "format_clause",
    "format_literal",
    "format_rulebase",
    "format_term",
    "free_vars",
    "is_ground",
    "naf",
    "parse_literal",
    "parse_rulebase",
    "parse_term",
    "resolve",
    "solve",
    "unify",
]
