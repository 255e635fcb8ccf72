"""Single-variable expressions with exact rational constants."""

from tangent_prover.expr.calculus import (
    NotRational,
    differentiate,
    eval_array,
    eval_exact,
    eval_numeric,
    fold_constants,
    lower_to_rational,
    substitute,
)
from tangent_prover.expr.nodes import (
    Add,
    Const,
    Div,
    Expr,
    IntPow,
    Ln,
    Mul,
    Neg,
    Root,
    Sub,
    Var,
    is_constant,
    variable_names,
)
from tangent_prover.expr.parser import parse
from tangent_prover.expr.printer import print_expr

__all__ = [
    "Add",
    "Const",
    "Div",
    "Expr",
    "IntPow",
    "Ln",
    "Mul",
    "Neg",
    "NotRational",
    "Root",
    "Sub",
    "Var",
    "differentiate",
    "eval_array",
    "eval_exact",
    "eval_numeric",
    "fold_constants",
    "is_constant",
    "lower_to_rational",
    "parse",
    "print_expr",
    "substitute",
    "variable_names",
]
