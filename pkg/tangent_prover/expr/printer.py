"""Canonical text rendering of expression trees.

``parse(print_expr(e)) == e`` holds for every tree the parser can produce and for
every tree built from the node constructors without zero literal denominators.
"""

from fractions import Fraction

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
)

# Binding strength of each printed form
_SUM = 1
_PRODUCT = 2
_UNARY = 3
_POWER = 4
_ATOM = 5


def _const_precedence(value: Fraction) -> int:
    if value.denominator != 1:
        return _PRODUCT
    return _ATOM if value >= 0 else _UNARY


def precedence(e: Expr) -> int:
    match e:
        case Const(value):
            return _const_precedence(value)
        case Add() | Sub():
            return _SUM
        case Mul() | Div():
            return _PRODUCT
        case Neg():
            return _UNARY
        case IntPow():
            return _POWER
        case _:
            return _ATOM


def _wrap(e: Expr, minimum: int) -> str:
    text = print_expr(e)
    return f"({text})" if precedence(e) < minimum else text


def _is_negative_const(e: Expr) -> bool:
    return isinstance(e, Const) and e.value < 0


def _right_operand(e: Expr, minimum: int) -> str:
    if _is_negative_const(e):
        return f"({print_expr(e)})"
    return _wrap(e, minimum)


def print_expr(e: Expr) -> str:
    """Render an expression as canonical parsable text."""
    match e:
        case Const(value):
            return str(value)
        case Var(name):
            return name
        case Add(left, right):
            return f"{_wrap(left, _SUM)} + {_right_operand(right, _PRODUCT)}"
        case Sub(left, right):
            return f"{_wrap(left, _SUM)} - {_right_operand(right, _PRODUCT)}"
        case Mul(left, right):
            return f"{_wrap(left, _PRODUCT)}*{_right_operand(right, _UNARY)}"
        case Div(left, right):
            # an integer literal over a bare integer literal would fold into one constant
            if (
                isinstance(left, Const)
                and left.value.denominator == 1
                and isinstance(right, Const)
                and right.value >= 0
                and right.value.denominator == 1
            ):
                return f"{print_expr(left)}/({print_expr(right)})"
            return f"{_wrap(left, _PRODUCT)}/{_right_operand(right, _UNARY)}"
        case Neg(Const() as operand):
            return f"-({print_expr(operand)})"
        case Neg(operand):
            return f"-{_wrap(operand, _UNARY)}"
        case IntPow(base, exponent):
            power = str(exponent) if exponent >= 0 else f"({exponent})"
            return f"{_wrap(base, _ATOM)}^{power}"
        case Root(base, 2):
            return f"sqrt({print_expr(base)})"
        case Root(base, index):
            return f"root({index}, {print_expr(base)})"
        case Ln(arg):
            return f"ln({print_expr(arg)})"
    raise TypeError(f"not an expression node: {e!r}")
