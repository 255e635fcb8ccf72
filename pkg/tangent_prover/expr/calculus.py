"""Differentiation, evaluation, substitution and rational lowering of expressions."""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from tangent_prover.algebra.rational_function import RationalFunction
from tangent_prover.algebra.rationals import rational_root
from tangent_prover.core.errors import AlgebraError, DomainViolation, InexactValue
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
    node_name,
)
from tangent_prover.expr.printer import print_expr

logger = logging.getLogger(__name__)

ZERO = Const(Fraction(0))
ONE = Const(Fraction(1))


# smart constructors: fold literal arithmetic and drop neutral elements


def _value(e: Expr) -> Fraction | None:
    return e.value if isinstance(e, Const) else None


def add(a: Expr, b: Expr) -> Expr:
    va, vb = _value(a), _value(b)
    if va is not None and vb is not None:
        return Const(va + vb)
    if va == 0:
        return b
    if vb == 0:
        return a
    return Add(a, b)


def sub(a: Expr, b: Expr) -> Expr:
    va, vb = _value(a), _value(b)
    if va is not None and vb is not None:
        return Const(va - vb)
    if vb == 0:
        return a
    if va == 0:
        return neg(b)
    if a == b:
        return ZERO
    return Sub(a, b)


def mul(a: Expr, b: Expr) -> Expr:
    va, vb = _value(a), _value(b)
    if va is not None and vb is not None:
        return Const(va * vb)
    if va == 0 or vb == 0:
        return ZERO
    if va == 1:
        return b
    if vb == 1:
        return a
    if va == -1:
        return neg(b)
    if vb == -1:
        return neg(a)
    return Mul(a, b)


def div(a: Expr, b: Expr) -> Expr:
    va, vb = _value(a), _value(b)
    if vb == 0:
        raise DomainViolation("division by the constant zero")
    if va is not None and vb is not None:
        return Const(va / vb)
    if va == 0:
        return ZERO
    if vb == 1:
        return a
    return Div(a, b)


def neg(a: Expr) -> Expr:
    if isinstance(a, Const):
        return Const(-a.value)
    if isinstance(a, Neg):
        return a.operand
    return Neg(a)


def intpow(base: Expr, exponent: int) -> Expr:
    if exponent == 0:
        return ONE
    if exponent == 1:
        return base
    vb = _value(base)
    if vb is not None and not (vb == 0 and exponent < 0):
        return Const(vb**exponent)
    return IntPow(base, exponent)


# differentiation


def differentiate(e: Expr) -> Expr:
    """Exact symbolic derivative with respect to the single variable."""
    match e:
        case Const():
            return ZERO
        case Var():
            return ONE
        case Add(a, b):
            return add(differentiate(a), differentiate(b))
        case Sub(a, b):
            return sub(differentiate(a), differentiate(b))
        case Mul(a, b):
            return add(mul(differentiate(a), b), mul(a, differentiate(b)))
        case Div(a, b):
            numerator = sub(mul(differentiate(a), b), mul(a, differentiate(b)))
            return div(numerator, intpow(b, 2))
        case Neg(a):
            return neg(differentiate(a))
        case IntPow(base, n):
            return mul(mul(Const(Fraction(n)), intpow(base, n - 1)), differentiate(base))
        case Root(base, k):
            # (b^(1/k))' = b' / (k * b^((k-1)/k))
            return div(differentiate(base), mul(Const(Fraction(k)), intpow(e, k - 1)))
        case Ln(arg):
            return div(differentiate(arg), arg)
    raise TypeError(f"not an expression node: {e!r}")


# evaluation


def eval_numeric(e: Expr, x: float) -> float:
    """IEEE double evaluation with explicit domain checks.

    Raises:
        DomainViolation: Division by zero, even root of a negative number,
            logarithm of a non-positive number or a power beyond the float range.
    """
    match e:
        case Const(value):
            return float(value)
        case Var():
            return float(x)
        case Add(a, b):
            return eval_numeric(a, x) + eval_numeric(b, x)
        case Sub(a, b):
            return eval_numeric(a, x) - eval_numeric(b, x)
        case Mul(a, b):
            return eval_numeric(a, x) * eval_numeric(b, x)
        case Div(a, b):
            den = eval_numeric(b, x)
            if den == 0:
                raise DomainViolation(f"division by zero in {print_expr(e)}", x=x)
            return eval_numeric(a, x) / den
        case Neg(a):
            return -eval_numeric(a, x)
        case IntPow(base, n):
            value = eval_numeric(base, x)
            if value == 0 and n < 0:
                raise DomainViolation(f"division by zero in {print_expr(e)}", x=x)
            try:
                return value**n
            except OverflowError:
                raise DomainViolation(f"overflow in {print_expr(e)}", x=x) from None
        case Root(base, k):
            value = eval_numeric(base, x)
            if value < 0:
                if k % 2 == 0:
                    raise DomainViolation(
                        f"even root of a negative number in {print_expr(e)}", x=x
                    )
                return -((-value) ** (1.0 / k))
            return value ** (1.0 / k)
        case Ln(arg):
            value = eval_numeric(arg, x)
            if value <= 0:
                raise DomainViolation(
                    f"logarithm of a non-positive number in {print_expr(e)}", x=x
                )
            return math.log(value)
    raise TypeError(f"not an expression node: {e!r}")


def eval_array(e: Expr, xs: np.ndarray) -> np.ndarray:
    """Vectorized ``eval_numeric`` over an array of points, with the same domain checks."""
    xs = np.asarray(xs, dtype=float)
    with np.errstate(all="ignore"):
        return _eval_array(e, xs)


def _first_bad(xs: np.ndarray, mask: np.ndarray) -> float:
    return float(np.broadcast_to(xs, mask.shape)[np.argmax(mask)])


def _eval_array(e: Expr, xs: np.ndarray) -> np.ndarray:
    match e:
        case Const(value):
            return np.full_like(xs, float(value))
        case Var():
            return xs
        case Add(a, b):
            return _eval_array(a, xs) + _eval_array(b, xs)
        case Sub(a, b):
            return _eval_array(a, xs) - _eval_array(b, xs)
        case Mul(a, b):
            return _eval_array(a, xs) * _eval_array(b, xs)
        case Div(a, b):
            den = _eval_array(b, xs)
            bad = den == 0
            if bad.any():
                x = _first_bad(xs, bad)
                raise DomainViolation(f"division by zero in {print_expr(e)}", x=x)
            return _eval_array(a, xs) / den
        case Neg(a):
            return -_eval_array(a, xs)
        case IntPow(base, n):
            values = _eval_array(base, xs)
            if n < 0:
                bad = values == 0
                if bad.any():
                    x = _first_bad(xs, bad)
                    raise DomainViolation(f"division by zero in {print_expr(e)}", x=x)
                result = 1.0 / values ** (-n)
            else:
                result = values**n
            bad = ~np.isfinite(result) & np.isfinite(values)
            if bad.any():
                x = _first_bad(xs, bad)
                raise DomainViolation(f"overflow in {print_expr(e)}", x=x)
            return result
        case Root(base, k):
            values = _eval_array(base, xs)
            if k % 2 == 0:
                bad = values < 0
                if bad.any():
                    x = _first_bad(xs, bad)
                    raise DomainViolation(
                        f"even root of a negative number in {print_expr(e)}", x=x
                    )
                return values ** (1.0 / k)
            return np.sign(values) * np.abs(values) ** (1.0 / k)
        case Ln(arg):
            values = _eval_array(arg, xs)
            bad = values <= 0
            if bad.any():
                x = _first_bad(xs, bad)
                raise DomainViolation(
                    f"logarithm of a non-positive number in {print_expr(e)}", x=x
                )
            return np.log(values)
    raise TypeError(f"not an expression node: {e!r}")


def eval_exact(e: Expr, x: Fraction) -> Fraction:
    """Exact rational evaluation.

    Roots evaluate when the radicand is a perfect power and ``ln`` only at 1.

    Raises:
        DomainViolation: The point is outside the real domain.
        InexactValue: The value exists but is irrational.
    """
    match e:
        case Const(value):
            return value
        case Var():
            return Fraction(x)
        case Add(a, b):
            return eval_exact(a, x) + eval_exact(b, x)
        case Sub(a, b):
            return eval_exact(a, x) - eval_exact(b, x)
        case Mul(a, b):
            return eval_exact(a, x) * eval_exact(b, x)
        case Div(a, b):
            den = eval_exact(b, x)
            if den == 0:
                raise DomainViolation(f"division by zero in {print_expr(e)}", x=str(x))
            return eval_exact(a, x) / den
        case Neg(a):
            return -eval_exact(a, x)
        case IntPow(base, n):
            value = eval_exact(base, x)
            if value == 0 and n < 0:
                raise DomainViolation(f"division by zero in {print_expr(e)}", x=str(x))
            return value**n
        case Root(base, k):
            value = eval_exact(base, x)
            if value < 0 and k % 2 == 0:
                raise DomainViolation(
                    f"even root of a negative number in {print_expr(e)}", x=str(x)
                )
            root = rational_root(value, k)
            if root is None:
                raise InexactValue(
                    message=f"{print_expr(e)} is irrational at x = {x}",
                    details={"expression": print_expr(e), "x": str(x)},
                )
            return root
        case Ln(arg):
            value = eval_exact(arg, x)
            if value <= 0:
                raise DomainViolation(
                    f"logarithm of a non-positive number in {print_expr(e)}", x=str(x)
                )
            if value != 1:
                raise InexactValue(
                    message=f"{print_expr(e)} is irrational at x = {x}",
                    details={"expression": print_expr(e), "x": str(x)},
                )
            return Fraction(0)
    raise TypeError(f"not an expression node: {e!r}")


# rewriting


def substitute(e: Expr, value: Fraction | Expr) -> Expr:
    """Replace the variable by a rational constant or another expression."""
    replacement = Const(Fraction(value)) if isinstance(value, int | Fraction) else value
    match e:
        case Const():
            return e
        case Var():
            return replacement
        case Add(a, b):
            return Add(substitute(a, replacement), substitute(b, replacement))
        case Sub(a, b):
            return Sub(substitute(a, replacement), substitute(b, replacement))
        case Mul(a, b):
            return Mul(substitute(a, replacement), substitute(b, replacement))
        case Div(a, b):
            return Div(substitute(a, replacement), substitute(b, replacement))
        case Neg(a):
            return Neg(substitute(a, replacement))
        case IntPow(base, n):
            return IntPow(substitute(base, replacement), n)
        case Root(base, k):
            return Root(substitute(base, replacement), k)
        case Ln(arg):
            return Ln(substitute(arg, replacement))
    raise TypeError(f"not an expression node: {e!r}")


def fold_constants(e: Expr) -> Expr:
    """Rebuild bottom-up through the smart constructors.

    Constant roots and logarithms collapse when their value is rational.
    """
    match e:
        case Const() | Var():
            return e
        case Add(a, b):
            return add(fold_constants(a), fold_constants(b))
        case Sub(a, b):
            return sub(fold_constants(a), fold_constants(b))
        case Mul(a, b):
            return mul(fold_constants(a), fold_constants(b))
        case Div(a, b):
            return div(fold_constants(a), fold_constants(b))
        case Neg(a):
            return neg(fold_constants(a))
        case IntPow(base, n):
            return intpow(fold_constants(base), n)
        case Root(base, k):
            folded: Expr = Root(fold_constants(base), k)
        case Ln(arg):
            folded = Ln(fold_constants(arg))
        case _:
            raise TypeError(f"not an expression node: {e!r}")
    if is_constant(folded):
        try:
            return Const(eval_exact(folded, Fraction(0)))
        except InexactValue:
            pass
    return folded


# lowering


@dataclass(frozen=True)
class NotRational:
    """Why an expression has no exact rational-function form."""

    node: str
    subexpression: str
    reason: str

    def __str__(self) -> str:
        return f"NotRational({self.node}): {self.reason} in {self.subexpression}"


def lower_to_rational(e: Expr) -> RationalFunction | NotRational:
    """Canonical P/Q form of a Root- and Ln-free expression.

    Constant roots and logarithms with rational values are accepted.
    """
    try:
        return _lower(e)
    except _Irrational as failure:
        logger.debug(f"Lowering stopped: {failure.result}")
        return failure.result


class _Irrational(Exception):
    def __init__(self, result: NotRational) -> None:
        self.result = result
        super().__init__(str(result))


def _lower(e: Expr) -> RationalFunction:
    match e:
        case Const(value):
            return RationalFunction.constant(value)
        case Var():
            return RationalFunction.x()
        case Add(a, b):
            return _lower(a) + _lower(b)
        case Sub(a, b):
            return _lower(a) - _lower(b)
        case Mul(a, b):
            return _lower(a) * _lower(b)
        case Div(a, b):
            den = _lower(b)
            if den.is_zero:
                raise _Irrational(
                    NotRational(node_name(e), print_expr(e), "denominator is identically zero")
                )
            return _lower(a) / den
        case Neg(a):
            return -_lower(a)
        case IntPow(base, n):
            lowered = _lower(base)
            if n < 0 and lowered.is_zero:
                raise _Irrational(
                    NotRational(node_name(e), print_expr(e), "negative power of zero")
                )
            try:
                return lowered**n
            except AlgebraError as err:
                raise _Irrational(NotRational(node_name(e), print_expr(e), err.message)) from err
        case Root() | Ln():
            if is_constant(e):
                try:
                    return RationalFunction.constant(eval_exact(e, Fraction(0)))
                except (InexactValue, DomainViolation) as err:
                    raise _Irrational(
                        NotRational(node_name(e), print_expr(e), err.message)
                    ) from err
            reason = (
                "radical of the variable" if isinstance(e, Root) else "logarithm of the variable"
            )
            raise _Irrational(NotRational(node_name(e), print_expr(e), reason))
    raise TypeError(f"not an expression node: {e!r}")
