"""Construction of base curves g = k*l + m tangent to f at the touch point."""

import logging
from dataclasses import dataclass
from fractions import Fraction

from tangent_prover.algebra.factorization import double_root_factor
from tangent_prover.algebra.polynomial import taylor_shift
from tangent_prover.algebra.rational_function import RationalFunction
from tangent_prover.basecurve.models import BaseCurve, CurveFamily, Side
from tangent_prover.core.errors import CurveError, DomainViolation, InexactValue
from tangent_prover.expr.calculus import (
    ZERO,
    add,
    differentiate,
    div,
    eval_exact,
    eval_numeric,
    fold_constants,
    intpow,
    lower_to_rational,
    mul,
    sub,
    substitute,
)
from tangent_prover.expr.nodes import Const, Expr, IntPow, Ln, Root, Var, variable_names
from tangent_prover.expr.printer import print_expr

logger = logging.getLogger(__name__)

# offset used for the numeric side test when f has no rational form
SIDE_PROBE = 1e-4


@dataclass(frozen=True)
class ConstantValue:
    """A constant known as an exact expression, a float and, when rational, a Fraction."""

    expr: Expr
    value: float
    exact: Fraction | None


def variable_of(f: Expr) -> str:
    names = variable_names(f)
    return next(iter(names)) if names else "x"


def power_expr(alpha: Fraction, variable: str = "x") -> Expr:
    """x^alpha, written with a root when alpha is not an integer."""
    x = Var(variable)
    if alpha.denominator == 1:
        return intpow(x, int(alpha))
    return Root(intpow(x, alpha.numerator), alpha.denominator)


def _constant_at(e: Expr, x0: Fraction, what: str) -> ConstantValue:
    try:
        exact = eval_exact(e, x0)
        return ConstantValue(expr=Const(exact), value=float(exact), exact=exact)
    except InexactValue:
        pass
    except DomainViolation as err:
        raise CurveError(
            message=f"{what} is undefined at x0 = {x0}: {err.message}",
            details={"x0": str(x0), "expression": print_expr(e)},
        ) from err
    folded = fold_constants(substitute(e, x0))
    try:
        value = eval_numeric(folded, 0.0)
    except DomainViolation as err:
        raise CurveError(
            message=f"{what} is undefined at x0 = {x0}: {err.message}",
            details={"x0": str(x0), "expression": print_expr(e)},
        ) from err
    return ConstantValue(expr=folded, value=value, exact=None)


def _combine(expr: Expr) -> ConstantValue:
    folded = fold_constants(expr)
    if isinstance(folded, Const):
        return ConstantValue(expr=folded, value=float(folded.value), exact=folded.value)
    return ConstantValue(expr=folded, value=eval_numeric(folded, 0.0), exact=None)


def curve_family_of(l: Expr) -> tuple[CurveFamily, Fraction | None]:
    """Recognise x, x^alpha and ln x; anything else is a custom curve."""
    match l:
        case Var():
            return "Line", Fraction(1)
        case IntPow(Var(), n):
            return "PowerCurve", Fraction(n)
        case Root(Var(), k):
            return "PowerCurve", Fraction(1, k)
        case Root(IntPow(Var(), n), k):
            return "PowerCurve", Fraction(n, k)
        case Ln(Var()):
            return "LogCurve", None
    return "Custom", None


def base_curve(f: Expr, l: Expr, x0: Fraction) -> BaseCurve:
    """The unique g = k*l + m with g(x0) = f(x0) and g'(x0) = f'(x0).

    k = f'(x0) / l'(x0), or 0 when l'(x0) = 0; m = f(x0) - k*l(x0). Irrational
    constants stay exact as folded constant expressions.

    Raises:
        CurveError: f or l is not differentiable at x0.
    """
    x0 = Fraction(x0)
    family, alpha = curve_family_of(l)
    f_at = _constant_at(f, x0, "f")
    f_slope = _constant_at(differentiate(f), x0, "f'")
    l_at = _constant_at(l, x0, "l")
    l_slope = _constant_at(differentiate(l), x0, "l'")

    if l_slope.exact == 0:
        k = ConstantValue(expr=ZERO, value=0.0, exact=Fraction(0))
    else:
        k = _combine(div(f_slope.expr, l_slope.expr))
    m = _combine(sub(f_at.expr, mul(k.expr, l_at.expr)))
    g = fold_constants(add(mul(k.expr, l), m.expr))

    curve = BaseCurve(
        family=family,
        alpha=alpha if family == "PowerCurve" else None,
        x0=x0,
        k=k.exact,
        m=m.exact,
        k_text=print_expr(k.expr),
        m_text=print_expr(m.expr),
        k_value=k.value,
        m_value=m.value,
        l_text=print_expr(l),
        expr_text=print_expr(g),
    )
    logger.debug(f"Base curve for {print_expr(f)} at {x0}: {curve.expr_text}")
    return curve


def tangent_line(f: Expr, x0: Fraction) -> BaseCurve:
    return base_curve(f, Var(variable_of(f)), x0)


def parabola_curve(f: Expr, x0: Fraction) -> BaseCurve:
    """Curve in x^2; undefined at x0 = 0 where the square has a flat tangent."""
    if x0 == 0:
        raise CurveError(
            message="Parabola curve needs x0 != 0",
            details={"x0": "0"},
        )
    return base_curve(f, IntPow(Var(variable_of(f)), 2), x0)


def power_curve(f: Expr, alpha: Fraction, x0: Fraction) -> BaseCurve:
    if alpha == 0:
        raise CurveError(message="Power curve needs alpha != 0", details={"alpha": "0"})
    return base_curve(f, power_expr(Fraction(alpha), variable_of(f)), x0)


def log_curve(f: Expr, x0: Fraction) -> BaseCurve:
    if x0 <= 0:
        raise CurveError(message="Log curve needs x0 > 0", details={"x0": str(x0)})
    return base_curve(f, Ln(Var(variable_of(f))), x0)


def local_base_side(f: Expr, g: Expr, x0: Fraction) -> Side:
    """Whether g stays below f, above f or crosses it in a neighbourhood of x0.

    Rational f and g are decided exactly from the first nonzero Taylor
    coefficient of T at x0 in f - g = (x - x0)^2 T / Q; other expressions fall
    back to probing both sides at a small offset.
    """
    lf, lg = lower_to_rational(f), lower_to_rational(g)
    if isinstance(lf, RationalFunction) and isinstance(lg, RationalFunction):
        factor = double_root_factor(lf, lg, Fraction(x0))
        q_sign = 1 if factor.q_den(x0) > 0 else -1
        shifted = taylor_shift(factor.t, Fraction(x0))
        for power, c in enumerate(shifted.coeffs):
            if c == 0:
                continue
            if power % 2 == 1:
                return "Crossing"
            return "Below" if c * q_sign > 0 else "Above"
        return "Below"
    gap = sub(f, g)
    left = eval_numeric(gap, float(x0) - SIDE_PROBE)
    right = eval_numeric(gap, float(x0) + SIDE_PROBE)
    if left >= 0 and right >= 0:
        return "Below"
    if left <= 0 and right <= 0:
        return "Above"
    return "Crossing"
