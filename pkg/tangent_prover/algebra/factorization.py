"""Double-root extraction at a touch point and square-free analysis."""

import logging
from dataclasses import dataclass
from fractions import Fraction

from tangent_prover.algebra.polynomial import Polynomial, poly_gcd
from tangent_prover.algebra.rational_function import RationalFunction
from tangent_prover.core.errors import AlgebraError, PoleAtTouchPoint, TangencyViolation

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DoubleRootFactor:
    """``f - g == (x - x0)**2 * t / q_den`` identically."""

    x0: Fraction
    t: Polynomial
    q_den: Polynomial

    @property
    def square(self) -> Polynomial:
        return Polynomial.linear_factor(self.x0) ** 2

    def reconstruct(self) -> RationalFunction:
        return RationalFunction(self.square * self.t, self.q_den)


def double_root_factor(
    f: RationalFunction, g: RationalFunction, x0: Fraction
) -> DoubleRootFactor:
    """Factor (x - x0)**2 out of f - g after checking tangency exactly.

    Raises:
        PoleAtTouchPoint: If f or g has a pole at x0.
        TangencyViolation: If values or first derivatives differ at x0.
    """
    for name, fn in (("f", f), ("g", g)):
        if fn.den(x0) == 0:
            raise PoleAtTouchPoint(
                message=f"Denominator of {name} = {fn} vanishes at x0 = {x0}",
                details={"function": name, "x0": str(x0)},
            )
    f_value, g_value = f(x0), g(x0)
    if f_value != g_value:
        raise TangencyViolation("value", str(x0), str(f_value), str(g_value))
    f_slope, g_slope = f.derivative()(x0), g.derivative()(x0)
    if f_slope != g_slope:
        raise TangencyViolation("derivative", str(x0), str(f_slope), str(g_slope))

    h = f - g
    square = Polynomial.linear_factor(x0) ** 2
    quotient, remainder = h.num.divmod(square)
    if not remainder.is_zero:
        raise AlgebraError(
            message=f"(x - {x0})^2 does not divide the numerator {h.num}",
            details={"x0": str(x0), "remainder": remainder.to_strings()},
        )
    factor = DoubleRootFactor(x0=x0, t=quotient, q_den=h.den)
    if factor.reconstruct() != h:
        raise AlgebraError(
            message="Double-root factorization failed reconstruction",
            details={"x0": str(x0)},
        )
    logger.debug(f"f - g = (x - {x0})^2 * ({quotient}) / ({h.den})")
    return factor


def square_free_decomposition(p: Polynomial) -> list[tuple[Polynomial, int]]:
    """Yun's algorithm: monic pairwise coprime a_i with p = c * prod(a_i ** i).

    Only factors of positive degree are returned.
    """
    if p.degree < 1:
        return []
    derivative = p.derivative()
    a = poly_gcd(p, derivative)
    b = p // a
    c = derivative // a
    d = c - b.derivative()
    factors: list[tuple[Polynomial, int]] = []
    multiplicity = 1
    while b.degree > 0:
        a = poly_gcd(b, d)
        if a.degree > 0:
            factors.append((a.monic(), multiplicity))
        b = b // a
        c = d // a
        d = c - b.derivative()
        multiplicity += 1
    return factors


def odd_multiplicity_part(p: Polynomial) -> Polynomial:
    """Product of the factors of odd multiplicity; its real roots are exactly the
    points where p changes sign."""
    result = Polynomial.constant(1)
    for factor, multiplicity in square_free_decomposition(p):
        if multiplicity % 2 == 1:
            result = result * factor
    return result


def root_multiplicity(p: Polynomial, root: Fraction) -> int:
    """Multiplicity of a rational root (0 when it is not a root)."""
    if p.is_zero:
        raise AlgebraError(message="Multiplicity in the zero polynomial is undefined")
    count = 0
    linear = Polynomial.linear_factor(root)
    while p(root) == 0:
        p = p // linear
        count += 1
    return count
