"""Rational functions P/Q kept in a canonical reduced form."""

import math
from fractions import Fraction
from typing import Literal

import numpy as np

from tangent_prover.algebra.polynomial import Polynomial, Scalar, poly_gcd
from tangent_prover.core.errors import AlgebraError, DomainViolation

RatOp = Literal["add", "sub", "mul", "div"]


def _canonical(num: Polynomial, den: Polynomial) -> tuple[Polynomial, Polynomial]:
    if den.is_zero:
        raise AlgebraError(message="Rational function with zero denominator")
    if num.is_zero:
        return Polynomial.zero(), Polynomial.constant(1)
    common = poly_gcd(num, den)
    if common.degree > 0:
        num, den = num // common, den // common
    # clear denominators jointly, then remove the joint integer content
    scale = 1
    for c in num.coeffs + den.coeffs:
        scale = math.lcm(scale, c.denominator)
    num, den = num.scale(scale), den.scale(scale)
    content = 0
    for c in num.coeffs + den.coeffs:
        content = math.gcd(content, c.numerator)
    if den.leading < 0:
        content = -content
    return num.scale(Fraction(1, content)), den.scale(Fraction(1, content))


class RationalFunction:
    """Immutable P/Q with gcd(P, Q) = 1, integer coefficients of joint content 1
    and a positive leading coefficient of Q.

    Equal functions therefore have identical numerator and denominator.
    """

    __slots__ = ("_num", "_den")

    def __init__(self, num: Polynomial, den: Polynomial | None = None) -> None:
        self._num, self._den = _canonical(num, den if den is not None else Polynomial.constant(1))

    @classmethod
    def constant(cls, value: Scalar) -> "RationalFunction":
        return cls(Polynomial.constant(value))

    @classmethod
    def x(cls) -> "RationalFunction":
        return cls(Polynomial.x())

    @property
    def num(self) -> Polynomial:
        return self._num

    @property
    def den(self) -> Polynomial:
        return self._den

    @property
    def is_zero(self) -> bool:
        return self._num.is_zero

    @property
    def is_polynomial(self) -> bool:
        return self._den.degree == 0

    @property
    def is_constant(self) -> bool:
        return self._num.degree < 1 and self._den.degree == 0

    def as_polynomial(self) -> Polynomial:
        if not self.is_polynomial:
            raise AlgebraError(message=f"{self} is not a polynomial")
        return self._num.scale(1 / self._den.leading)

    # arithmetic

    @staticmethod
    def _coerce(other: "RationalFunction | Polynomial | Scalar") -> "RationalFunction":
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, Polynomial):
            return RationalFunction(other)
        return RationalFunction.constant(other)

    def __add__(self, other: "RationalFunction | Polynomial | Scalar") -> "RationalFunction":
        other = self._coerce(other)
        return RationalFunction(
            self._num * other._den + other._num * self._den, self._den * other._den
        )

    __radd__ = __add__

    def __neg__(self) -> "RationalFunction":
        return RationalFunction(-self._num, self._den)

    def __sub__(self, other: "RationalFunction | Polynomial | Scalar") -> "RationalFunction":
        return self + (-self._coerce(other))

    def __rsub__(self, other: "Polynomial | Scalar") -> "RationalFunction":
        return self._coerce(other) - self

    def __mul__(self, other: "RationalFunction | Polynomial | Scalar") -> "RationalFunction":
        other = self._coerce(other)
        return RationalFunction(self._num * other._num, self._den * other._den)

    __rmul__ = __mul__

    def __truediv__(self, other: "RationalFunction | Polynomial | Scalar") -> "RationalFunction":
        other = self._coerce(other)
        if other.is_zero:
            raise AlgebraError(message="Division by the zero rational function")
        return RationalFunction(self._num * other._den, self._den * other._num)

    def __rtruediv__(self, other: "Polynomial | Scalar") -> "RationalFunction":
        return self._coerce(other) / self

    def __pow__(self, exponent: int) -> "RationalFunction":
        if exponent < 0:
            if self.is_zero:
                raise AlgebraError(message="Negative power of the zero rational function")
            return RationalFunction(self._den**-exponent, self._num**-exponent)
        return RationalFunction(self._num**exponent, self._den**exponent)

    def derivative(self) -> "RationalFunction":
        num = self._num.derivative() * self._den - self._num * self._den.derivative()
        return RationalFunction(num, self._den * self._den)

    # evaluation

    def __call__(self, x: Scalar) -> Fraction:
        den = self._den(x)
        if den == 0:
            raise DomainViolation(f"pole of {self} at x = {x}", x=str(x))
        return self._num(x) / den

    def evaluate_float(self, x: float) -> float:
        den = self._den.evaluate_float(x)
        if den == 0:
            raise DomainViolation(f"pole of {self} at x = {x}", x=x)
        return self._num.evaluate_float(x) / den

    def evaluate_array(self, xs: np.ndarray) -> np.ndarray:
        den = self._den.evaluate_array(xs)
        if np.any(den == 0):
            bad = float(xs[np.argmax(den == 0)])
            raise DomainViolation(f"pole of {self} at x = {bad}", x=bad)
        return self._num.evaluate_array(xs) / den

    def __eq__(self, other: object) -> bool:
        if isinstance(other, RationalFunction):
            return self._num == other._num and self._den == other._den
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self._num, self._den))

    def __repr__(self) -> str:
        return f"RationalFunction({self._num!r}, {self._den!r})"

    def __str__(self) -> str:
        if self.is_polynomial:
            return self.as_polynomial().to_text()
        return f"({self._num.to_text()})/({self._den.to_text()})"


def ratfunc_arith(a: RationalFunction, b: RationalFunction, op: RatOp) -> RationalFunction:
    match op:
        case "add":
            return a + b
        case "sub":
            return a - b
        case "mul":
            return a * b
        case "div":
            return a / b
    raise AlgebraError(message=f"Unknown rational-function operation: {op}")
