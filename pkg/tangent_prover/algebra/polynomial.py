"""Dense univariate polynomials with exact rational coefficients."""

import math
from collections.abc import Iterable
from dataclasses import dataclass
from fractions import Fraction
from typing import Literal

import numpy as np
from numpy.polynomial import polynomial as npoly

from tangent_prover.core.errors import AlgebraError

Scalar = int | Fraction
ArithOp = Literal["add", "sub", "mul"]


def _as_fraction(value: Scalar) -> Fraction:
    if isinstance(value, bool):
        raise TypeError("booleans are not coefficients")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"exact coefficient expected, got {value!r}")


class Polynomial:
    """Immutable polynomial; ``coeffs[i]`` is the coefficient of x**i.

    Trailing zero coefficients are stripped, so the zero polynomial has an empty
    coefficient tuple and degree -1.
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Iterable[Scalar] = ()) -> None:
        values = [_as_fraction(c) for c in coeffs]
        while values and values[-1] == 0:
            values.pop()
        self._coeffs: tuple[Fraction, ...] = tuple(values)

    # constructors

    @classmethod
    def zero(cls) -> "Polynomial":
        return cls()

    @classmethod
    def constant(cls, value: Scalar) -> "Polynomial":
        return cls([value])

    @classmethod
    def x(cls) -> "Polynomial":
        return cls([0, 1])

    @classmethod
    def monomial(cls, degree: int, coeff: Scalar = 1) -> "Polynomial":
        return cls([0] * degree + [coeff])

    @classmethod
    def linear_factor(cls, root: Scalar) -> "Polynomial":
        """The monic polynomial x - root."""
        return cls([-_as_fraction(root), 1])

    # basic properties

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return self._coeffs

    @property
    def degree(self) -> int:
        return len(self._coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self._coeffs

    @property
    def is_constant(self) -> bool:
        return len(self._coeffs) <= 1

    @property
    def leading(self) -> Fraction:
        return self._coeffs[-1] if self._coeffs else Fraction(0)

    def coeff(self, i: int) -> Fraction:
        return self._coeffs[i] if 0 <= i < len(self._coeffs) else Fraction(0)

    # arithmetic

    @staticmethod
    def _coerce(other: "Polynomial | Scalar") -> "Polynomial":
        if isinstance(other, Polynomial):
            return other
        return Polynomial.constant(other)

    def __add__(self, other: "Polynomial | Scalar") -> "Polynomial":
        other = self._coerce(other)
        size = max(len(self._coeffs), len(other._coeffs))
        return Polynomial(self.coeff(i) + other.coeff(i) for i in range(size))

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial(-c for c in self._coeffs)

    def __sub__(self, other: "Polynomial | Scalar") -> "Polynomial":
        return self + (-self._coerce(other))

    def __rsub__(self, other: Scalar) -> "Polynomial":
        return self._coerce(other) - self

    def __mul__(self, other: "Polynomial | Scalar") -> "Polynomial":
        other = self._coerce(other)
        if self.is_zero or other.is_zero:
            return Polynomial.zero()
        out = [Fraction(0)] * (len(self._coeffs) + len(other._coeffs) - 1)
        for i, a in enumerate(self._coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other._coeffs):
                out[i + j] += a * b
        return Polynomial(out)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "Polynomial":
        if exponent < 0:
            raise AlgebraError(message="Negative power of a polynomial")
        result = Polynomial.constant(1)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def scale(self, factor: Scalar) -> "Polynomial":
        factor = _as_fraction(factor)
        return Polynomial(c * factor for c in self._coeffs)

    def divmod(self, divisor: "Polynomial") -> tuple["Polynomial", "Polynomial"]:
        """Euclidean division: ``self = q*divisor + r`` with deg r < deg divisor."""
        if divisor.is_zero:
            raise AlgebraError(message="Polynomial division by the zero polynomial")
        remainder = list(self._coeffs)
        dd = divisor.degree
        lead = divisor.leading
        if len(remainder) - 1 < dd:
            return Polynomial.zero(), self
        quotient = [Fraction(0)] * (len(remainder) - dd)
        for k in range(len(remainder) - 1 - dd, -1, -1):
            q = remainder[k + dd] / lead
            quotient[k] = q
            if q:
                for j, c in enumerate(divisor._coeffs):
                    remainder[k + j] -= q * c
        return Polynomial(quotient), Polynomial(remainder[:dd])

    def __floordiv__(self, divisor: "Polynomial") -> "Polynomial":
        return self.divmod(divisor)[0]

    def __mod__(self, divisor: "Polynomial") -> "Polynomial":
        return self.divmod(divisor)[1]

    def derivative(self) -> "Polynomial":
        return Polynomial(i * c for i, c in enumerate(self._coeffs) if i > 0)

    def monic(self) -> "Polynomial":
        if self.is_zero:
            return self
        return self.scale(1 / self.leading)

    def content(self) -> Fraction:
        """Positive rational c with ``self / c`` integral and primitive (0 for zero)."""
        if self.is_zero:
            return Fraction(0)
        num_gcd = 0
        den_lcm = 1
        for c in self._coeffs:
            num_gcd = math.gcd(num_gcd, c.numerator)
            den_lcm = math.lcm(den_lcm, c.denominator)
        return Fraction(num_gcd, den_lcm)

    def primitive(self) -> "Polynomial":
        """Integer-coefficient multiple with content 1 and positive leading coefficient."""
        if self.is_zero:
            return self
        part = self.scale(1 / self.content())
        return -part if part.leading < 0 else part

    def square_free_part(self) -> "Polynomial":
        """Product of the distinct irreducible factors, as a primitive polynomial."""
        if self.degree < 1:
            return Polynomial.constant(1) if not self.is_zero else self
        return (self // poly_gcd(self, self.derivative())).primitive()

    # evaluation

    def __call__(self, x: Scalar) -> Fraction:
        x = _as_fraction(x)
        acc = Fraction(0)
        for c in reversed(self._coeffs):
            acc = acc * x + c
        return acc

    def sign_at(self, x: Scalar) -> int:
        value = self(x)
        return (value > 0) - (value < 0)

    def evaluate_float(self, x: float) -> float:
        acc = 0.0
        for c in reversed(self._coeffs):
            acc = acc * x + float(c)
        return acc

    def evaluate_array(self, xs: np.ndarray) -> np.ndarray:
        if self.is_zero:
            return np.zeros_like(xs, dtype=float)
        return npoly.polyval(xs, [float(c) for c in self._coeffs])

    def enclose(self, lo: Scalar, hi: Scalar) -> tuple[Fraction, Fraction]:
        """Rigorous bounds of the polynomial on [lo, hi] by interval Horner."""
        lo, hi = _as_fraction(lo), _as_fraction(hi)
        if lo > hi:
            raise AlgebraError(message=f"Empty interval [{lo}, {hi}]")
        if self.is_zero:
            return Fraction(0), Fraction(0)
        low = high = self.leading
        for c in reversed(self._coeffs[:-1]):
            products = (low * lo, low * hi, high * lo, high * hi)
            low, high = min(products) + c, max(products) + c
        return low, high

    def cauchy_bound(self) -> Fraction:
        """Every real root has absolute value strictly below this bound."""
        if self.degree < 1:
            return Fraction(1)
        lead = abs(self.leading)
        return 1 + max(abs(c) / lead for c in self._coeffs[:-1])

    # comparison and rendering

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Polynomial):
            return self._coeffs == other._coeffs
        if isinstance(other, int | Fraction) and not isinstance(other, bool):
            return self._coeffs == Polynomial.constant(other)._coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._coeffs)

    def __repr__(self) -> str:
        return f"Polynomial([{', '.join(str(c) for c in self._coeffs)}])"

    def __str__(self) -> str:
        return self.to_text()

    def to_strings(self) -> list[str]:
        return [str(c) for c in self._coeffs]

    def to_text(self, variable: str = "x") -> str:
        """Parsable text, highest degree first, e.g. ``-2*x^4 - x^3 + 11*x - 8``."""
        if self.is_zero:
            return "0"
        parts: list[str] = []
        for i in range(self.degree, -1, -1):
            c = self._coeffs[i]
            if c == 0:
                continue
            magnitude = abs(c)
            if i == 0:
                body = str(magnitude)
            else:
                power = variable if i == 1 else f"{variable}^{i}"
                body = power if magnitude == 1 else f"{magnitude}*{power}"
            if not parts:
                parts.append(f"-{body}" if c < 0 else body)
            else:
                parts.append(f"- {body}" if c < 0 else f"+ {body}")
        return " ".join(parts)


def poly_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """Monic greatest common divisor (zero only when both inputs are zero)."""
    while not b.is_zero:
        a, b = b, a % b
    return a.monic()


@dataclass(frozen=True)
class Remainder:
    """Failure value of an exact division, carrying the nonzero remainder."""

    remainder: Polynomial


def poly_arith(a: Polynomial, b: Polynomial, op: ArithOp) -> Polynomial:
    match op:
        case "add":
            return a + b
        case "sub":
            return a - b
        case "mul":
            return a * b
    raise AlgebraError(message=f"Unknown polynomial operation: {op}")


def poly_derivative(p: Polynomial) -> Polynomial:
    return p.derivative()


def poly_divide_exact(num: Polynomial, div: Polynomial) -> Polynomial | Remainder:
    """Quotient ``q`` with ``num == q*div``, or the nonzero remainder.

    Raises:
        AlgebraError: When ``div`` is the zero polynomial.
    """
    quotient, remainder = num.divmod(div)
    if not remainder.is_zero:
        return Remainder(remainder)
    return quotient


def taylor_shift(p: Polynomial, x0: Scalar) -> Polynomial:
    """Coefficients of p in powers of (x - x0), by repeated synthetic division.

    The result ``c`` satisfies ``p(x) == sum(c[k] * (x - x0)**k)`` with
    ``c[0] == p(x0)`` and ``c[1] == p'(x0)``.
    """
    x0 = _as_fraction(x0)
    work = list(reversed(p.coeffs))
    shifted: list[Fraction] = []
    while work:
        acc = Fraction(0)
        quotient: list[Fraction] = []
        for c in work:
            acc = acc * x0 + c
            quotient.append(acc)
        shifted.append(quotient.pop())
        work = quotient
    return Polynomial(shifted)


def taylor_unshift(shifted: Polynomial, x0: Scalar) -> Polynomial:
    """Expand ``sum(c[k] * (x - x0)**k)`` back into powers of x."""
    return taylor_shift(shifted, -_as_fraction(x0))
