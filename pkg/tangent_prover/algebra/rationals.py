"""Exact helpers on BigRational values (``fractions.Fraction``)."""

import math
from fractions import Fraction


def int_nth_root(n: int, k: int) -> int:
    """Floor of the k-th root of a nonnegative integer."""
    if n < 0:
        raise ValueError("negative radicand")
    if n < 2:
        return n
    x = 1 << ((n.bit_length() + k - 1) // k)
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            return x
        x = y


def rational_root(value: Fraction, k: int) -> Fraction | None:
    """Exact real k-th root of a rational, or None when it is irrational.

    Odd k accepts negative values (real branch); even k returns None for them.
    """
    if k < 1:
        raise ValueError("root index must be positive")
    if value < 0:
        if k % 2 == 0:
            return None
        root = rational_root(-value, k)
        return -root if root is not None else None
    num = int_nth_root(value.numerator, k)
    den = int_nth_root(value.denominator, k)
    if num**k == value.numerator and den**k == value.denominator:
        return Fraction(num, den)
    return None


def rational_power(base: Fraction, exponent: Fraction) -> Fraction | None:
    """Exact base**exponent for rational exponent, or None when irrational or undefined."""
    if exponent.denominator == 1:
        if base == 0 and exponent < 0:
            return None
        return base ** int(exponent)
    root = rational_root(base, exponent.denominator)
    if root is None or (root == 0 and exponent < 0):
        return None
    return root ** exponent.numerator


def simplest_rational_between(lo: Fraction | None, hi: Fraction | None) -> Fraction:
    """Smallest-denominator rational strictly inside (lo, hi); None means infinite.

    Continued-fraction walk of the Stern-Brocot tree, so ties go to the value
    with the smallest numerator as well.
    """
    if lo is not None and hi is not None and lo >= hi:
        raise ValueError(f"empty interval ({lo}, {hi})")
    if lo is None or lo < 0:
        if hi is None or hi > 0:
            return Fraction(0)
        return -_simplest_above(-hi, None if lo is None else -lo)
    return _simplest_above(lo, hi)


def _simplest_above(lo: Fraction, hi: Fraction | None) -> Fraction:
    # 0 <= lo < hi
    above = math.floor(lo) + 1
    if hi is None or above < hi:
        return Fraction(above)
    whole = math.floor(lo)
    frac_lo = lo - whole
    frac_hi = hi - whole
    inner = _simplest_above(1 / frac_hi, None if frac_lo == 0 else 1 / frac_lo)
    return whole + 1 / inner


def floor_to_grid(value: Fraction, denominator: int) -> Fraction:
    """Largest multiple of 1/denominator not above value."""
    return Fraction(math.floor(value * denominator), denominator)


def ceil_to_grid(value: Fraction, denominator: int) -> Fraction:
    """Smallest multiple of 1/denominator not below value."""
    return Fraction(math.ceil(value * denominator), denominator)
