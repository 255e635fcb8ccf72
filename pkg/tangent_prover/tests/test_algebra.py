"""Tests for exact polynomial and rational-function algebra."""

from fractions import Fraction

import pytest

from tangent_prover.algebra import (
    Polynomial,
    RationalFunction,
    Remainder,
    ceil_to_grid,
    double_root_factor,
    floor_to_grid,
    odd_multiplicity_part,
    poly_divide_exact,
    poly_gcd,
    ratfunc_arith,
    rational_power,
    rational_root,
    root_multiplicity,
    simplest_rational_between,
    square_free_decomposition,
    taylor_shift,
    taylor_unshift,
)
from tangent_prover.core.errors import (
    AlgebraError,
    DomainViolation,
    PoleAtTouchPoint,
    TangencyViolation,
)

X = Polynomial.x()


def ratfunc(num: list, den: list | None = None) -> RationalFunction:
    return RationalFunction(Polynomial(num), Polynomial(den) if den is not None else None)


def test_polynomial_strips_trailing_zeros() -> None:
    """Test normalization of the coefficient tuple."""
    assert Polynomial([1, 2, 0, 0]).coeffs == (1, 2)
    assert Polynomial([0, 0]).is_zero
    assert Polynomial.zero().degree == -1


def test_polynomial_division() -> None:
    """Test Euclidean division and exact division."""
    quotient, remainder = (X**3 - 1).divmod(X - 1)
    assert quotient == Polynomial([1, 1, 1])
    assert remainder.is_zero
    assert poly_divide_exact(X**2 + 1, X - 1) == Remainder(Polynomial([2]))
    with pytest.raises(AlgebraError):
        X.divmod(Polynomial.zero())


def test_poly_gcd_is_monic() -> None:
    """Test the greatest common divisor of two products."""
    a = (X - 1) ** 2 * (X + 2)
    b = (X - 1) * (X + 3) * 5
    assert poly_gcd(a, b) == Polynomial([-1, 1])


def test_taylor_shift() -> None:
    """Test coefficients in powers of (x - x0) and the inverse shift."""
    shifted = taylor_shift(X**2, 1)
    assert shifted == Polynomial([1, 2, 1])
    assert taylor_unshift(shifted, 1) == X**2
    p = Polynomial([-8, 11, 0, -1, -2])
    shifted = taylor_shift(p, Fraction(3, 2))
    assert shifted.coeff(0) == p(Fraction(3, 2))
    assert shifted.coeff(1) == p.derivative()(Fraction(3, 2))


def test_polynomial_to_text() -> None:
    """Test parsable rendering, highest degree first."""
    assert Polynomial([-8, 11, 0, -1, -2]).to_text() == "-2*x^4 - x^3 + 11*x - 8"
    assert Polynomial([Fraction(1, 2), 0, 1]).to_text() == "x^2 + 1/2"
    assert Polynomial.zero().to_text() == "0"


def test_polynomial_enclosure_and_bounds() -> None:
    """Test interval Horner enclosure and the Cauchy root bound."""
    assert (X**2 - 1).enclose(0, 1) == (-1, 0)
    assert (X**2 - 4).cauchy_bound() == 5


def test_content_and_primitive_part() -> None:
    """Test integer normalization of a rational polynomial."""
    p = Polynomial([Fraction(-1, 2), Fraction(-3, 4)])
    assert p.content() == Fraction(1, 4)
    assert p.primitive() == Polynomial([2, 3])


def test_rational_function_canonical_form() -> None:
    """Test that equal functions share numerator and denominator."""
    f = ratfunc([2, 2], [-4, -4])
    assert f.num == Polynomial([-1])
    assert f.den == Polynomial([2])
    assert f == RationalFunction.constant(Fraction(-1, 2))
    assert ratfunc([1, 1], [1]) * ratfunc([-1, 1], [1, 1]) == ratfunc([-1, 1])


def test_rational_function_errors() -> None:
    """Test zero denominators and poles."""
    with pytest.raises(AlgebraError):
        ratfunc([1], [0])
    with pytest.raises(AlgebraError):
        ratfunc_arith(RationalFunction.x(), RationalFunction.constant(0), "div")
    with pytest.raises(DomainViolation):
        ratfunc([1], [0, 1])(0)


def test_rational_function_derivative() -> None:
    """Test the quotient rule in canonical form."""
    assert ratfunc([1], [0, 1]).derivative() == ratfunc([-1], [0, 0, 1])


def test_double_root_factor_at_touch_point() -> None:
    """Test the factorization of x/(x^3 + 8) against its tangent line at 1."""
    f = ratfunc([0, 1], [8, 0, 0, 1])
    g = ratfunc([1, 2], [27])
    factor = double_root_factor(f, g, Fraction(1))
    assert factor.t.coeffs == (-8, -5, -2)
    assert factor.q_den.coeffs == (216, 0, 0, 27)
    assert factor.reconstruct() == f - g


def test_double_root_factor_rejects_non_tangent_curves() -> None:
    """Test value, slope and pole checks at the touch point."""
    f = ratfunc([0, 1], [8, 0, 0, 1])
    with pytest.raises(TangencyViolation) as exc_info:
        double_root_factor(f, ratfunc([0, 1], [9]), Fraction(1))
    assert exc_info.value.kind == "derivative"
    with pytest.raises(TangencyViolation) as exc_info:
        double_root_factor(f, RationalFunction.constant(0), Fraction(1))
    assert exc_info.value.kind == "value"
    with pytest.raises(PoleAtTouchPoint):
        double_root_factor(ratfunc([1], [0, 1]), RationalFunction.constant(1), Fraction(0))


def test_square_free_decomposition() -> None:
    """Test multiplicities and the odd-multiplicity part."""
    p = (X - 1) ** 2 * (X + 2)
    assert square_free_decomposition(p) == [(X + 2, 1), (X - 1, 2)]
    assert odd_multiplicity_part(p) == X + 2
    assert root_multiplicity(p, Fraction(1)) == 2
    assert root_multiplicity(p, Fraction(5)) == 0


def test_rational_roots_and_powers() -> None:
    """Test exact roots of perfect powers."""
    assert rational_root(Fraction(8, 27), 3) == Fraction(2, 3)
    assert rational_root(Fraction(-8), 3) == -2
    assert rational_root(Fraction(2), 2) is None
    assert rational_root(Fraction(-4), 2) is None
    assert rational_power(Fraction(4), Fraction(3, 2)) == 8
    assert rational_power(Fraction(0), Fraction(-1)) is None


@pytest.mark.parametrize(
    ("lo", "hi", "expected"),
    [
        (Fraction(1, 3), Fraction(1, 2), Fraction(2, 5)),
        (Fraction(0), Fraction(1), Fraction(1, 2)),
        (Fraction(3), None, Fraction(4)),
        (None, Fraction(-5, 2), Fraction(-3)),
        (None, None, Fraction(0)),
        (Fraction(-1), Fraction(1), Fraction(0)),
    ],
)
def test_simplest_rational_between(
    lo: Fraction | None, hi: Fraction | None, expected: Fraction
) -> None:
    """Test the smallest-denominator rational strictly inside an interval."""
    assert simplest_rational_between(lo, hi) == expected


def test_simplest_rational_between_empty() -> None:
    """Test that an empty interval is rejected."""
    with pytest.raises(ValueError):
        simplest_rational_between(Fraction(1), Fraction(1))


def test_grid_rounding() -> None:
    """Test rounding to decimal grids."""
    assert floor_to_grid(Fraction(919, 1000), 10) == Fraction(9, 10)
    assert ceil_to_grid(Fraction(901, 1000), 10) == 1
    assert ceil_to_grid(Fraction(9, 10), 10) == Fraction(9, 10)
