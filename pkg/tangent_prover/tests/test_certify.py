"""Tests for intervals, Sturm sign certificates, certified minima and numeric evidence."""

import math
from fractions import Fraction

import pytest

from tangent_prover.algebra import Polynomial, RationalFunction
from tangent_prover.certify import (
    Interval,
    certified_min,
    certify_sign,
    convexity_profile,
    count_real_roots,
    isolate_real_roots,
    numeric_evidence,
)
from tangent_prover.constants import EVIDENCE_FLAG
from tangent_prover.core.errors import (
    AlgebraError,
    InvalidProblem,
    MinimumUncertifiable,
    PoleInInterval,
)
from tangent_prover.expr import parse

X = Polynomial.x()


class TestInterval:
    """Tests for interval parsing and set operations."""

    @pytest.mark.parametrize(
        ("text", "rendered"),
        [
            ("(0, 4)", "(0, 4)"),
            ("[9/10; 1]", "[9/10, 1]"),
            ("(0, inf)", "(0, inf)"),
            ("[0, inf]", "[0, inf)"),
            ("reals", "(-inf, inf)"),
            ("(-inf, 1]", "(-inf, 1]"),
        ],
    )
    def test_parse_and_render(self, text: str, rendered: str) -> None:
        """Test interval text in and out."""
        assert str(Interval.parse(text)) == rendered

    @pytest.mark.parametrize("text", ["nonsense", "(2, 1)", "(1, 1)", "[a, 2]"])
    def test_parse_rejects(self, text: str) -> None:
        """Test malformed, empty and degenerate open intervals."""
        with pytest.raises(InvalidProblem):
            Interval.parse(text)

    def test_contains(self) -> None:
        """Test membership at open and closed ends."""
        iv = Interval.parse("(0, 1]")
        assert not iv.contains(Fraction(0))
        assert iv.contains(Fraction(1))
        assert Interval.real_line().contains(Fraction(-10**9))

    def test_intersect_and_closure(self) -> None:
        """Test intersection keeps the stricter ends."""
        a = Interval.parse("(0, 4)")
        b = Interval.parse("[1, inf)")
        assert str(a.intersect(b)) == "[1, 4)"
        assert a.intersect(Interval.parse("[5, 6]")) is None
        assert str(a.closure()) == "[0, 4]"
        assert str(Interval.parse("(0, inf)").closure()) == "[0, inf)"
        assert a.contains_interval(Interval.closed(Fraction(1), Fraction(2)))
        assert not a.contains_interval(Interval.closed(Fraction(0), Fraction(2)))


def test_count_real_roots() -> None:
    """Test exact root counts with open and closed ends."""
    assert count_real_roots(X**2 - 2, Interval.real_line()) == 2
    assert count_real_roots(X**2 - 2, Interval.parse("(0, inf)")) == 1
    p = (X - 1) * (X - 2)
    assert count_real_roots(p, Interval.parse("(1, 2)")) == 0
    assert count_real_roots(p, Interval.parse("[1, 2]")) == 2
    assert count_real_roots((X - 1) ** 3, Interval.real_line()) == 1


def test_isolate_real_roots() -> None:
    """Test isolating intervals are narrow and contain the root."""
    roots = isolate_real_roots(X**2 - 2, Interval.parse("(0, inf)"))
    assert len(roots) == 1
    root = roots[0]
    assert not root.is_point
    assert (X**2 - 2)(root.lo) < 0 < (X**2 - 2)(root.hi)
    assert root.hi - root.lo <= Fraction(1, 10**6)


def test_isolate_rational_roots_as_points() -> None:
    """Test that closed-end roots are point intervals."""
    roots = isolate_real_roots((X - 1) * (X - 2), Interval.parse("[1, 2]"))
    assert roots[0] == Interval.point(Fraction(1))
    assert roots[-1] == Interval.point(Fraction(2))


class TestCertifySign:
    """Tests for Sturm-based sign certificates."""

    def test_non_positive_cofactor(self) -> None:
        """Test the cofactor of x/(x^3 + 8) on (0, 4)."""
        cert = certify_sign(Polynomial([-8, -5, -2]), Interval.parse("(0, 4)"), label="T")
        assert cert.verdict == "NonPositive"
        assert cert.label == "T"
        assert cert.root_report.count == 0
        assert cert.witness is None

    def test_even_multiplicity_root(self) -> None:
        """Test that a double root does not break a sign."""
        cert = certify_sign((X - 1) ** 2, Interval.real_line())
        assert cert.verdict == "NonNegative"
        assert cert.sign_changing_roots == 0
        assert cert.root_report.count == 1

    def test_indefinite_witness(self) -> None:
        """Test opposite-sign witnesses around a simple root."""
        p = X**2 - 2
        cert = certify_sign(p, Interval.parse("(0, inf)"))
        assert cert.verdict == "Indefinite"
        assert cert.sign_changing_roots == 1
        assert p(cert.witness.negative_at) < 0
        assert p(cert.witness.positive_at) > 0

    def test_point_interval(self) -> None:
        """Test the sign at a single point."""
        cert = certify_sign(X - 1, Interval.point(Fraction(1)))
        assert cert.verdict == "NonNegative"
        assert cert.sample == 1

    def test_zero_polynomial(self) -> None:
        """Test that the zero polynomial has no certificate."""
        with pytest.raises(AlgebraError):
            certify_sign(Polynomial.zero(), Interval.real_line())

    def test_certificate_serializes_exactly(self) -> None:
        """Test that coefficients survive JSON as exact rationals."""
        cert = certify_sign(Polynomial([Fraction(1, 3), 0, 1]), Interval.real_line())
        restored = type(cert).model_validate_json(cert.model_dump_json())
        assert restored.polynomial == cert.polynomial
        assert restored == cert


class TestCertifiedMin:
    """Tests for exact minima of rational functions."""

    def test_rational_critical_point(self) -> None:
        """Test x + 1/x on [1/2, 3]."""
        f = RationalFunction(X**2 + 1, X)
        report = certified_min(f, Interval.closed(Fraction(1, 2), Fraction(3)))
        assert report.value == 2
        assert report.exact
        assert report.attained
        assert report.argmin == 1

    def test_irrational_critical_point(self) -> None:
        """Test a rigorous lower bound at the irrational minimizer of x^3 - 6x."""
        f = RationalFunction(X**3 - 6 * X)
        report = certified_min(f, Interval.closed(Fraction(0), Fraction(3)))
        exact_min = -4 * math.sqrt(2)
        assert not report.exact
        assert float(report.value) <= exact_min
        assert float(report.value) == pytest.approx(exact_min, abs=1e-9)
        assert report.argmin_interval is not None
        assert float(report.argmin_interval.lo) == pytest.approx(math.sqrt(2), abs=1e-9)

    def test_infimum_at_infinity(self) -> None:
        """Test that a limit at infinity is reported as not attained."""
        f = RationalFunction(Polynomial.constant(1), X**2 + 1)
        report = certified_min(f, Interval.parse("[0, inf)"))
        assert report.value == 0
        assert not report.attained
        assert report.argmin is None

    def test_unbounded_below(self) -> None:
        """Test that a function decreasing to -inf has no minimum."""
        with pytest.raises(MinimumUncertifiable):
            certified_min(RationalFunction(-X), Interval.parse("(0, inf)"))

    def test_pole_on_closure(self) -> None:
        """Test that a pole at an open end is still rejected."""
        with pytest.raises(PoleInInterval):
            certified_min(RationalFunction(X**2 + 1, X), Interval.parse("(0, inf)"))


class TestNumericEvidence:
    """Tests for grid evidence outside the exact pipeline."""

    def test_holds(self) -> None:
        """Test AM-GM touching at x = 1."""
        report = numeric_evidence(parse("(x + 1)/2"), parse("sqrt(x)"), Interval.parse("(0, 4)"))
        assert report.verdict == "HOLDS_NUMERICALLY"
        assert report.flag == EVIDENCE_FLAG
        assert report.min_gap == pytest.approx(0.0, abs=1e-9)
        assert report.argmin == pytest.approx(1.0, abs=1e-3)
        assert not report.truncated

    def test_violated_with_witness(self) -> None:
        """Test that a violation carries a witness with negative gap."""
        report = numeric_evidence(parse("sqrt(x)"), parse("x"), Interval.parse("(0, 4)"))
        assert report.verdict == "VIOLATED"
        assert report.witness > 1
        assert report.witness_gap < 0

    def test_unbounded_interval_is_truncated(self) -> None:
        """Test the truncation flag and the evaluated range."""
        report = numeric_evidence(
            parse("x^2"), parse("2*x - 1"), Interval.parse("(0, inf)"), infinite_cap=8.0
        )
        assert report.verdict == "HOLDS_NUMERICALLY"
        assert report.truncated
        assert report.evaluated_range == (0.0, 8.0)

    def test_grid_too_small(self) -> None:
        """Test the minimum grid size."""
        with pytest.raises(InvalidProblem):
            numeric_evidence(parse("x"), parse("x"), Interval.parse("(0, 1)"), grid_points=10)


def test_convexity_profile() -> None:
    """Test sign counts of the second derivative."""
    assert convexity_profile(parse("x^3"), Interval.parse("(-1, 1)")).changes_sign
    profile = convexity_profile(parse("x^2"), Interval.parse("(-1, 1)"))
    assert not profile.changes_sign
    assert profile.negative == 0
