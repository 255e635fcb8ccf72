"""Tests for constraints, base curves, admissibility and family selection."""

from fractions import Fraction

import numpy as np
import pytest
from pydantic import ValidationError

from tangent_prover.basecurve import (
    ConstraintSpec,
    admissibility_theorem3,
    admissibility_theorem4,
    base_curve,
    constraint_l,
    constraint_window,
    curve_family_of,
    local_base_side,
    log_curve,
    parabola_curve,
    power_curve,
    power_mean,
    power_mean_ordered,
    select_family,
    slope_at,
    tangent_line,
    touch_point,
)
from tangent_prover.certify import Interval
from tangent_prover.core.errors import CurveError, DomainViolation, InvalidProblem
from tangent_prover.expr import Ln, Var, eval_numeric, parse, print_expr

BALTIC = parse("x/(x^3 + 8)")
CUBE_ROOT = parse("x*root(3, 12 - x^2)")


class TestConstraintSpec:
    """Tests for constraint validation and canonical forms."""

    def test_mean_fixed_becomes_power_sum(self) -> None:
        """Test that a fixed quadratic mean is a power-sum budget."""
        c = ConstraintSpec(family="MeanFixed", n=3, mean=2, alpha=2).canonical()
        assert c.family == "PowerSum"
        assert c.budget == 12
        assert c.alpha == 2

    def test_mean_fixed_alpha_one_becomes_sum(self) -> None:
        """Test that the arithmetic mean becomes a plain sum."""
        c = ConstraintSpec(family="MeanFixed", n=4, mean=Fraction(1, 4)).canonical()
        assert c.family == "Sum"
        assert c.budget == 1

    def test_irrational_mean_power(self) -> None:
        """Test that mean^alpha must be rational."""
        c = ConstraintSpec(family="MeanFixed", n=2, mean=2, alpha=Fraction(1, 2))
        with pytest.raises(InvalidProblem):
            c.canonical()

    @pytest.mark.parametrize(
        "data",
        [
            {"family": "Sum", "n": 3},
            {"family": "PowerSum", "n": 3, "budget": 3},
            {"family": "PowerSum", "n": 3, "budget": 3, "alpha": 0},
            {"family": "Product", "n": 3, "budget": -1},
            {"family": "Custom", "n": 3, "budget": 1},
            {"family": "MeanFixed", "n": 3},
            {"family": "Sum", "n": 0, "budget": 1},
        ],
    )
    def test_invalid_constraints(self, data: dict) -> None:
        """Test that incomplete constraints are rejected."""
        with pytest.raises(ValidationError):
            ConstraintSpec.model_validate(data)

    def test_describe(self) -> None:
        """Test human-readable constraint text."""
        c = ConstraintSpec(family="PowerSum", n=3, budget=12, alpha=2)
        assert c.describe() == "sum x_j^2 = 12"


class TestTouchPoint:
    """Tests for the touch point implied by a constraint."""

    @pytest.mark.parametrize(
        ("constraint", "expected"),
        [
            ({"family": "Sum", "n": 4, "budget": 4}, Fraction(1)),
            ({"family": "Sum", "n": 4, "budget": 1}, Fraction(1, 4)),
            ({"family": "PowerSum", "n": 3, "budget": 12, "alpha": 2}, Fraction(2)),
            ({"family": "PowerSum", "n": 3, "budget": 3, "alpha": 3}, Fraction(1)),
            ({"family": "Product", "n": 3, "budget": 8}, Fraction(2)),
        ],
    )
    def test_closed_form(self, constraint: dict, expected: Fraction) -> None:
        """Test B/n, its alpha-th root and the n-th root of a product."""
        assert touch_point(ConstraintSpec.model_validate(constraint)) == expected

    def test_custom_constraint(self) -> None:
        """Test the numeric solve of l(x0) = B/n with rational reconstruction."""
        c = ConstraintSpec(family="Custom", n=5, budget=1, l="1/(4 + x)")
        assert touch_point(c, Interval.parse("[0, inf)")) == 1

    @pytest.mark.parametrize(
        "constraint",
        [
            {"family": "Product", "n": 2, "budget": 2},
            {"family": "PowerSum", "n": 2, "budget": 4, "alpha": 2},
        ],
    )
    def test_irrational_touch_point(self, constraint: dict) -> None:
        """Test that an irrational touch point asks for an override."""
        with pytest.raises(InvalidProblem) as exc_info:
            touch_point(ConstraintSpec.model_validate(constraint))
        assert "touch_point" in exc_info.value.message

    def test_constraint_l(self) -> None:
        """Test the l of each constraint family."""
        assert constraint_l(ConstraintSpec(family="Sum", n=2, budget=2)) == Var("x")
        assert constraint_l(ConstraintSpec(family="Product", n=2, budget=1)) == Ln(Var("x"))
        power = constraint_l(ConstraintSpec(family="PowerSum", n=2, budget=2, alpha=Fraction(1, 2)))
        assert print_expr(power) == "sqrt(x)"


class TestConstraintWindow:
    """Tests for the range a single variable can reach."""

    def test_sum_caps_positive_variables(self) -> None:
        """Test that a sum of positive variables bounds each one."""
        c = ConstraintSpec(family="Sum", n=3, budget=3)
        assert str(constraint_window(c, Interval.parse("(0, inf)"))) == "(0, 3]"
        assert str(constraint_window(c, Interval.parse("(0, inf)"), "inner")) == "(0, 3)"

    def test_domain_already_inside(self) -> None:
        """Test that a narrower domain is kept."""
        c = ConstraintSpec(family="Sum", n=4, budget=4)
        assert str(constraint_window(c, Interval.parse("(0, 4)"))) == "(0, 4)"

    def test_irrational_power_sum_cap_rounds_outward(self) -> None:
        """Test the outer window for sum x_j^2 = 12."""
        c = ConstraintSpec(family="PowerSum", n=3, budget=12, alpha=2)
        outer = constraint_window(c, Interval.parse("(0, inf)"))
        inner = constraint_window(c, Interval.parse("(0, inf)"), "inner")
        assert outer.hi**2 >= 12
        assert inner.hi**2 <= 12
        assert outer.hi - inner.hi <= Fraction(2, 10**6)

    def test_real_line_is_not_capped(self) -> None:
        """Test that signed variables have no cap."""
        c = ConstraintSpec(family="Sum", n=3, budget=3)
        assert constraint_window(c, Interval.real_line()) == Interval.real_line()


class TestBaseCurve:
    """Tests for curve construction."""

    def test_tangent_line(self) -> None:
        """Test the tangent of x/(x^3 + 8) at 1."""
        curve = tangent_line(BALTIC, Fraction(1))
        assert curve.family == "Line"
        assert curve.k == Fraction(2, 27)
        assert curve.m == Fraction(1, 27)
        assert curve.expr_text == "2/27*x + 1/27"
        assert curve.is_exact

    @pytest.mark.parametrize(
        ("text", "x0"),
        [
            ("x/(x^3 + 8)", Fraction(1)),
            ("x*root(3, 12 - x^2)", Fraction(2)),
            ("1/(1-x) - 2/(1+x)", Fraction(1, 3)),
            ("10*x^3 - 9*x^5", Fraction(1, 3)),
        ],
    )
    @pytest.mark.parametrize("error", [0.1, -0.1])
    def test_wrong_slope_line_crosses(self, text: str, x0: Fraction, error: float) -> None:
        """Test that only the tangent slope keeps f - g of one sign at x0 +/- 1e-4."""
        f = parse(text)
        curve = tangent_line(f, x0)
        at, h = float(x0), 1e-4
        f_x0 = eval_numeric(f, at)

        def gap(x: float, slope: float) -> float:
            return eval_numeric(f, x) - f_x0 - slope * (x - at)

        wrong = curve.k_value + error
        assert gap(at + h, wrong) * gap(at - h, wrong) < 0
        assert gap(at + h, curve.k_value) * gap(at - h, curve.k_value) > 0

    def test_power_curve(self) -> None:
        """Test the curve in x^2 for the cube-root function at 2."""
        curve = power_curve(CUBE_ROOT, Fraction(2), Fraction(2))
        assert curve.family == "PowerCurve"
        assert curve.alpha == 2
        assert curve.k == Fraction(1, 3)
        assert curve.m == Fraction(8, 3)

    def test_negated_curve(self) -> None:
        """Test that negation flips every constant."""
        curve = power_curve(CUBE_ROOT, Fraction(2), Fraction(2)).negated()
        assert curve.k == Fraction(-1, 3)
        assert curve.m == Fraction(-8, 3)
        assert curve.k_value == pytest.approx(-1 / 3)

    def test_irrational_constants(self) -> None:
        """Test that irrational k keeps an exact text and a float value."""
        curve = tangent_line(parse("sqrt(x)"), Fraction(2))
        assert not curve.is_exact
        assert curve.k is None
        assert curve.k_value == pytest.approx(1 / (2 * 2**0.5))
        assert "sqrt" in curve.k_text

    def test_curve_undefined_at_touch_point(self) -> None:
        """Test that f must be differentiable at x0."""
        with pytest.raises(CurveError):
            tangent_line(parse("sqrt(x)"), Fraction(-1))

    def test_invalid_curve_families(self) -> None:
        """Test the parabola at 0 and the log curve at non-positive points."""
        with pytest.raises(CurveError):
            parabola_curve(BALTIC, Fraction(0))
        with pytest.raises(CurveError):
            log_curve(BALTIC, Fraction(0))
        with pytest.raises(CurveError):
            power_curve(BALTIC, Fraction(0), Fraction(1))

    def test_custom_l(self) -> None:
        """Test a curve in 1/(4 + x)."""
        curve = base_curve(parse("x/(4 + x^2)"), parse("1/(4 + x)"), Fraction(1))
        assert curve.family == "Custom"
        assert curve.k == -3
        assert curve.m == Fraction(4, 5)

    @pytest.mark.parametrize(
        ("text", "family", "alpha"),
        [
            ("x", "Line", Fraction(1)),
            ("x^3", "PowerCurve", Fraction(3)),
            ("sqrt(x)", "PowerCurve", Fraction(1, 2)),
            ("root(3, x^2)", "PowerCurve", Fraction(2, 3)),
            ("ln(x)", "LogCurve", None),
            ("1/(4 + x)", "Custom", None),
        ],
    )
    def test_curve_family_of(self, text: str, family: str, alpha: Fraction | None) -> None:
        """Test recognition of l."""
        assert curve_family_of(parse(text)) == (family, alpha)


class TestLocalSide:
    """Tests for the side of the curve near the touch point."""

    def test_exact_sides(self) -> None:
        """Test below, above and crossing from the Taylor coefficients of T."""
        assert local_base_side(parse("x^2"), parse("2*x - 1"), Fraction(1)) == "Below"
        assert local_base_side(parse("-x^2"), parse("0"), Fraction(0)) == "Above"
        assert local_base_side(parse("x^3"), parse("0"), Fraction(0)) == "Crossing"

    def test_numeric_side(self) -> None:
        """Test the sampled fallback for radicals."""
        assert local_base_side(parse("sqrt(x)"), parse("(x + 1)/2"), Fraction(1)) == "Above"


class TestAdmissibility:
    """Tests for the power-mean closure conditions."""

    def test_tangent_under_power_sum(self) -> None:
        """Test (alpha - 1) * f'(x0) <= 0."""
        assert admissibility_theorem3(Fraction(2), Fraction(-4, 3)).admissible
        verdict = admissibility_theorem3(Fraction(2), Fraction(1))
        assert not verdict.admissible
        assert "positive" in verdict.reason

    def test_power_curve_under_sum(self) -> None:
        """Test (alpha - 1) * f'(x0) >= 0 with alpha nonzero."""
        assert admissibility_theorem4(Fraction(2), Fraction(25, 9)).admissible
        assert not admissibility_theorem4(Fraction(2), Fraction(-2, 27)).admissible
        assert not admissibility_theorem4(Fraction(0), Fraction(1)).admissible
        assert admissibility_theorem4(Fraction(-1), Fraction(-1)).admissible


class TestSelectFamily:
    """Tests for ordered candidate selection."""

    def test_sum_constraint_upper_bound(self) -> None:
        """Test that a decreasing oriented slope rules out power curves."""
        c = ConstraintSpec(family="Sum", n=4, budget=4)
        selection = select_family(BALTIC, c, Fraction(1), "le", Interval.parse("(0, 4)"))
        assert [curve.family for curve in selection.candidates] == ["Line"]
        assert [r.alpha for r in selection.rejected] == [2, 3]

    def test_sum_constraint_power_curves_admitted(self) -> None:
        """Test that an increasing f admits power curves after the line."""
        c = ConstraintSpec(family="Sum", n=3, budget=1)
        selection = select_family(
            parse("10*x^3 - 9*x^5"), c, Fraction(1, 3), "ge", Interval.parse("(0, 1]")
        )
        assert [(curve.family, curve.alpha) for curve in selection.candidates] == [
            ("Line", None),
            ("PowerCurve", 2),
            ("PowerCurve", 3),
        ]

    def test_power_sum_constraint(self) -> None:
        """Test the power curve first, then the admissible tangent line."""
        c = ConstraintSpec(family="PowerSum", n=3, budget=12, alpha=2)
        selection = select_family(CUBE_ROOT, c, Fraction(2), "le", Interval.parse("(0, inf)"))
        assert [curve.family for curve in selection.candidates] == ["PowerCurve", "Line"]

    def test_power_mean_closure_needs_positive_domain(self) -> None:
        """Test that signed variables rule out the tangent line under a power sum."""
        c = ConstraintSpec(family="PowerSum", n=3, budget=3, alpha=3)
        selection = select_family(parse("x^4"), c, Fraction(1), "ge", Interval.real_line())
        assert [curve.family for curve in selection.candidates] == ["PowerCurve"]
        assert selection.rejected[0].family == "Line"

    def test_custom_constraint(self) -> None:
        """Test the single curve in l for a custom constraint."""
        c = ConstraintSpec(family="Custom", n=5, budget=1, l="1/(4 + x)")
        selection = select_family(parse("x/(4 + x^2)"), c, Fraction(1), "le")
        assert [curve.family for curve in selection.candidates] == ["Custom"]

    def test_slope_at(self) -> None:
        """Test exact and irrational slopes."""
        assert slope_at(CUBE_ROOT, Fraction(2)) == Fraction(4, 3)
        assert slope_at(parse("sqrt(x)"), Fraction(2)) == pytest.approx(0.3535533906)


class TestPowerMean:
    """Tests for power means."""

    def test_exact_values(self) -> None:
        """Test rational power means."""
        assert power_mean(Fraction(2), [1, 7]).exact == 5
        assert power_mean(Fraction(0), [1, 4]).exact == 2
        assert power_mean(Fraction(1), [1.0, 2.0]).exact is None
        assert power_mean(Fraction(-1), [1.0, 3.0]).value == pytest.approx(1.5)

    def test_ordering(self) -> None:
        """Test c_alpha <= c_beta for alpha <= beta."""
        assert power_mean_ordered(Fraction(1), Fraction(2), [1.0, 3.0, 9.0])
        assert power_mean_ordered(Fraction(3), Fraction(0), [0.5, 2.0])

    def test_monotone_on_random_tuples(self) -> None:
        """Test c_alpha <= c_beta for alpha < beta on 1000 random positive tuples."""
        rng = np.random.default_rng(23)
        for _ in range(1000):
            alpha, beta = sorted(int(v) for v in rng.choice(np.arange(-2, 4), 2, replace=False))
            xs = rng.uniform(0.1, 10.0, size=int(rng.integers(2, 6))).tolist()
            low = power_mean(Fraction(alpha), xs).value
            high = power_mean(Fraction(beta), xs).value
            assert low <= high * (1 + 1e-12), (alpha, beta, xs)
            assert power_mean_ordered(Fraction(alpha), Fraction(beta), xs)

    def test_rejects_non_positive(self) -> None:
        """Test the positivity requirement."""
        with pytest.raises(DomainViolation):
            power_mean(Fraction(2), [1.0, 0.0])
        with pytest.raises(DomainViolation):
            power_mean(Fraction(2), [])
