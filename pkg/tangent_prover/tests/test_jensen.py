"""Tests for the proof routes and the pipeline that picks them."""

import itertools
from collections.abc import Callable
from fractions import Fraction

import numpy as np
import pytest

from tangent_prover.algebra import Polynomial
from tangent_prover.basecurve import ConstraintSpec, tangent_line
from tangent_prover.certify import Interval
from tangent_prover.config import Settings
from tangent_prover.core.errors import (
    AlgebraError,
    ConditionsFail,
    InvalidProblem,
    NonMonotoneSlope,
    NoSolutionInDomain,
    NoSplitFound,
    NotHomogeneous,
    SplitConditionFails,
)
from tangent_prover.expr import Var, differentiate, eval_array, parse
from tangent_prover.jensen import (
    HomogeneousSpec,
    ProblemSpec,
    auto_split,
    check_homogeneous,
    normalize_homogeneous,
    prove,
    prove_case2,
    prove_theorem1,
    prove_with_split,
    solve_touchpoints,
    theorem5_cubic,
    verify_certificate,
)

BALTIC = parse("x/(x^3 + 8)")
CHINA = parse("10*x^3 - 9*x^5")
SUM_4 = ConstraintSpec(family="Sum", n=4, budget=4)
SUM_3_ONE = ConstraintSpec(family="Sum", n=3, budget=1)


class TestTheorem1:
    """Tests for the direct tangent route."""

    def test_upper_bound(self) -> None:
        """Test the tangent line bound for x/(x^3 + 8) with four variables."""
        curve = tangent_line(BALTIC, Fraction(1))
        cert = prove_theorem1(BALTIC, curve, SUM_4, Interval.parse("(0, 4)"), "le")
        assert cert.route == "Theorem1"
        assert cert.sigma == -1
        assert cert.conclusion.n_f_x0 == Fraction(4, 9)
        assert cert.factorizations[0].T_coeffs == [-8, -5, -2]
        assert cert.factorizations[0].Q_coeffs == [216, 0, 0, 27]
        assert cert.sign_certs[0].verdict == "NonPositive"
        assert cert.is_exact

    def test_indefinite_sign_fails_with_witness(self) -> None:
        """Test that x^3 over the reals crosses its tangent at -2."""
        f = parse("x^3")
        c = ConstraintSpec(family="Sum", n=2, budget=2)
        cert = prove_theorem1(f, tangent_line(f, Fraction(1)), c, Interval.real_line())
        assert cert.route == "Failure"
        assert cert.sign_certs[0].verdict == "Indefinite"
        assert cert.diagnostics[0].witness < -2


class TestSplit:
    """Tests for the split-domain route."""

    def test_auto_split_rounds_to_decimal_grid(self) -> None:
        """Test the split region cut at the crossing near 0.93."""
        curve = tangent_line(CHINA, Fraction(1, 3))
        G = auto_split(CHINA, curve, Interval.parse("(0, 1]"), n=3)
        assert str(G) == "[9/10, 1]"

    def test_prove_with_split(self) -> None:
        """Test the minimum condition min_G + 2*min_I >= 3*f(1/3)."""
        curve = tangent_line(CHINA, Fraction(1, 3))
        domain = Interval.parse("(0, 1]")
        G = Interval.parse("[9/10, 1]")
        cert = prove_with_split(CHINA, curve, SUM_3_ONE, domain, G)
        assert cert.route == "Theorem2Split"
        assert cert.split.required == 1
        assert cert.split.min_G == 1
        assert cert.split.combined >= cert.split.required
        assert str(cert.split.tangent_region) == "(0, 9/10)"

    def test_split_too_wide(self) -> None:
        """Test that min_G = f(1/2) = 31/32 is too small."""
        curve = tangent_line(CHINA, Fraction(1, 3))
        with pytest.raises(SplitConditionFails) as exc_info:
            prove_with_split(
                CHINA, curve, SUM_3_ONE, Interval.parse("(0, 1]"), Interval.parse("[1/2, 1]")
            )
        assert exc_info.value.details["min_G"] == "31/32"

    def test_no_crossing_means_no_split(self) -> None:
        """Test that a definite sign has nothing to split."""
        curve = tangent_line(BALTIC, Fraction(1))
        with pytest.raises(NoSplitFound):
            auto_split(BALTIC, curve, Interval.parse("(0, 4)"), direction="le")

    def test_split_without_region_is_direct(self) -> None:
        """Test that G = None falls back to the direct route."""
        curve = tangent_line(BALTIC, Fraction(1))
        cert = prove_with_split(BALTIC, curve, SUM_4, Interval.parse("(0, 4)"), None, "le")
        assert cert.route == "Theorem1"


class TestCubic:
    """Tests for the cubic fast path."""

    @pytest.mark.parametrize("n", range(2, 11))
    def test_conditions_hold_for_every_n(self, n: int) -> None:
        """Test x^3 - x^2 at x0 = 1 against random points on the simplex."""
        cert = theorem5_cubic(Fraction(1), Fraction(-1), Fraction(0), Fraction(0), n, Fraction(1))
        assert cert.route == "Theorem5Cubic"
        assert cert.conclusion.n_f_x0 == 0
        assert cert.theorem5.linear_factor == [1, 1]

        rng = np.random.default_rng(42)
        points = n * rng.dirichlet(np.ones(n), size=500)
        totals = np.sum(points**3 - points**2, axis=1)
        assert totals.min() >= -1e-9

    def test_conditions_fail(self) -> None:
        """Test a concave cubic."""
        with pytest.raises(ConditionsFail) as exc_info:
            theorem5_cubic(Fraction(-1), Fraction(0), Fraction(0), Fraction(0), 3, Fraction(1))
        assert exc_info.value.details["left"] == "-2"

    def test_not_a_cubic(self) -> None:
        """Test that a = 0 is rejected."""
        with pytest.raises(AlgebraError):
            theorem5_cubic(Fraction(0), Fraction(1), Fraction(0), Fraction(0), 3, Fraction(1))

    @pytest.mark.parametrize("n", [2, 3, 4])
    @pytest.mark.parametrize("x0", [Fraction(1, 2), Fraction(1), Fraction(2)])
    def test_conditions_match_grid_minimum(self, n: int, x0: Fraction) -> None:
        """Test the conditions against the tangent residual on [0, n x0] with step x0/20."""
        grid = [x0 * k / 20 for k in range(20 * n + 1)]
        for a, b, c in itertools.product(range(-3, 4), range(-3, 4), (-1, 0, 1)):
            if a == 0:
                continue
            p = Polynomial([0, c, b, a])
            slope = p.derivative()(x0)
            residual_min = min(p(x) - p(x0) - slope * (x - x0) for x in grid)
            try:
                theorem5_cubic(Fraction(a), Fraction(b), Fraction(c), Fraction(0), n, x0)
            except ConditionsFail:
                assert residual_min < 0, (a, b, c)
            else:
                assert residual_min >= 0, (a, b, c)


class TestCase2:
    """Tests for heterogeneous sums with a shared slope."""

    FUNCTIONS = [parse("1/x"), parse("1/x"), parse("4/x"), parse("16/x")]

    def test_touch_points(self, settings: Settings) -> None:
        """Test x_j = sqrt(a_j) for a_j/x_j with sum x_j = 8."""
        solution = solve_touchpoints(
            self.FUNCTIONS, Var("x"), Fraction(8), Interval.parse("(0, inf)"), settings
        )
        assert solution.exact == [1, 1, 2, 4]
        assert solution.exact_slope == -1
        assert solution.sum_residual == 0

    def test_prove_case2(self, settings: Settings) -> None:
        """Test the value k*B + sum m_j = -8 + 16."""
        cert = prove_case2(
            self.FUNCTIONS, Var("x"), Fraction(8), Interval.parse("(0, inf)"), settings=settings
        )
        assert cert.route == "Case2Heterogeneous"
        assert cert.case2.common_k == -1
        assert cert.case2.sum_m == 16
        assert cert.case2.value == 8
        assert len(cert.factorizations) == 4
        assert all(sc.verdict == "NonNegative" for sc in cert.sign_certs)

    def test_slope_ratio_not_monotone(self, settings: Settings) -> None:
        """Test that 3x^2 on (-1, 1) cannot be inverted."""
        with pytest.raises(NonMonotoneSlope):
            solve_touchpoints(
                [parse("x^3"), parse("x^3")], Var("x"), Fraction(0), Interval.parse("(-1, 1)"),
                settings,
            )

    def test_budget_out_of_reach(self, settings: Settings) -> None:
        """Test a budget no common slope reaches inside (0, 2)."""
        with pytest.raises(NoSolutionInDomain):
            solve_touchpoints(
                [parse("1/x"), parse("4/x")], Var("x"), Fraction(100), Interval.parse("(0, 2)"),
                settings,
            )


class TestHomogeneous:
    """Tests for homogeneous normalization."""

    def test_normalize(self, corpus_problem: Callable[[str], ProblemSpec]) -> None:
        """Test 64/s becoming the constant 8 under sum x_j = 8."""
        problem = normalize_homogeneous(corpus_problem("example3"))
        assert problem.constraint.family == "Sum"
        assert problem.constraint.budget == 8
        assert problem.bound == "8"
        assert problem.homogeneous is None

    def test_not_homogeneous(self) -> None:
        """Test that x + 1 does not scale with degree 1."""
        problem = ProblemSpec(
            functions=["x + 1"],
            n=3,
            domain=Interval.parse("(0, inf)"),
            homogeneous=HomogeneousSpec(degree=1),
        )
        with pytest.raises(NotHomogeneous):
            check_homogeneous(problem)
        cert = prove(problem)
        assert cert.route == "Failure"
        assert cert.diagnostics[0].family == "Homogeneity"

    def test_needs_cone_domain(self) -> None:
        """Test that a bounded domain is not scale invariant."""
        problem = ProblemSpec(
            functions=["1/x"],
            n=3,
            domain=Interval.parse("(0, 4)"),
            homogeneous=HomogeneousSpec(degree=-1),
        )
        with pytest.raises(InvalidProblem):
            check_homogeneous(problem)


class TestProve:
    """Tests for route selection in the full pipeline."""

    def test_cubic_route(self, corpus_problem: Callable[[str], ProblemSpec]) -> None:
        """Test x(1 - x)^2 with four variables summing to 1."""
        cert = prove(corpus_problem("sample5"))
        assert cert.route == "Theorem5Cubic"
        assert cert.conclusion.n_f_x0 == Fraction(9, 16)
        assert cert.theorem5.condition_right == Fraction(1, 2)

    def test_tangent_line_without_convexity(
        self, corpus_problem: Callable[[str], ProblemSpec]
    ) -> None:
        """Test that f'' changes sign on (0, 1) while the tangent line still proves the bound."""
        problem = corpus_problem("example2")
        curvature = eval_array(
            differentiate(differentiate(problem.exprs[0])), np.linspace(0.01, 0.99, 99)
        )
        assert curvature.min() < 0 < curvature.max()

        cert = prove(problem)
        assert cert.route == "Theorem1"
        assert cert.conclusion.n_f_x0 == 0
        assert verify_certificate(cert).ok

    def test_split_route(self, corpus_problem: Callable[[str], ProblemSpec]) -> None:
        """Test that the failing tangent line is rescued by a split."""
        cert = prove(corpus_problem("sample3"))
        assert cert.route == "Theorem2Split"
        assert str(cert.split.G) == "[9/10, 1]"
        assert cert.conclusion.bound_implied is True

    def test_numeric_route(self, corpus_problem: Callable[[str], ProblemSpec]) -> None:
        """Test the cube-root maximum proved only numerically."""
        cert = prove(corpus_problem("sample4"))
        assert cert.is_numeric
        assert cert.curves[0].family == "PowerCurve"
        assert cert.conclusion.n_f_x0 == 12
        assert cert.numeric_evidence[0].flag == "evidence, not certificate"

    def test_heterogeneous_route(self, corpus_problem: Callable[[str], ProblemSpec]) -> None:
        """Test the homogeneous heterogeneous sum after normalization."""
        cert = prove(corpus_problem("example3"))
        assert cert.route == "Case2Heterogeneous"
        assert cert.conclusion.n_f_x0 == 8
        assert cert.conclusion.bound_implied is True

    def test_single_variable(self) -> None:
        """Test that n = 1 pins the only variable."""
        problem = ProblemSpec(
            functions=["x^2"], n=1, constraint=ConstraintSpec(family="Sum", n=1, budget=2)
        )
        cert = prove(problem)
        assert cert.route == "SingleVariable"
        assert cert.conclusion.n_f_x0 == 4

    def test_bound_not_implied(self, corpus_problem: Callable[[str], ProblemSpec]) -> None:
        """Test that a stronger stated bound turns the proof into a failure."""
        problem = corpus_problem("baltic2011").model_copy(update={"bound": "1/3"})
        cert = prove(problem)
        assert cert.route == "Failure"
        assert cert.conclusion.bound_implied is False
        assert cert.diagnostics[-1].outcome == "BoundNotImplied"

    def test_irrational_touch_point_is_input_error(self) -> None:
        """Test that prod x_j = 2 with two variables needs an explicit touch point."""
        problem = ProblemSpec(
            functions=["x^2"],
            n=2,
            constraint=ConstraintSpec(family="Product", n=2, budget=2),
            domain=Interval.parse("(0, inf)"),
        )
        with pytest.raises(InvalidProblem):
            prove(problem)

    def test_touch_point_must_satisfy_constraint(self) -> None:
        """Test that an override off the constraint is rejected."""
        problem = ProblemSpec(
            functions=["x^2"],
            n=2,
            constraint=ConstraintSpec(family="Sum", n=2, budget=2),
            touch_point=Fraction(2),
        )
        with pytest.raises(InvalidProblem):
            prove(problem)

    def test_heterogeneous_product_budget(self) -> None:
        """Test that a heterogeneous product constraint needs budget 1."""
        problem = ProblemSpec(
            functions=["x", "2*x"],
            n=2,
            constraint=ConstraintSpec(family="Product", n=2, budget=2),
            domain=Interval.parse("(0, inf)"),
        )
        with pytest.raises(InvalidProblem):
            prove(problem)

    def test_certificate_echoes_settings(
        self, corpus_problem: Callable[[str], ProblemSpec], settings: Settings
    ) -> None:
        """Test the seed and tolerance recorded in the certificate."""
        cert = prove(corpus_problem("baltic2011"), settings)
        assert cert.problem_id == "baltic2011"
        assert cert.seeds == [settings.default_seed]
        assert cert.numeric_tol == settings.numeric_tol
