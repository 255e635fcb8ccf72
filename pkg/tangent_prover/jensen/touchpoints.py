"""Touch points shared by different functions, and the heterogeneous proof route.

For sum f_j(x_j) under sum l(x_j) = B every f_j gets its own curve k_j*l + m_j;
the curves sum to k*B + sum m_j only when all k_j agree, so the touch points
solve f_1'/l' = ... = f_n'/l' together with the constraint.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from tangent_prover.basecurve.construction import base_curve
from tangent_prover.basecurve.models import BaseCurve, ConstraintSpec, Direction
from tangent_prover.certify.models import Interval
from tangent_prover.certify.sturm import certify_sign
from tangent_prover.config import Settings, get_settings
from tangent_prover.core.errors import (
    AlgebraError,
    DomainViolation,
    InexactValue,
    NonMonotoneSlope,
    NoSolutionInDomain,
)
from tangent_prover.expr.calculus import (
    differentiate,
    div,
    eval_array,
    eval_exact,
    eval_numeric,
)
from tangent_prover.expr.nodes import Expr
from tangent_prover.expr.printer import print_expr
from tangent_prover.jensen.models import (
    CandidateDiagnostic,
    Case2Data,
    Conclusion,
    ProofCertificate,
    TouchPointSolution,
)
from tangent_prover.jensen.theorems import (
    conclusion_for,
    factor_curve,
    factorization_record,
    orientation,
    oriented_evidence,
    oriented_residual,
    relation,
    required_verdict,
)

logger = logging.getLogger(__name__)

SLOPE_GRID_POINTS = 2001
MAX_BISECTIONS = 200


@dataclass(frozen=True)
class _SlopeRatio:
    """f'/l' sampled on the domain grid, strictly monotone."""

    expr: Expr
    xs: np.ndarray
    values: np.ndarray
    increasing: bool

    @property
    def low(self) -> float:
        return float(self.values.min())

    @property
    def high(self) -> float:
        return float(self.values.max())

    def invert(self, s: float, tol: float) -> float:
        a, b = float(self.xs[0]), float(self.xs[-1])
        for _ in range(MAX_BISECTIONS):
            mid = (a + b) / 2
            if b - a <= tol * max(1.0, abs(mid)):
                break
            if (eval_numeric(self.expr, mid) < s) == self.increasing:
                a = mid
            else:
                b = mid
        return (a + b) / 2


def _domain_grid(domain: Interval, settings: Settings) -> np.ndarray:
    lo, hi = domain.float_bounds(settings.numeric_infinite_cap)
    xs = np.linspace(lo, hi, SLOPE_GRID_POINTS)
    if domain.lo is None or domain.lo_open:
        xs = xs[1:]
    if domain.hi is None or domain.hi_open:
        xs = xs[:-1]
    return xs


def _slope_ratio(f: Expr, l: Expr, xs: np.ndarray, index: int, domain: Interval) -> _SlopeRatio:
    expr = div(differentiate(f), differentiate(l))
    name = f"f_{index}'/l' = {print_expr(expr)}"
    try:
        values = eval_array(expr, xs)
    except DomainViolation as e:
        raise NonMonotoneSlope(
            message=f"{name} is undefined on {domain}: {e.message}",
            details={"function": print_expr(f), "domain": str(domain)},
        ) from e
    steps = np.diff(values)
    if not np.all(np.isfinite(values)) or not (np.all(steps > 0) or np.all(steps < 0)):
        raise NonMonotoneSlope(
            message=f"{name} is not strictly monotone on {domain}",
            details={"function": print_expr(f), "domain": str(domain)},
        )
    return _SlopeRatio(expr=expr, xs=xs, values=values, increasing=bool(steps[0] > 0))


def _exact_solution(
    ratios: list[_SlopeRatio],
    l: Expr,
    budget: Fraction,
    points: list[float],
    domain: Interval,
    max_denominator: int,
) -> tuple[list[Fraction], Fraction] | None:
    """Rational reconstruction of the touch points, kept only if it satisfies the system exactly."""
    candidates = [Fraction(x).limit_denominator(max_denominator) for x in points]
    if not all(domain.contains(x) for x in candidates):
        return None
    try:
        if sum((eval_exact(l, x) for x in candidates), Fraction(0)) != budget:
            return None
        slopes = {eval_exact(r.expr, x) for r, x in zip(ratios, candidates, strict=True)}
    except (InexactValue, DomainViolation):
        return None
    if len(slopes) != 1:
        return None
    return candidates, slopes.pop()


def solve_touchpoints(
    fs: list[Expr],
    l: Expr,
    budget: Fraction,
    domain: Interval,
    settings: Settings | None = None,
) -> TouchPointSolution:
    """Points x_j with equal slope ratios f_j'(x_j)/l'(x_j) and sum l(x_j) = B.

    Each ratio is inverted by bisection for a common slope s, and an outer
    bisection on s closes the constraint. A rational reconstruction is kept
    when it satisfies the system exactly.

    Raises:
        NonMonotoneSlope: Some f_j'/l' is undefined or not strictly monotone.
        NoSolutionInDomain: The constraint cannot be met with a common slope.
    """
    settings = settings or get_settings()
    budget = Fraction(budget)
    tol = settings.touchpoint_tol
    xs = _domain_grid(domain, settings)
    ratios = [_slope_ratio(f, l, xs, j, domain) for j, f in enumerate(fs, 1)]

    s_lo = max(r.low for r in ratios)
    s_hi = min(r.high for r in ratios)
    if s_lo > s_hi:
        raise NoSolutionInDomain(
            message=f"Slope ratios share no common value on {domain}",
            details={"low": s_lo, "high": s_hi},
        )

    def excess(s: float) -> tuple[list[float], float]:
        points = [r.invert(s, tol) for r in ratios]
        return points, float(np.sum(eval_array(l, np.asarray(points)))) - float(budget)

    points, h_lo = excess(s_lo)
    s = s_lo
    if h_lo != 0:
        hi_points, h_hi = excess(s_hi)
        if h_hi == 0:
            points, s = hi_points, s_hi
        elif np.sign(h_lo) == np.sign(h_hi):
            raise NoSolutionInDomain(
                message=f"sum l(x_j) = {budget} is not reachable with a common slope on {domain}",
                details={"budget": str(budget), "residuals": [h_lo, h_hi]},
            )
        else:
            a, b, h_a = s_lo, s_hi, h_lo
            for _ in range(MAX_BISECTIONS):
                s = (a + b) / 2
                points, h = excess(s)
                if abs(h) <= tol or b - a <= tol * max(1.0, abs(s)):
                    break
                if np.sign(h) == np.sign(h_a):
                    a, h_a = s, h
                else:
                    b = s

    exact = _exact_solution(
        ratios, l, budget, points, domain, settings.touchpoint_max_denominator
    )
    if exact is not None:
        exact_points, exact_slope = exact
        logger.info(f"Touch points {[str(x) for x in exact_points]}, common slope {exact_slope}")
        return TouchPointSolution(
            points=[float(x) for x in exact_points],
            exact=exact_points,
            common_slope=float(exact_slope),
            exact_slope=exact_slope,
            sum_residual=0.0,
            slope_residual=0.0,
        )

    sum_residual = abs(float(np.sum(eval_array(l, np.asarray(points)))) - float(budget))
    slope_residual = max(
        abs(eval_numeric(r.expr, x) - s) for r, x in zip(ratios, points, strict=True)
    )
    logger.info(f"Touch points {points} (no exact form), common slope {s:.12g}")
    return TouchPointSolution(
        points=points,
        common_slope=s,
        sum_residual=sum_residual,
        slope_residual=slope_residual,
    )


def prove_case2(
    fs: list[Expr],
    l: Expr,
    budget: Fraction,
    domain: Interval,
    direction: Direction = "ge",
    settings: Settings | None = None,
    constraint: ConstraintSpec | None = None,
) -> ProofCertificate:
    """sum f_j(x_j) >= sum (k*l(x_j) + m_j) = k*B + sum m_j with per-function curves.

    Touch points without an exact rational form, or functions without a rational
    form, give numeric evidence per function instead of sign certificates.

    Raises:
        NonMonotoneSlope: From the touch-point solver.
        NoSolutionInDomain: From the touch-point solver.
        PoleInInterval: A denominator vanishes on the domain.
    """
    settings = settings or get_settings()
    budget = Fraction(budget)
    sigma = orientation(direction)
    texts = [print_expr(f) for f in fs]
    constraint = constraint or ConstraintSpec(
        family="Custom", n=len(fs), budget=budget, l=print_expr(l)
    )
    solution = solve_touchpoints(fs, l, budget, domain, settings)
    base = ProofCertificate(
        route="Failure",
        functions=texts,
        n=len(fs),
        constraint=constraint,
        domain=domain,
        effective_domain=domain,
        direction=direction,
        sigma=sigma,
        touch_points=solution,
        numeric_tol=settings.numeric_tol,
    )

    if solution.exact is None:
        points = [Fraction(x).limit_denominator(10**12) for x in solution.points]
        curves = [base_curve(f, l, x) for f, x in zip(fs, points, strict=True)]
        return _numeric_case2(base, fs, curves, solution, sigma, settings)

    curves = [base_curve(f, l, x) for f, x in zip(fs, solution.exact, strict=True)]
    try:
        factors = [factor_curve(f, curve) for f, curve in zip(fs, curves, strict=True)]
    except AlgebraError as e:
        logger.info(f"Heterogeneous problem has no exact form ({e.message})")
        return _numeric_case2(base, fs, curves, solution, sigma, settings)

    ks = {curve.k for curve in curves}
    if len(ks) != 1:
        raise AlgebraError(
            message=f"Curve slopes differ: {sorted(str(k) for k in ks)}",
            details={"k": [str(curve.k) for curve in curves]},
        )
    k = curves[0].k
    sum_m = sum((curve.m for curve in curves), Fraction(0))
    value = k * budget + sum_m

    records = []
    certs = []
    diagnostics = []
    for j, (text, curve, (_, factor)) in enumerate(zip(texts, curves, factors, strict=True), 1):
        records.append(factorization_record(text, curve, factor))
        if factor.t.is_zero:
            continue
        cert = certify_sign(oriented_residual(factor, domain), domain, label=f"T_{j}*sign(Q_{j})")
        certs.append(cert)
        if cert.verdict != required_verdict(sigma):
            witness = None
            if cert.witness is not None:
                witness = cert.witness.negative_at if sigma > 0 else cert.witness.positive_at
            diagnostics.append(
                CandidateDiagnostic(
                    family=curve.family,
                    curve=curve.expr_text,
                    outcome=cert.verdict,
                    detail=f"f_{j} - g_{j} is not {required_verdict(sigma)} on {domain}",
                    witness=witness,
                )
            )

    holds = not diagnostics
    logger.info(f"Case 2 value k*B + sum m = {k}*{budget} + {sum_m} = {value}; holds={holds}")
    return base.model_copy(
        update={
            "route": "Case2Heterogeneous" if holds else "Failure",
            "curves": curves,
            "factorizations": records,
            "sign_certs": certs,
            "case2": Case2Data(common_k=k, budget=budget, sum_m=sum_m, value=value),
            "conclusion": conclusion_for(value, direction, lead="sum f_j(x_j)"),
            "diagnostics": diagnostics,
        }
    )


def _numeric_case2(
    base: ProofCertificate,
    fs: list[Expr],
    curves: list[BaseCurve],
    solution: TouchPointSolution,
    sigma: int,
    settings: Settings,
) -> ProofCertificate:
    reports = [
        oriented_evidence(f, curve.as_expr, base.domain, sigma, settings)
        for f, curve in zip(fs, curves, strict=True)
    ]
    value = sum(
        eval_numeric(f, x) for f, x in zip(fs, solution.points, strict=True)
    )
    holds = all(r.verdict == "HOLDS_NUMERICALLY" for r in reports)
    diagnostics = [
        CandidateDiagnostic(
            family=curve.family,
            curve=curve.expr_text,
            outcome=report.verdict,
            detail=f"min gap {report.min_gap:.3g} at x = {report.argmin:.6g}",
            witness=report.witness,
        )
        for curve, report in zip(curves, reports, strict=True)
    ]
    return base.model_copy(
        update={
            "route": "NumericEvidenceOnly" if holds else "Failure",
            "curves": curves,
            "numeric_evidence": reports,
            "conclusion": Conclusion(
                value=value,
                direction=base.direction,
                statement=f"sum f_j(x_j) {relation(base.direction)} {value:.12g} (numerically)",
            ),
            "diagnostics": diagnostics,
        }
    )
