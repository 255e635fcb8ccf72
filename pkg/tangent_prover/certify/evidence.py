"""Grid-based numeric evidence for expressions outside the exact pipeline."""

import logging
from fractions import Fraction

import numpy as np

from tangent_prover.algebra.rationals import simplest_rational_between
from tangent_prover.certify.models import ConvexityProfile, EvidenceReport, Interval
from tangent_prover.core.errors import DomainViolation, InvalidProblem
from tangent_prover.expr.calculus import differentiate, eval_array, eval_numeric
from tangent_prover.expr.nodes import Expr, Sub
from tangent_prover.expr.printer import print_expr

logger = logging.getLogger(__name__)

MAX_REFINED_DIPS = 64


def _grid(iv: Interval, points: int, cap: float) -> tuple[np.ndarray, bool, tuple[float, float]]:
    truncated = not iv.is_bounded
    lo, hi = iv.float_bounds(cap)
    xs = np.linspace(lo, hi, points)
    if iv.lo_open:
        xs = xs[1:]
    if iv.hi_open:
        xs = xs[:-1]
    return xs, truncated, (lo, hi)


def _local_minima(gaps: np.ndarray) -> np.ndarray:
    left = np.concatenate(([np.inf], gaps[:-1]))
    right = np.concatenate((gaps[1:], [np.inf]))
    return np.flatnonzero((gaps <= left) & (gaps <= right))


def numeric_evidence(
    f: Expr,
    g: Expr,
    iv: Interval,
    grid_points: int = 10_000,
    tol: float = 1e-9,
    refinement_factor: int = 10,
    dip_threshold: float = 1e-3,
    infinite_cap: float = 64.0,
) -> EvidenceReport:
    """Sample f - g on a uniform grid, refine around near-zero dips, report the minimum.

    Unbounded intervals are truncated to ``infinite_cap`` past their finite end.

    Raises:
        InvalidProblem: Fewer than 100 grid points.
        DomainViolation: f or g leaves its real domain inside the interval.
    """
    if grid_points < 100:
        raise InvalidProblem(
            message=f"grid_points must be at least 100, got {grid_points}",
            details={"grid_points": grid_points},
        )
    gap_expr = Sub(f, g)
    xs, truncated, evaluated = _grid(iv, grid_points, infinite_cap)
    gaps = eval_array(gap_expr, xs)

    dips = [i for i in _local_minima(gaps) if gaps[i] < dip_threshold]
    dips = sorted(dips, key=lambda i: gaps[i])[:MAX_REFINED_DIPS]
    extra_x: list[np.ndarray] = []
    for i in dips:
        a = xs[max(i - 1, 0)]
        b = xs[min(i + 1, len(xs) - 1)]
        if a >= b:
            continue
        fine = np.linspace(a, b, 2 * refinement_factor + 1)
        midpoint = float(simplest_rational_between(Fraction(float(a)), Fraction(float(b))))
        extra_x.append(np.append(fine, midpoint))
    if extra_x:
        fine_x = np.concatenate(extra_x)
        all_x = np.concatenate([xs, fine_x])
        all_gaps = np.concatenate([gaps, eval_array(gap_expr, fine_x)])
        order = np.argsort(all_x, kind="stable")
        xs, gaps = all_x[order], all_gaps[order]

    worst = int(np.argmin(gaps))
    min_gap = float(gaps[worst])
    argmin = float(xs[worst])
    holds = min_gap >= -tol
    witness: Fraction | None = None
    witness_gap: float | None = None
    if not holds:
        witness, witness_gap = _violation_witness(gap_expr, xs, gaps, worst, tol, evaluated)
        logger.info(f"Numeric evidence violated for {print_expr(f)} at x = {witness}")

    return EvidenceReport(
        f=print_expr(f),
        g=print_expr(g),
        interval=iv,
        verdict="HOLDS_NUMERICALLY" if holds else "VIOLATED",
        grid_points=grid_points,
        tol=tol,
        min_gap=min_gap,
        argmin=argmin,
        witness=witness,
        witness_gap=witness_gap,
        refined_dips=len(extra_x),
        truncated=truncated,
        evaluated_range=evaluated,
    )


def _violation_witness(
    gap_expr: Expr,
    xs: np.ndarray,
    gaps: np.ndarray,
    worst: int,
    tol: float,
    evaluated: tuple[float, float],
) -> tuple[Fraction, float]:
    """Simplest rational inside the violated run around the worst point."""
    bad = gaps < -tol
    start = worst
    while start > 0 and bad[start - 1]:
        start -= 1
    end = worst
    while end < len(xs) - 1 and bad[end + 1]:
        end += 1
    left = xs[start - 1] if start > 0 else evaluated[0]
    right = xs[end + 1] if end < len(xs) - 1 else evaluated[1]
    candidate = simplest_rational_between(Fraction(float(left)), Fraction(float(right)))
    try:
        value = eval_numeric(gap_expr, float(candidate))
        if value < -tol:
            return candidate, value
    except DomainViolation:
        logger.debug(f"Witness candidate {candidate} not evaluable, using grid point")
    point = Fraction(float(xs[worst]))
    return point, float(gaps[worst])


def convexity_profile(
    f: Expr, iv: Interval, grid_points: int = 1_000, infinite_cap: float = 64.0
) -> ConvexityProfile:
    """Sign counts of f'' on an interior grid of iv."""
    second = differentiate(differentiate(f))
    lo, hi = iv.float_bounds(infinite_cap)
    xs = np.linspace(lo, hi, grid_points)[1:-1]
    values = eval_array(second, xs)
    positive = int(np.count_nonzero(values > 0))
    negative = int(np.count_nonzero(values < 0))
    return ConvexityProfile(
        interval=iv,
        positive=positive,
        negative=negative,
        zero=len(values) - positive - negative,
        changes_sign=positive > 0 and negative > 0,
    )
