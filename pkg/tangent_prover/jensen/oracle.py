"""Randomized checks on constrained tuples: the Jensen oracle and extremum sampling.

Tuples are drawn in the chart y_j = l(x_j), where the constraint reads
sum y_j = B, then mapped back through the inverse of l and filtered to the domain.
"""

import logging
from collections.abc import Callable
from dataclasses import dataclass

import numpy as np

from tangent_prover.basecurve.models import ConstraintSpec
from tangent_prover.basecurve.selection import constraint_l
from tangent_prover.certify.models import Interval
from tangent_prover.config import Settings, get_settings
from tangent_prover.core.errors import InvalidProblem, NoSolutionInDomain
from tangent_prover.expr.calculus import eval_array
from tangent_prover.expr.nodes import Expr
from tangent_prover.jensen.homogeneous import normalize_homogeneous
from tangent_prover.jensen.models import ExtremeReport, OracleReport, ProblemSpec, ProofCertificate
from tangent_prover.jensen.theorems import orientation

logger = logging.getLogger(__name__)

CUSTOM_GRID_POINTS = 20_001
HILL_CLIMB_STEPS = (0.5, 0.1, 1e-2, 1e-3, 1e-4, 1e-5)
HILL_CLIMB_TRIALS = 400
HILL_CLIMB_ROUNDS = 3


@dataclass(frozen=True)
class _Chart:
    """Constraint chart: sum y_j = budget with y_j >= y_lo (when finite) and y_j <= y_hi."""

    budget: float
    y_lo: float | None
    y_hi: float | None
    inverse: Callable[[np.ndarray], np.ndarray]

    def to_x(self, ys: np.ndarray) -> np.ndarray:
        return self.inverse(ys)


def in_domain(domain: Interval, xs: np.ndarray) -> np.ndarray:
    """Elementwise membership mask of a float array in the interval."""
    mask = np.isfinite(xs)
    if domain.lo is not None:
        lo = float(domain.lo)
        mask &= xs > lo if domain.lo_open else xs >= lo
    if domain.hi is not None:
        hi = float(domain.hi)
        mask &= xs < hi if domain.hi_open else xs <= hi
    return mask


def _chart(c: ConstraintSpec, domain: Interval, settings: Settings) -> _Chart:
    c = c.canonical()
    budget = float(c.budget)
    match c.family:
        case "Sum":
            lo = None if domain.lo is None else float(domain.lo)
            hi = None if domain.hi is None else float(domain.hi)
            return _Chart(budget, lo, hi, lambda ys: ys)
        case "PowerSum":
            alpha = float(c.alpha)
            # positive branch of x = y^(1/alpha)
            return _Chart(budget, 0.0, None, lambda ys: np.power(np.abs(ys), 1.0 / alpha))
        case "Product":
            return _Chart(float(np.log(budget)), None, None, np.exp)
    l = constraint_l(c, "x")
    lo, hi = domain.float_bounds(settings.numeric_infinite_cap)
    xs = np.linspace(lo, hi, CUSTOM_GRID_POINTS)[1:-1]
    ys = eval_array(l, xs)
    order = np.argsort(ys)
    ys_sorted, xs_sorted = ys[order], xs[order]
    if np.any(np.diff(ys_sorted) <= 0):
        raise InvalidProblem(
            message=f"constraint function {c.l} is not strictly monotone on {domain}",
            details={"l": c.l, "domain": str(domain)},
        )
    return _Chart(
        budget,
        float(ys_sorted[0]),
        float(ys_sorted[-1]),
        lambda y: np.interp(y, ys_sorted, xs_sorted, left=np.nan, right=np.nan),
    )


def _sample_chart(chart: _Chart, n: int, count: int, rng: np.random.Generator) -> np.ndarray:
    if chart.y_lo is not None and chart.budget - n * chart.y_lo > 0:
        weights = rng.dirichlet(np.ones(n), size=count)
        ys = chart.y_lo + (chart.budget - n * chart.y_lo) * weights
    else:
        scale = max(1.0, abs(chart.budget) / n)
        z = rng.normal(0.0, scale, size=(count, n))
        ys = chart.budget / n + z - z.mean(axis=1, keepdims=True)
    if chart.y_hi is not None:
        ys = ys[np.all(ys <= chart.y_hi, axis=1)]
    return ys


def _tuples(
    ys: np.ndarray, chart: _Chart, domain: Interval
) -> tuple[np.ndarray, np.ndarray]:
    xs = chart.to_x(ys)
    keep = np.all(in_domain(domain, xs), axis=1)
    return xs[keep], ys[keep]


def sum_of(exprs: list[Expr], xs: np.ndarray) -> np.ndarray:
    """Row sums of f_j(x_j) over an (m, n) array of tuples."""
    n = xs.shape[1]
    fs = exprs if len(exprs) == n else exprs * n
    if xs.shape[0] == 0:
        return np.zeros(0)
    return np.sum([eval_array(f, xs[:, j]) for j, f in enumerate(fs)], axis=0)


def _resolved(problem: ProblemSpec, settings: Settings) -> ProblemSpec:
    if problem.homogeneous is not None:
        return normalize_homogeneous(problem, settings)
    return problem


def _target(cert: ProofCertificate) -> float:
    conclusion = cert.conclusion
    if conclusion.n_f_x0 is not None:
        return float(conclusion.n_f_x0)
    if conclusion.value is not None:
        return conclusion.value
    raise InvalidProblem(
        message=f"certificate {cert.problem_id} ({cert.route}) states no proved value",
        details={"route": cert.route},
    )


def jensen_oracle(
    cert: ProofCertificate,
    problem: ProblemSpec,
    samples: int | None = None,
    seed: int | None = None,
    settings: Settings | None = None,
) -> OracleReport:
    """Check sum f_j(x_j) against the certified value on random constrained tuples.

    A tuple violates when sigma * sum f_j(x_j) < sigma * value - tol, with sigma = -1
    for upper-bound problems.
    """
    settings = settings or get_settings()
    samples = samples or settings.oracle_samples
    seed = settings.default_seed if seed is None else seed
    problem = _resolved(problem, settings)
    target = _target(cert)
    sigma = orientation(problem.direction)
    rng = np.random.default_rng(seed)

    chart = _chart(problem.constraint, problem.domain, settings)
    xs, _ = _tuples(_sample_chart(chart, problem.n, samples, rng), chart, problem.domain)
    margins = sigma * sum_of(problem.exprs, xs) - sigma * target
    tol = settings.numeric_tol * max(1.0, abs(target))
    violations = int(np.count_nonzero(margins < -tol))
    if margins.size:
        worst = int(np.argmin(margins))
        worst_margin, worst_point = float(margins[worst]), xs[worst].tolist()
    else:
        worst_margin, worst_point = float("inf"), []

    report = OracleReport(
        problem_id=problem.problem_id,
        seed=seed,
        requested=samples,
        evaluated=int(margins.size),
        target=target,
        worst_margin=worst_margin,
        worst_point=worst_point,
        violations=violations,
        passed=bool(margins.size) and violations == 0,
    )
    logger.info(
        f"Oracle {problem.problem_id}: {report.evaluated}/{samples} tuples, "
        f"{violations} violations, worst margin {worst_margin:.3g}"
    )
    return report


def _climb(
    best_y: np.ndarray,
    best_value: float,
    objective: Callable[[np.ndarray], np.ndarray],
    chart: _Chart,
    domain: Interval,
    rng: np.random.Generator,
) -> tuple[np.ndarray, float]:
    n = best_y.size
    for step in HILL_CLIMB_STEPS * HILL_CLIMB_ROUNDS:
        z = rng.normal(0.0, step, size=(HILL_CLIMB_TRIALS, n))
        ys = best_y + z - z.mean(axis=1, keepdims=True)
        if chart.y_lo is not None:
            ys = ys[np.all(ys >= chart.y_lo, axis=1)]
        if chart.y_hi is not None:
            ys = ys[np.all(ys <= chart.y_hi, axis=1)]
        xs, ys = _tuples(ys, chart, domain)
        if not len(xs):
            continue
        values = objective(xs)
        index = int(np.argmax(values))
        if values[index] > best_value:
            best_y, best_value = ys[index], float(values[index])
    return best_y, best_value


def sample_extreme(
    problem: ProblemSpec,
    samples: int | None = None,
    seed: int | None = None,
    settings: Settings | None = None,
) -> ExtremeReport:
    """Estimate the constrained extremum of sum f_j(x_j): the max for upper-bound problems.

    Random constrained tuples followed by a shrinking random local search.

    Raises:
        NoSolutionInDomain: No sampled tuple lies inside the domain.
    """
    settings = settings or get_settings()
    samples = samples or settings.extreme_samples
    seed = settings.default_seed if seed is None else seed
    problem = _resolved(problem, settings)
    sense = "max" if problem.direction == "le" else "min"
    sign = 1.0 if sense == "max" else -1.0
    exprs = problem.exprs
    rng = np.random.default_rng(seed)

    def objective(xs: np.ndarray) -> np.ndarray:
        return sign * sum_of(exprs, xs)

    chart = _chart(problem.constraint, problem.domain, settings)
    xs, ys = _tuples(_sample_chart(chart, problem.n, samples, rng), chart, problem.domain)
    if not len(xs):
        raise NoSolutionInDomain(
            message=f"no constrained sample of {problem.problem_id} lies in {problem.domain}",
            details={"domain": str(problem.domain)},
        )
    values = objective(xs)
    index = int(np.argmax(values))
    best_y, best_value = _climb(
        ys[index], float(values[index]), objective, chart, problem.domain, rng
    )
    argbest = chart.to_x(best_y[None, :])[0].tolist()

    logger.info(
        f"Sampled {sense} of {problem.problem_id}: {sign * best_value:.10g} at {argbest}"
    )
    return ExtremeReport(
        sense=sense, value=sign * best_value, argbest=argbest, samples=int(len(xs)), seed=seed
    )

