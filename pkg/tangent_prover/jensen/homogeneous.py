"""Normalization of degree-homogeneous inequalities to a fixed side condition."""

import logging
from fractions import Fraction

import numpy as np

from tangent_prover.basecurve.models import ConstraintSpec
from tangent_prover.config import Settings, get_settings
from tangent_prover.core.errors import DomainViolation, InvalidProblem, NotHomogeneous
from tangent_prover.expr.calculus import eval_array, fold_constants, substitute
from tangent_prover.expr.nodes import Expr, is_constant
from tangent_prover.expr.parser import parse
from tangent_prover.expr.printer import print_expr
from tangent_prover.jensen.models import HomogeneousSpec, ProblemSpec

logger = logging.getLogger(__name__)

HOMOGENEITY_SAMPLES = 256


def _cone_check(problem: ProblemSpec) -> None:
    domain = problem.domain
    if domain.hi is not None or (domain.lo is not None and domain.lo != 0):
        raise InvalidProblem(
            message=f"Homogeneous normalization needs a cone domain, got {domain}",
            details={"domain": str(domain)},
        )


def _residual(e: Expr, xs: np.ndarray, scaled: np.ndarray, factor: np.ndarray) -> float:
    """Largest relative deviation of e(scaled) from factor * e(xs)."""
    base = eval_array(e, xs)
    moved = eval_array(e, scaled)
    expected = factor * base
    return float(np.max(np.abs(moved - expected) / np.maximum(1.0, np.abs(expected))))


def homogeneity_residual(
    e: Expr,
    degree: Fraction,
    lo: float,
    hi: float,
    rng: np.random.Generator,
) -> float:
    """Relative residual of e(t*x) = t^degree * e(x) at random x in [lo, hi], t in [1/2, 2]."""
    xs = rng.uniform(lo, hi, HOMOGENEITY_SAMPLES)
    ts = rng.uniform(0.5, 2.0, HOMOGENEITY_SAMPLES)
    try:
        return _residual(e, xs, xs * ts, ts ** float(degree))
    except DomainViolation as err:
        raise NotHomogeneous(
            message=f"{print_expr(e)} cannot be sampled for homogeneity: {err.message}",
            details={"expression": print_expr(e)},
        ) from err


def check_homogeneous(problem: ProblemSpec, settings: Settings | None = None) -> float:
    """Worst homogeneity residual over the functions and the bound.

    Raises:
        NotHomogeneous: A residual exceeds ``homogeneity_tol``.
    """
    settings = settings or get_settings()
    spec = problem.homogeneous
    if spec is None:
        raise InvalidProblem(message="Problem is not declared homogeneous")
    _cone_check(problem)
    rng = np.random.default_rng(settings.default_seed)
    lo, hi = 1e-3, 10.0
    worst = 0.0
    for text in dict.fromkeys(problem.functions):
        residual = homogeneity_residual(parse(text), spec.degree, lo, hi, rng)
        if residual > settings.homogeneity_tol:
            raise NotHomogeneous(
                message=f"{text} is not homogeneous of degree {spec.degree} "
                f"(residual {residual:.3g})",
                details={"function": text, "degree": str(spec.degree), "residual": residual},
            )
        worst = max(worst, residual)
    if problem.bound is not None:
        bound = parse(problem.bound)
        if not is_constant(bound):
            # s = sum x_j^alpha scales with t^alpha, the product with t^n
            power = spec.alpha if spec.alpha != 0 else Fraction(problem.n)
            residual = homogeneity_residual(bound, spec.degree / power, lo, hi, rng)
            if residual > settings.homogeneity_tol:
                raise NotHomogeneous(
                    message=f"bound {problem.bound} does not scale like degree {spec.degree}",
                    details={"bound": problem.bound, "residual": residual},
                )
            worst = max(worst, residual)
        elif spec.degree != 0 and _constant_value(bound) != 0:
            raise NotHomogeneous(
                message=f"constant bound {problem.bound} needs degree 0, got {spec.degree}",
                details={"bound": problem.bound, "degree": str(spec.degree)},
            )
    return worst


def _constant_value(e: Expr) -> float:
    return float(eval_array(e, np.zeros(1))[0])


def default_budget(spec: HomogeneousSpec, n: int) -> Fraction:
    """Power mean 1: prod x_j = 1 for alpha = 0, sum x_j^alpha = n otherwise."""
    if spec.budget is not None:
        return spec.budget
    return Fraction(1) if spec.alpha == 0 else Fraction(n)


def normalize_homogeneous(problem: ProblemSpec, settings: Settings | None = None) -> ProblemSpec:
    """Fix the aggregate of a homogeneous problem and substitute it into the bound.

    s = sum x_j^alpha (prod x_j for alpha = 0) is set to the declared budget, so
    64/(a+b+c+d) with budget 8 becomes the constant bound 8.

    Raises:
        NotHomogeneous: Numeric detection finds the problem is not homogeneous.
        InvalidProblem: No homogeneity declaration or a non-cone domain.
    """
    settings = settings or get_settings()
    spec = problem.homogeneous
    if spec is None:
        raise InvalidProblem(message="Problem is not declared homogeneous")
    residual = check_homogeneous(problem, settings)
    budget = default_budget(spec, problem.n)

    if spec.alpha == 0:
        constraint = ConstraintSpec(family="Product", n=problem.n, budget=budget)
    elif spec.alpha == 1:
        constraint = ConstraintSpec(family="Sum", n=problem.n, budget=budget)
    else:
        constraint = ConstraintSpec(
            family="PowerSum", n=problem.n, budget=budget, alpha=spec.alpha
        )

    bound = problem.bound
    if bound is not None:
        bound = print_expr(fold_constants(substitute(parse(bound), budget)))
    logger.info(
        f"Normalized {problem.problem_id}: {constraint.describe()}, bound {bound} "
        f"(homogeneity residual {residual:.2g})"
    )
    return problem.model_copy(
        update={"constraint": constraint, "bound": bound, "homogeneous": None}
    )
