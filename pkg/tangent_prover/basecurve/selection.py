"""Constraint helpers and ordered base-curve family selection."""

import logging
import math
from collections.abc import Callable
from fractions import Fraction
from typing import Literal

import numpy as np

from tangent_prover.algebra.rationals import rational_power, rational_root
from tangent_prover.basecurve.admissibility import (
    admissibility_theorem3,
    admissibility_theorem4,
)
from tangent_prover.basecurve.construction import (
    base_curve,
    log_curve,
    power_curve,
    power_expr,
    tangent_line,
    variable_of,
)
from tangent_prover.basecurve.models import (
    BaseCurve,
    ConstraintSpec,
    Direction,
    FamilySelection,
    Rejection,
)
from tangent_prover.certify.models import Interval
from tangent_prover.config import Settings, get_settings
from tangent_prover.core.errors import (
    CurveError,
    DomainViolation,
    InexactValue,
    InvalidProblem,
)
from tangent_prover.expr.calculus import (
    differentiate,
    eval_array,
    eval_exact,
    eval_numeric,
    substitute,
)
from tangent_prover.expr.nodes import Expr, Ln, Var
from tangent_prover.expr.parser import parse
from tangent_prover.expr.printer import print_expr

logger = logging.getLogger(__name__)

WindowMode = Literal["outer", "inner"]

# decimal grid used to bound an irrational window end
WINDOW_DENOMINATOR = 10**6


def constraint_l(c: ConstraintSpec, variable: str = "x") -> Expr:
    """The function l with the constraint written as sum l(x_j) = B."""
    c = c.canonical()
    match c.family:
        case "Sum":
            return Var(variable)
        case "PowerSum":
            return power_expr(c.alpha, variable)
        case "Product":
            return Ln(Var(variable))
    return substitute(parse(c.l), Var(variable))


def _positive_domain(domain: Interval) -> bool:
    return domain.lo is not None and domain.lo >= 0


def touch_point(
    c: ConstraintSpec, domain: Interval | None = None, settings: Settings | None = None
) -> Fraction:
    """Touch point x0 implied by the constraint, exact.

    Sum: B/n. PowerSum: (B/n)^(1/alpha). Product: the n-th root of B. Custom: the
    solution of l(x0) = B/n inside the domain, found by bisection and rational
    reconstruction.

    Raises:
        InvalidProblem: x0 is irrational or cannot be located.
    """
    c = c.canonical()
    target = c.budget / c.n
    match c.family:
        case "Sum":
            return target
        case "PowerSum":
            x0 = rational_power(target, 1 / c.alpha)
            if x0 is None:
                raise InvalidProblem(
                    message=f"(B/n)^(1/alpha) = ({target})^(1/{c.alpha}) is irrational; "
                    "give touch_point explicitly",
                    details={"budget": str(c.budget), "n": c.n, "alpha": str(c.alpha)},
                )
            return x0
        case "Product":
            x0 = rational_root(c.budget, c.n)
            if x0 is None:
                raise InvalidProblem(
                    message=f"{c.n}-th root of {c.budget} is irrational; "
                    "give touch_point explicitly",
                    details={"budget": str(c.budget), "n": c.n},
                )
            return x0
    return _solve_custom_touch_point(parse(c.l), target, domain or Interval.real_line(), settings)


def _solve_custom_touch_point(
    l: Expr, target: Fraction, domain: Interval, settings: Settings | None
) -> Fraction:
    settings = settings or get_settings()
    lo, hi = domain.float_bounds(settings.numeric_infinite_cap)
    xs = np.linspace(lo, hi, 4001)[1:-1]
    try:
        residual = eval_array(l, xs) - float(target)
    except DomainViolation as e:
        raise InvalidProblem(
            message=f"l = {print_expr(l)} is undefined on {domain}: {e.message}",
            details={"l": print_expr(l), "domain": str(domain)},
        ) from e
    crossings = np.flatnonzero(np.sign(residual[:-1]) * np.sign(residual[1:]) <= 0)
    if len(crossings) == 0:
        raise InvalidProblem(
            message=f"l(x) = {target} has no solution on {domain}",
            details={"l": print_expr(l), "target": str(target)},
        )
    a, b = float(xs[crossings[0]]), float(xs[crossings[0] + 1])
    fa = eval_numeric(l, a) - float(target)
    for _ in range(200):
        mid = (a + b) / 2
        fm = eval_numeric(l, mid) - float(target)
        if abs(fm) <= settings.touchpoint_tol or b - a <= settings.touchpoint_tol:
            break
        if (fm < 0) == (fa < 0):
            a, fa = mid, fm
        else:
            b = mid
    candidate = Fraction((a + b) / 2).limit_denominator(settings.touchpoint_max_denominator)
    try:
        if eval_exact(l, candidate) == target:
            return candidate
    except (InexactValue, DomainViolation):
        pass
    raise InvalidProblem(
        message=f"l(x) = {target} has no rational solution near {(a + b) / 2:.12g}; "
        "give touch_point explicitly",
        details={"l": print_expr(l), "approx": (a + b) / 2},
    )


def _power_bound(bound: Fraction, alpha: Fraction, mode: WindowMode) -> Fraction:
    """Rational x with x^alpha >= bound (outer) or <= bound (inner), exact when possible."""
    exact = rational_power(bound, 1 / alpha)
    if exact is not None:
        return exact
    approx = float(bound) ** (1.0 / float(alpha))
    p, q = alpha.numerator, alpha.denominator
    # x^(p/q) vs bound  <=>  x^p vs bound^q for positive x and p
    if mode == "outer":
        x = Fraction(math.ceil(approx * WINDOW_DENOMINATOR), WINDOW_DENOMINATOR)
        while x**p < bound**q:
            x += Fraction(1, WINDOW_DENOMINATOR)
    else:
        x = Fraction(math.floor(approx * WINDOW_DENOMINATOR), WINDOW_DENOMINATOR)
        while x > 0 and x**p > bound**q:
            x -= Fraction(1, WINDOW_DENOMINATOR)
    return x


def constraint_window(
    c: ConstraintSpec, domain: Interval, mode: WindowMode = "outer"
) -> Interval:
    """Range a single variable can reach under the constraint, intersected with the domain.

    With nonnegative variables a sum or a positive power sum caps every variable.
    ``outer`` closes the window at the cap and rounds an irrational cap outward,
    giving a superset of the reachable range; ``inner`` opens it and rounds inward.
    """
    c = c.canonical()
    if not _positive_domain(domain) or c.n == 1:
        return domain
    lo = domain.lo
    if c.family == "Sum":
        cap = c.budget - (c.n - 1) * lo
    elif c.family == "PowerSum" and c.alpha > 0:
        floor_power = rational_power(lo, c.alpha)
        if floor_power is None:
            floor_power = Fraction(0)
        remaining = c.budget - (c.n - 1) * floor_power
        if remaining <= 0:
            return domain
        cap = _power_bound(remaining, c.alpha, mode)
    else:
        return domain
    if cap <= lo:
        return domain
    window = Interval(lo=lo, hi=cap, lo_open=domain.lo_open, hi_open=mode == "inner")
    clipped = domain.intersect(window)
    return clipped if clipped is not None else domain


def slope_at(f: Expr, x0: Fraction) -> Fraction | float:
    derivative = differentiate(f)
    try:
        return eval_exact(derivative, x0)
    except InexactValue:
        return eval_numeric(derivative, float(x0))
    except DomainViolation as e:
        raise CurveError(
            message=f"f is not differentiable at x0 = {x0}: {e.message}",
            details={"x0": str(x0)},
        ) from e


def select_family(
    f: Expr,
    c: ConstraintSpec,
    x0: Fraction,
    direction: Direction = "ge",
    domain: Interval | None = None,
    settings: Settings | None = None,
) -> FamilySelection:
    """Candidate base curves for f at x0 in method order.

    Sum: the tangent line, then power curves x^alpha admissible by the power-curve
    condition. PowerSum(alpha): the curve in x^alpha, then the tangent line when the
    power-mean condition admits it. Product: the log curve, then the tangent line
    when sigma*f'(x0) >= 0. Custom: the single curve k*l + m. Admissibility uses the
    slope of sigma*f with sigma = -1 for upper bounds; power-mean closures need a
    positive domain.
    """
    settings = settings or get_settings()
    c = c.canonical()
    x0 = Fraction(x0)
    sigma = 1 if direction == "ge" else -1
    slope = sigma * slope_at(f, x0)
    positive = domain is None or _positive_domain(domain)
    selection = FamilySelection(x0=x0)

    def reject(family: str, alpha: Fraction | None, reason: str) -> None:
        selection.rejected.append(Rejection(family=family, alpha=alpha, reason=reason))
        logger.debug(f"Rejected {family} (alpha={alpha}): {reason}")

    def attempt(family: str, alpha: Fraction | None, build: Callable[[], BaseCurve]) -> None:
        try:
            selection.candidates.append(build())
        except CurveError as e:
            reject(family, alpha, e.message)

    match c.family:
        case "Sum":
            attempt("Line", None, lambda: tangent_line(f, x0))
            for raw_alpha in settings.sum_power_alphas:
                alpha = Fraction(raw_alpha)
                verdict = admissibility_theorem4(alpha, slope)
                if not positive:
                    reject("PowerCurve", alpha, "power-mean closure needs positive variables")
                elif verdict.admissible:
                    attempt("PowerCurve", alpha, lambda a=alpha: power_curve(f, a, x0))
                else:
                    reject("PowerCurve", alpha, verdict.reason)
        case "PowerSum":
            attempt("PowerCurve", c.alpha, lambda: power_curve(f, c.alpha, x0))
            verdict = admissibility_theorem3(c.alpha, slope)
            if not positive:
                reject("Line", None, "power-mean closure needs positive variables")
            elif verdict.admissible:
                attempt("Line", None, lambda: tangent_line(f, x0))
            else:
                reject("Line", None, verdict.reason)
        case "Product":
            attempt("LogCurve", None, lambda: log_curve(f, x0))
            verdict = admissibility_theorem3(Fraction(0), slope)
            if verdict.admissible:
                attempt("Line", None, lambda: tangent_line(f, x0))
            else:
                reject("Line", None, f"f'(x0) < 0 after orientation: {verdict.reason}")
        case "Custom":
            l = constraint_l(c, variable_of(f))
            attempt("Custom", None, lambda: base_curve(f, l, x0))

    if not selection.candidates:
        logger.info(f"No admissible base curve for {print_expr(f)} at x0 = {x0}")
    return selection
