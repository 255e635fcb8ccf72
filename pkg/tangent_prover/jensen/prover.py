"""The proof pipeline: from a problem to a certificate."""

import logging
from fractions import Fraction
from typing import Any

from tangent_prover.basecurve.admissibility import (
    admissibility_theorem3,
    admissibility_theorem4,
)
from tangent_prover.basecurve.construction import tangent_line
from tangent_prover.basecurve.models import BaseCurve, ConstraintSpec, Direction
from tangent_prover.basecurve.selection import (
    constraint_l,
    constraint_window,
    select_family,
    slope_at,
    touch_point,
)
from tangent_prover.certify.models import EvidenceReport, Interval
from tangent_prover.config import Settings, get_settings
from tangent_prover.core.errors import (
    AlgebraError,
    ConditionsFail,
    DomainViolation,
    InexactValue,
    InvalidProblem,
    NotHomogeneous,
    ProverError,
)
from tangent_prover.expr.calculus import eval_exact, eval_numeric, substitute
from tangent_prover.expr.nodes import Expr, Var
from tangent_prover.expr.printer import print_expr
from tangent_prover.jensen.homogeneous import normalize_homogeneous
from tangent_prover.jensen.models import (
    CandidateDiagnostic,
    Closure,
    Conclusion,
    ProblemSpec,
    ProofCertificate,
)
from tangent_prover.jensen.theorems import (
    as_rational,
    auto_split,
    conclusion_for,
    cubic_coefficients,
    factor_curve,
    factorization_record,
    orientation,
    oriented_evidence,
    prove_theorem1,
    prove_with_split,
    relation,
    theorem5_cubic,
)
from tangent_prover.jensen.touchpoints import prove_case2

logger = logging.getLogger(__name__)

CLOSURE_ROUTES = {"Theorem3": "Theorem3Tangent", "Theorem4": "Theorem4PowerCurve"}


def prove(problem: ProblemSpec, settings: Settings | None = None) -> ProofCertificate:
    """Prove sum f(x_j) >= A (or <= A) and return the certificate.

    Homogeneous problems are normalized first. Different functions take the
    heterogeneous route; n = 1 is decided directly; cubic polynomials under a
    sum constraint use the cubic conditions; otherwise the candidate curves are
    tried in method order, exactly when f and the curve are rational and
    numerically when they are not. Mathematical failures come back as a Failure
    certificate with diagnostics.

    Raises:
        InvalidProblem: The problem itself is unusable (e.g. an irrational touch
            point with no override).
    """
    settings = settings or get_settings()
    original = problem
    if problem.homogeneous is not None:
        try:
            problem = normalize_homogeneous(problem, settings)
        except NotHomogeneous as e:
            logger.info(f"{problem.problem_id}: {e.message}")
            return _finish(
                _failure(original, [_error_diagnostic("Homogeneity", e)]), original, settings
            )

    try:
        cert = _route(problem, settings)
    except ProverError as e:
        if e.input_error:
            raise
        logger.info(f"{problem.problem_id}: {e.error}: {e.message}")
        cert = _failure(problem, [_error_diagnostic("Problem", e)])
    return _finish(cert, problem, settings)


def _route(problem: ProblemSpec, settings: Settings) -> ProofCertificate:
    c = problem.constraint.canonical()
    if not problem.is_symmetric:
        return _prove_heterogeneous(problem, c, settings)

    f = problem.exprs[0]
    direction = problem.direction
    x0 = _touch_point(problem, c, settings)
    effective = constraint_window(c, problem.domain)
    logger.info(
        f"{problem.problem_id}: f = {print_expr(f)}, {c.describe()}, x0 = {x0}, "
        f"domain {problem.domain} (window {effective})"
    )
    if problem.n == 1:
        return _single_variable(problem, f, c, x0, effective)

    diagnostics: list[CandidateDiagnostic] = []
    cubic = _try_cubic(problem, f, c, x0, effective, diagnostics)
    if cubic is not None:
        return cubic

    sigma = orientation(direction)
    selection = select_family(f, c, x0, direction, effective, settings)
    diagnostics.extend(
        CandidateDiagnostic(
            family=r.family, alpha=r.alpha, outcome="Rejected", detail=r.reason
        )
        for r in selection.rejected
    )

    reports: list[EvidenceReport] = []
    numeric_choice: BaseCurve | None = None
    for curve in selection.candidates:
        closure = _closure(f, curve, c, x0, sigma)
        if _is_exact_candidate(f, curve):
            try:
                cert = _exact_attempt(f, curve, c, effective, problem, settings)
            except ProverError as e:
                if e.input_error:
                    raise
                diagnostics.append(_curve_diagnostic(curve, e.error, e.message))
                continue
            if cert.route != "Failure":
                route = cert.route
                if route == "Theorem1" and closure is not None:
                    route = CLOSURE_ROUTES[closure.theorem]
                logger.info(f"{problem.problem_id}: {route} with {curve.describe()}")
                return cert.model_copy(
                    update={
                        "route": route,
                        "domain": problem.domain,
                        "effective_domain": effective,
                        "closure": closure,
                        "diagnostics": diagnostics + cert.diagnostics,
                    }
                )
            diagnostics.extend(cert.diagnostics)
            continue

        try:
            report = oriented_evidence(f, curve.as_expr, effective, sigma, settings)
        except ProverError as e:
            diagnostics.append(_curve_diagnostic(curve, e.error, e.message))
            continue
        reports.append(report)
        diagnostics.append(
            CandidateDiagnostic(
                family=curve.family,
                alpha=curve.alpha,
                curve=curve.expr_text,
                outcome=report.verdict,
                detail=f"min gap {report.min_gap:.3g} at x = {report.argmin:.6g}",
                witness=report.witness,
            )
        )
        if report.verdict == "HOLDS_NUMERICALLY" and numeric_choice is None:
            numeric_choice = curve

    base = ProofCertificate(
        route="Failure",
        functions=[print_expr(f)],
        n=problem.n,
        constraint=c,
        domain=problem.domain,
        effective_domain=effective,
        direction=direction,
        sigma=sigma,
        touch_point=x0,
        numeric_evidence=reports,
        diagnostics=diagnostics,
        conclusion=_value_conclusion(f, x0, problem.n, direction),
    )
    if numeric_choice is not None:
        logger.info(
            f"{problem.problem_id}: numeric evidence only, {numeric_choice.describe()}"
        )
        return base.model_copy(
            update={
                "route": "NumericEvidenceOnly",
                "curves": [numeric_choice],
                "closure": _closure(f, numeric_choice, c, x0, sigma),
            }
        )
    logger.info(f"{problem.problem_id}: all {len(selection.candidates)} candidates failed")
    return base


def _touch_point(problem: ProblemSpec, c: ConstraintSpec, settings: Settings) -> Fraction:
    if problem.touch_point is None:
        x0 = touch_point(c, problem.domain, settings)
    else:
        x0 = problem.touch_point
        _check_touch_point(c, x0)
    if not problem.domain.contains(x0):
        raise InvalidProblem(
            message=f"Touch point x0 = {x0} is outside the domain {problem.domain}",
            details={"x0": str(x0), "domain": str(problem.domain)},
        )
    return x0


def _check_touch_point(c: ConstraintSpec, x0: Fraction) -> None:
    """x_j = x0 for all j must satisfy the constraint."""
    if c.family == "Product":
        ok = x0**c.n == c.budget
    else:
        try:
            ok = c.n * eval_exact(constraint_l(c), x0) == c.budget
        except InexactValue:
            logger.warning(f"Cannot check the touch point {x0} exactly against {c.describe()}")
            return
        except DomainViolation:
            ok = False
    if not ok:
        raise InvalidProblem(
            message=f"Touch point x0 = {x0} does not satisfy {c.describe()}",
            details={"x0": str(x0), "constraint": c.describe()},
        )


def _prove_heterogeneous(
    problem: ProblemSpec, c: ConstraintSpec, settings: Settings
) -> ProofCertificate:
    fs = [substitute(f, Var("x")) for f in problem.exprs]
    l = constraint_l(c, "x")
    budget = c.budget
    if c.family == "Product":
        if c.budget != 1:
            raise InvalidProblem(
                message="A heterogeneous product constraint needs budget 1 (sum ln x_j = 0)",
                details={"budget": str(c.budget)},
            )
        budget = Fraction(0)
    effective = constraint_window(c, problem.domain)
    cert = prove_case2(fs, l, budget, effective, problem.direction, settings, constraint=c)
    return cert.model_copy(update={"domain": problem.domain, "effective_domain": effective})


def _single_variable(
    problem: ProblemSpec, f: Expr, c: ConstraintSpec, x0: Fraction, effective: Interval
) -> ProofCertificate:
    """n = 1: the constraint pins x_1 = x0 and the sum is the single value f(x0)."""
    conclusion = _value_conclusion(f, x0, 1, problem.direction, lead="f(x_1)")
    conclusion = conclusion.model_copy(
        update={"statement": f"x_1 = {x0} is forced, so {conclusion.statement}"}
    )
    return ProofCertificate(
        route="SingleVariable",
        functions=[print_expr(f)],
        n=1,
        constraint=c,
        domain=problem.domain,
        effective_domain=effective,
        direction=problem.direction,
        sigma=orientation(problem.direction),
        touch_point=x0,
        conclusion=conclusion,
    )


def _try_cubic(
    problem: ProblemSpec,
    f: Expr,
    c: ConstraintSpec,
    x0: Fraction,
    effective: Interval,
    diagnostics: list[CandidateDiagnostic],
) -> ProofCertificate | None:
    """Cubic conditions for sigma*f under a sum constraint with nonnegative variables."""
    domain = problem.domain
    if c.family != "Sum" or domain.lo is None or domain.lo < 0:
        return None
    coeffs = cubic_coefficients(f)
    if coeffs is None:
        return None
    sigma = orientation(problem.direction)
    a, b, cc, d = (sigma * v for v in coeffs)
    try:
        cert = theorem5_cubic(a, b, cc, d, c.n, x0)
    except ConditionsFail as e:
        logger.info(f"{problem.problem_id}: cubic conditions fail, trying curves")
        diagnostics.append(
            CandidateDiagnostic(family="Line", outcome=e.error, detail=e.message)
        )
        return None
    curve = tangent_line(f, x0)
    lf, factor = factor_curve(f, curve)
    text = print_expr(f)
    logger.info(f"{problem.problem_id}: Theorem5Cubic with a={a}, b={b}")
    return cert.model_copy(
        update={
            "functions": [text],
            "constraint": c,
            "domain": domain,
            "effective_domain": effective,
            "direction": problem.direction,
            "sigma": sigma,
            "curves": [curve],
            "factorizations": [factorization_record(text, curve, factor)],
            "conclusion": conclusion_for(c.n * lf(x0), problem.direction),
            "diagnostics": list(diagnostics),
        }
    )


def _is_exact_candidate(f: Expr, curve: BaseCurve) -> bool:
    if not curve.is_exact:
        return False
    try:
        as_rational(f, "f")
        as_rational(curve.as_expr, "g")
    except AlgebraError:
        return False
    return True


def _exact_attempt(
    f: Expr,
    curve: BaseCurve,
    c: ConstraintSpec,
    effective: Interval,
    problem: ProblemSpec,
    settings: Settings,
) -> ProofCertificate:
    """Direct route, then a split when the sign of f - g is indefinite."""
    cert = prove_theorem1(f, curve, c, effective, problem.direction)
    if cert.route != "Failure":
        return cert
    if not cert.sign_certs or cert.sign_certs[-1].verdict != "Indefinite":
        return cert
    try:
        G = auto_split(f, curve, effective, c.n, problem.direction, settings)
        return prove_with_split(f, curve, c, effective, G, problem.direction, settings)
    except ProverError as e:
        if e.input_error:
            raise
        logger.debug(f"Split for {curve.expr_text} failed: {e.message}")
        return cert.model_copy(
            update={
                "diagnostics": cert.diagnostics
                + [_curve_diagnostic(curve, e.error, e.message)]
            }
        )


def _closure(
    f: Expr, curve: BaseCurve, c: ConstraintSpec, x0: Fraction, sigma: int
) -> Closure | None:
    """Power-mean step when the curve's l is not the constraint's own l."""
    if curve.family == "Line" and c.family in ("PowerSum", "Product"):
        alpha = c.alpha if c.family == "PowerSum" else Fraction(0)
        verdict = admissibility_theorem3(alpha, sigma * slope_at(f, x0))
        side = "<=" if alpha > 1 else ">="
        statement = (
            f"c_1 {side} c_{alpha} = x0, so sum x_j {side} n*x0; "
            f"{verdict.reason}, so k*(sum x_j - n*x0) keeps the bound"
        )
        return Closure(theorem="Theorem3", admissibility=verdict, statement=statement)
    if curve.family == "PowerCurve" and c.family == "Sum":
        alpha = curve.alpha
        verdict = admissibility_theorem4(alpha, sigma * slope_at(f, x0))
        side = ">=" if alpha > 1 or alpha < 0 else "<="
        statement = (
            f"c_{alpha} vs c_1 = x0 gives sum x_j^{alpha} {side} n*x0^{alpha}; "
            f"{verdict.reason}, so k*(sum x_j^{alpha} - n*x0^{alpha}) keeps the bound"
        )
        return Closure(theorem="Theorem4", admissibility=verdict, statement=statement)
    return None


def _value_conclusion(
    f: Expr, x0: Fraction, n: int, direction: Direction, lead: str = "sum f(x_j)"
) -> Conclusion:
    try:
        return conclusion_for(n * eval_exact(f, x0), direction, lead=lead)
    except InexactValue:
        value = n * eval_numeric(f, float(x0))
        return Conclusion(
            value=value,
            direction=direction,
            statement=f"{lead} {relation(direction)} {value:.12g}",
        )


def _failure(problem: ProblemSpec, diagnostics: list[CandidateDiagnostic]) -> ProofCertificate:
    return ProofCertificate(
        route="Failure",
        functions=list(problem.functions),
        n=problem.n,
        constraint=problem.constraint,
        domain=problem.domain,
        direction=problem.direction,
        sigma=orientation(problem.direction),
        diagnostics=diagnostics,
    )


def _error_diagnostic(family: str, error: ProverError) -> CandidateDiagnostic:
    return CandidateDiagnostic(family=family, outcome=error.error, detail=error.message)


def _curve_diagnostic(curve: BaseCurve, outcome: str, detail: str) -> CandidateDiagnostic:
    return CandidateDiagnostic(
        family=curve.family,
        alpha=curve.alpha,
        curve=curve.expr_text,
        outcome=outcome,
        detail=detail,
    )


def bound_implied(cert: ProofCertificate, problem: ProblemSpec, tol: float) -> bool | None:
    """Whether the proved value gives the stated bound; None when it cannot be compared."""
    exact, approx = problem.bound_value()
    conclusion = cert.conclusion
    if exact is not None and conclusion.n_f_x0 is not None:
        value, bound = conclusion.n_f_x0, exact
        slack = 0
    elif approx is not None and conclusion.value is not None:
        value, bound = conclusion.value, approx
        slack = tol
    else:
        return None
    if problem.direction == "ge":
        return value >= bound - slack
    return value <= bound + slack


def _finish(cert: ProofCertificate, problem: ProblemSpec, settings: Settings) -> ProofCertificate:
    """Echo problem metadata and compare the proved value with the stated bound."""
    update: dict[str, Any] = {
        "problem_id": problem.problem_id,
        "bound": problem.bound,
        "seeds": [settings.default_seed],
        "numeric_tol": settings.numeric_tol,
    }
    if cert.route != "Failure" and problem.bound is not None:
        implied = bound_implied(cert, problem, settings.numeric_tol)
        conclusion = cert.conclusion
        statement = conclusion.statement
        if implied is True:
            statement += f", which gives {relation(problem.direction)} {problem.bound}"
        elif implied is False:
            statement += f", which does not give {relation(problem.direction)} {problem.bound}"
            update["route"] = "Failure"
            update["diagnostics"] = cert.diagnostics + [
                CandidateDiagnostic(
                    family="Bound",
                    outcome="BoundNotImplied",
                    detail=f"proved value {_proved_value(conclusion)} "
                    f"vs stated bound {problem.bound}",
                )
            ]
        update["conclusion"] = conclusion.model_copy(
            update={"bound": problem.bound, "bound_implied": implied, "statement": statement}
        )
    return cert.model_copy(update=update)


def _proved_value(conclusion: Conclusion) -> str:
    if conclusion.n_f_x0 is not None:
        return str(conclusion.n_f_x0)
    return f"{conclusion.value:.12g}"
