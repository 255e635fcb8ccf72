"""Independent re-check of a proof certificate from its serialized fields.

Nothing computed by the prover is trusted: expressions are re-parsed, the
double-root factorizations rebuilt, Sturm counts redone and every piece of
arithmetic in the conclusion recomputed.
"""

import logging
from collections.abc import Callable
from fractions import Fraction

from tangent_prover.algebra.factorization import odd_multiplicity_part
from tangent_prover.algebra.polynomial import Polynomial
from tangent_prover.algebra.rational_function import RationalFunction
from tangent_prover.algebra.rationals import simplest_rational_between
from tangent_prover.basecurve.admissibility import (
    admissibility_theorem3,
    admissibility_theorem4,
)
from tangent_prover.basecurve.construction import power_expr
from tangent_prover.basecurve.models import ConstraintSpec
from tangent_prover.basecurve.selection import constraint_l, slope_at
from tangent_prover.certify.minimum import certified_min
from tangent_prover.certify.models import Interval, SignCertificate
from tangent_prover.certify.sturm import count_real_roots
from tangent_prover.constants import EVIDENCE_FLAG
from tangent_prover.core.errors import InexactValue, ProverError
from tangent_prover.expr.calculus import (
    eval_exact,
    eval_numeric,
    lower_to_rational,
    sub,
    substitute,
)
from tangent_prover.expr.nodes import Expr, Var
from tangent_prover.expr.parser import parse
from tangent_prover.expr.printer import print_expr
from tangent_prover.jensen.models import (
    CheckResult,
    Factorization,
    ProofCertificate,
    VerificationReport,
)
from tangent_prover.jensen.theorems import (
    cubic_coefficients,
    required_verdict,
    split_regions,
)

logger = logging.getLogger(__name__)

TANGENCY_TOL = 1e-9


class _Checks:
    def __init__(self) -> None:
        self.results: list[CheckResult] = []

    def add(self, name: str, ok: bool, detail: str = "") -> bool:
        self.results.append(CheckResult(name=name, ok=bool(ok), detail=detail))
        if not ok:
            logger.warning(f"Check {name} failed: {detail}")
        return bool(ok)

    def guarded(self, name: str, check: Callable[[], None]) -> None:
        try:
            check()
        except (ProverError, ValueError, ZeroDivisionError) as e:
            self.add(name, False, f"{type(e).__name__}: {e}")


def _rational(text: str) -> RationalFunction:
    lowered = lower_to_rational(parse(text))
    if not isinstance(lowered, RationalFunction):
        raise ValueError(f"{text} has no rational form: {lowered.reason}")
    return lowered


def check_sign_certificate(sc: SignCertificate) -> tuple[bool, str]:
    """Re-derive a sign certificate's verdict from its polynomial and interval."""
    p = sc.polynomial
    iv = sc.interval
    if p.is_zero:
        return False, "zero polynomial"
    if sc.verdict == "Indefinite":
        w = sc.witness
        if w is None:
            return False, "indefinite verdict without a witness"
        ok = (
            iv.contains(w.negative_at)
            and iv.contains(w.positive_at)
            and p(w.negative_at) < 0 < p(w.positive_at)
        )
        detail = f"p({w.negative_at}) = {p(w.negative_at)}, p({w.positive_at}) = {p(w.positive_at)}"
        return ok, detail
    if sc.sample is None or not iv.contains(sc.sample):
        return False, "missing or out-of-range sample"
    changes = 0 if iv.is_point else count_real_roots(odd_multiplicity_part(p), iv.interior())
    sign = p.sign_at(sc.sample)
    expected = 1 if sc.verdict == "NonNegative" else -1
    ok = changes == 0 and (sign == expected or (iv.is_point and sign == 0))
    return ok, f"{changes} sign changes, sign {sign} at {sc.sample}"


def _denominator_sign(q: Polynomial, iv: Interval) -> int | None:
    if q.degree > 0 and count_real_roots(q, iv) > 0:
        return None
    point = iv.lo if iv.is_point else simplest_rational_between(iv.lo, iv.hi)
    return q.sign_at(point)


def _check_factorization(checks: _Checks, rec: Factorization, index: int) -> None:
    lf = _rational(rec.function)
    lg = _rational(rec.curve)
    x0 = rec.x0
    checks.add(f"tangency_value[{index}]", lf(x0) == lg(x0), f"f({x0}) = {lf(x0)}, g = {lg(x0)}")
    df, dg = lf.derivative()(x0), lg.derivative()(x0)
    checks.add(f"tangency_slope[{index}]", df == dg, f"f'({x0}) = {df}, g' = {dg}")
    square = Polynomial.linear_factor(x0) ** 2
    rebuilt = RationalFunction(square * Polynomial(rec.T_coeffs), Polynomial(rec.Q_coeffs))
    checks.add(f"reconstruction[{index}]", rebuilt == lf - lg, "(x - x0)^2 T / Q == f - g")


def _check_residual_certs(
    checks: _Checks, cert: ProofCertificate, rec: Factorization, index: int
) -> Interval | None:
    """The sign certificate of T * sign(Q) for one factorization; returns its interval."""
    t = Polynomial(rec.T_coeffs)
    if t.is_zero:
        checks.add(f"residual_sign[{index}]", True, "f coincides with its curve")
        return cert.effective_domain
    q = Polynomial(rec.Q_coeffs)
    for sc in cert.sign_certs:
        if sc.polynomial not in (t, -t):
            continue
        q_sign = _denominator_sign(q, sc.interval)
        if q_sign is None:
            checks.add(f"denominator_sign[{index}]", False, f"Q has a root on {sc.interval}")
            return None
        checks.add(f"denominator_sign[{index}]", True, f"sign(Q) = {q_sign} on {sc.interval}")
        checks.add(
            f"residual_poly[{index}]",
            sc.polynomial == t.scale(q_sign),
            f"certified polynomial is T * {q_sign}",
        )
        ok, detail = check_sign_certificate(sc)
        checks.add(f"sign_cert[{index}]", ok, detail)
        checks.add(
            f"sign_direction[{index}]",
            sc.verdict == required_verdict(cert.sigma),
            f"{sc.verdict} vs required {required_verdict(cert.sigma)}",
        )
        return sc.interval
    checks.add(f"residual_sign[{index}]", False, "no sign certificate for T")
    return None


def _in_x(e: Expr) -> str:
    return print_expr(substitute(e, Var("x")))


def _expected_l(cert: ProofCertificate, c: ConstraintSpec) -> tuple[Expr, str]:
    """The l the curve must be written in: the constraint's own, or the closure's."""
    closure = cert.closure
    if closure is None:
        return constraint_l(c), c.describe()
    alpha = closure.admissibility.alpha
    if closure.theorem == "Theorem3":
        return Var("x"), f"tangent line closed through c_1 vs c_{alpha}"
    return power_expr(alpha), f"power curve closed through c_{alpha} vs c_1"


def _check_touch_point(checks: _Checks, cert: ProofCertificate, c: ConstraintSpec) -> None:
    """x_j = x0 for every j satisfies the constraint, so sum l(x_j) = n*l(x0)."""
    x0 = cert.touch_point
    if not checks.add("touch_point_present", x0 is not None, "touch point recorded"):
        return
    if c.family == "Product":
        value = x0**c.n
        ok, detail = x0 > 0 and value == c.budget, f"x0^{c.n} = {value}"
    else:
        l = constraint_l(c)
        try:
            total = c.n * eval_exact(l, x0)
            ok, detail = total == c.budget, f"n*l(x0) = {total}"
        except InexactValue:
            approx = c.n * eval_numeric(l, float(x0))
            budget = float(c.budget)
            ok = abs(approx - budget) <= cert.numeric_tol * max(1.0, abs(budget))
            detail = f"n*l(x0) = {approx:.12g}"
    checks.add("touch_point", ok, f"{detail}, constraint {c.describe()}")


def _check_summation(checks: _Checks, cert: ProofCertificate) -> None:
    """sum g(x_j) = k*B + n*m = n*g(x0) = n*f(x0) for the recorded curve and constraint."""
    if not checks.add("constraint_present", cert.constraint is not None, "constraint recorded"):
        return
    c = cert.constraint.canonical()
    checks.add("constraint_n", c.n == cert.n, f"constraint n = {c.n}, certificate n = {cert.n}")
    _check_touch_point(checks, cert, c)
    if not checks.add("curves", len(cert.curves) == 1, f"{len(cert.curves)} curves"):
        return
    curve = cert.curves[0]
    checks.add("curve_x0", curve.x0 == cert.touch_point, f"curve touches at {curve.x0}")
    expected, source = _expected_l(cert, c)
    checks.add(
        "curve_l",
        _in_x(parse(curve.l_text)) == _in_x(expected),
        f"curve in {curve.l_text}, needs {print_expr(expected)} ({source})",
    )
    closure = cert.closure
    if closure is None:
        return
    alpha = closure.admissibility.alpha
    if closure.theorem == "Theorem3":
        needed = c.alpha if c.family == "PowerSum" else Fraction(0)
        ok = curve.family == "Line" and c.family in ("PowerSum", "Product") and alpha == needed
    else:
        ok = curve.family == "PowerCurve" and c.family == "Sum" and curve.alpha == alpha
    checks.add(
        "closure_constraint",
        ok,
        f"{closure.theorem} with alpha {alpha} for a {curve.family} under {c.describe()}",
    )


def _check_exact_single(checks: _Checks, cert: ProofCertificate) -> None:
    domain = cert.effective_domain or cert.domain
    checks.add("factorizations", len(cert.factorizations) == 1, f"{len(cert.factorizations)}")
    rec = cert.factorizations[0]
    checks.guarded("factorization", lambda: _check_factorization(checks, rec, 0))
    checks.add(
        "function",
        cert.functions == [rec.function],
        f"factored {rec.function}, problem states {cert.functions}",
    )
    checks.add(
        "curve",
        bool(cert.curves)
        and cert.curves[0].expr_text == rec.curve
        and rec.x0 == cert.touch_point,
        f"factored against {rec.curve} at {rec.x0}",
    )
    checks.guarded("summation", lambda: _check_summation(checks, cert))
    if cert.route == "Theorem5Cubic":
        # the cubic conditions replace the sign certificate
        return
    covered = _check_residual_certs(checks, cert, rec, 0)
    if covered is None:
        return
    if cert.split is None:
        checks.add("coverage", covered == domain, f"certified on {covered}, domain {domain}")
    else:
        checks.guarded("split", lambda: _check_split(checks, cert, covered, domain))
    value = cert.n * _rational(rec.function)(rec.x0)
    checks.add(
        "conclusion",
        cert.conclusion.n_f_x0 == value,
        f"n*f(x0) = {value}, certificate says {cert.conclusion.n_f_x0}",
    )


def _check_split(
    checks: _Checks, cert: ProofCertificate, covered: Interval, domain: Interval
) -> None:
    split = cert.split
    tangent = split_regions(domain, split.G)
    checks.add("split_regions", tangent == covered, f"I minus G = {tangent}, certified {covered}")
    oriented = _rational(cert.factorizations[0].function) * cert.sigma
    min_g = certified_min(oriented, split.G)
    min_i = certified_min(oriented, domain)
    checks.add(
        "min_G", min_g.value >= split.min_G, f"recomputed {min_g.value}, stated {split.min_G}"
    )
    checks.add(
        "min_I", min_i.value >= split.min_I, f"recomputed {min_i.value}, stated {split.min_I}"
    )
    combined = split.min_G + (cert.n - 1) * split.min_I
    required = cert.n * oriented(cert.factorizations[0].x0)
    checks.add(
        "split_condition",
        combined == split.combined and required == split.required and combined >= required,
        f"{split.min_G} + {cert.n - 1}*({split.min_I}) = {combined} >= {required}",
    )


def _check_theorem5(checks: _Checks, cert: ProofCertificate) -> None:
    data = cert.theorem5
    if not checks.add("theorem5_data", data is not None, "cubic data present"):
        return
    coeffs = cubic_coefficients(parse(cert.functions[0]))
    if coeffs is not None:
        oriented = tuple(cert.sigma * v for v in coeffs)
        checks.add(
            "theorem5_coefficients",
            oriented == (data.a, data.b, data.c, data.d),
            f"sigma*f has coefficients {[str(v) for v in oriented]}",
        )
    a, b, x0, n = data.a, data.b, data.x0, data.n
    left, right = 2 * a * x0 + b, (n + 2) * a * x0 + b
    checks.add(
        "theorem5_conditions",
        left == data.condition_left and right == data.condition_right and left >= 0 and right >= 0,
        f"2a*x0 + b = {left}, (n+2)a*x0 + b = {right}",
    )
    p = Polynomial([data.d, data.c, data.b, data.a])
    slope = p.derivative()(x0)
    lhs = p - Polynomial([p(x0) - slope * x0, slope])
    rhs = Polynomial.linear_factor(x0) ** 2 * Polynomial(data.linear_factor)
    checks.add("theorem5_identity", lhs == rhs, "P - tangent == (x - x0)^2 (a x + 2a x0 + b)")
    checks.add(
        "theorem5_conclusion",
        cert.conclusion.n_f_x0 == cert.sigma * n * p(x0),
        f"n*f(x0) = {cert.sigma * n * p(x0)}",
    )


def _check_case2(checks: _Checks, cert: ProofCertificate) -> None:
    data = cert.case2
    tp = cert.touch_points
    if not checks.add("case2_data", data is not None and tp is not None and tp.exact is not None):
        return
    domain = cert.effective_domain or cert.domain
    ks = [curve.k for curve in cert.curves]
    checks.add("case2_common_k", all(k == data.common_k for k in ks), f"k = {[str(k) for k in ks]}")
    sum_m = sum((curve.m for curve in cert.curves), Fraction(0))
    checks.add("case2_sum_m", sum_m == data.sum_m, f"sum m = {sum_m}")
    value = data.common_k * data.budget + sum_m
    checks.add(
        "case2_value",
        value == data.value == cert.conclusion.n_f_x0,
        f"k*B + sum m = {value}",
    )
    checks.add(
        "case2_touch_points",
        [curve.x0 for curve in cert.curves] == tp.exact,
        f"curves touch at {[str(c.x0) for c in cert.curves]}",
    )
    if cert.constraint is not None:
        l = parse(cert.curves[0].l_text)
        total = sum((eval_exact(l, x) for x in tp.exact), Fraction(0))
        checks.add("case2_constraint", total == data.budget, f"sum l(x_j) = {total}")
    for index, rec in enumerate(cert.factorizations):
        checks.guarded(
            f"factorization[{index}]",
            lambda r=rec, i=index: _check_factorization(checks, r, i),
        )
        covered = _check_residual_certs(checks, cert, rec, index)
        if covered is not None:
            checks.add(f"coverage[{index}]", covered == domain, f"certified on {covered}")


def _check_closure(checks: _Checks, cert: ProofCertificate) -> None:
    closure = cert.closure
    if not checks.add("closure", closure is not None, "power-mean closure present"):
        return
    f = parse(cert.functions[0])
    x0 = cert.touch_point
    slope = cert.sigma * slope_at(f, x0)
    if closure.theorem == "Theorem3":
        verdict = admissibility_theorem3(closure.admissibility.alpha, slope)
    else:
        verdict = admissibility_theorem4(closure.admissibility.alpha, slope)
    checks.add("closure_admissible", verdict.admissible, verdict.reason)


def _check_numeric(checks: _Checks, cert: ProofCertificate) -> None:
    reports = cert.numeric_evidence
    checks.add("evidence_present", bool(reports), f"{len(reports)} reports")
    checks.add(
        "evidence_flag",
        all(r.flag == EVIDENCE_FLAG for r in cert.numeric_evidence),
        f"every report says {EVIDENCE_FLAG!r}",
    )
    holding = [r for r in cert.numeric_evidence if r.verdict == "HOLDS_NUMERICALLY"]
    checks.add("evidence_holds", bool(holding), f"{len(holding)} holding reports")
    checks.guarded("summation", lambda: _check_summation(checks, cert))
    for index, curve in enumerate(cert.curves):
        f = parse(cert.functions[min(index, len(cert.functions) - 1)])
        g = curve.as_expr
        x0 = float(curve.x0)
        gap = abs(eval_numeric(sub(f, g), x0))
        checks.add(f"numeric_tangency[{index}]", gap <= TANGENCY_TOL, f"|f - g|(x0) = {gap:.3g}")


def _check_failure(checks: _Checks, cert: ProofCertificate) -> None:
    """A failure claims nothing; exact witnesses must really violate the curve."""
    for diag in cert.diagnostics:
        if diag.witness is None or not diag.curve or diag.outcome not in ("Indefinite", "VIOLATED"):
            continue
        f = parse(cert.functions[0])
        gap_expr = sub(f, parse(diag.curve))
        try:
            gap = cert.sigma * eval_exact(gap_expr, diag.witness)
            ok = gap < 0
        except InexactValue:
            gap = cert.sigma * eval_numeric(gap_expr, float(diag.witness))
            ok = gap < 0
        checks.add(f"witness[{diag.family}]", ok, f"sigma*(f - g)({diag.witness}) = {gap}")


def _check_bound(checks: _Checks, cert: ProofCertificate) -> None:
    conclusion = cert.conclusion
    if conclusion.bound_implied is not True or conclusion.bound is None:
        return
    bound = parse(conclusion.bound)
    try:
        exact = eval_exact(bound, Fraction(0))
    except InexactValue:
        exact = None
    if exact is not None and conclusion.n_f_x0 is not None:
        value = conclusion.n_f_x0
        ok = value >= exact if cert.direction == "ge" else value <= exact
    else:
        value = conclusion.value
        approx = eval_numeric(bound, 0.0)
        tol = cert.numeric_tol
        ok = value >= approx - tol if cert.direction == "ge" else value <= approx + tol
    checks.add("bound", ok, f"{value} vs {conclusion.bound} ({cert.direction})")


def verify_certificate(cert: ProofCertificate) -> VerificationReport:
    """Re-validate every claim of a certificate; the report lists each check."""
    checks = _Checks()
    route = cert.route
    if route in ("Theorem1", "Theorem2Split", "Theorem3Tangent", "Theorem4PowerCurve"):
        checks.guarded("exact", lambda: _check_exact_single(checks, cert))
    elif route == "Theorem5Cubic":
        checks.guarded("exact", lambda: _check_exact_single(checks, cert))
        checks.guarded("theorem5", lambda: _check_theorem5(checks, cert))
    elif route == "Case2Heterogeneous":
        checks.guarded("case2", lambda: _check_case2(checks, cert))
    elif route == "SingleVariable":
        checks.guarded("single", lambda: _check_single(checks, cert))
    elif route == "NumericEvidenceOnly":
        checks.guarded("numeric", lambda: _check_numeric(checks, cert))
    else:
        checks.guarded("failure", lambda: _check_failure(checks, cert))
    if route in ("Theorem3Tangent", "Theorem4PowerCurve") or cert.closure is not None:
        checks.guarded("closure", lambda: _check_closure(checks, cert))
    if route == "Theorem2Split":
        checks.add("split_present", cert.split is not None, "split data present")
    checks.guarded("bound", lambda: _check_bound(checks, cert))

    ok = all(c.ok for c in checks.results)
    logger.info(f"Verified {cert.problem_id} ({route}): {len(checks.results)} checks, ok={ok}")
    return VerificationReport(
        problem_id=cert.problem_id, route=route, ok=ok, checks=checks.results
    )


def _check_single(checks: _Checks, cert: ProofCertificate) -> None:
    checks.add("single_n", cert.n == 1, f"n = {cert.n}")
    f = parse(cert.functions[0])
    try:
        value = eval_exact(f, cert.touch_point)
    except InexactValue:
        return
    checks.add("single_value", cert.conclusion.n_f_x0 == value, f"f(x0) = {value}")
