"""Proof routes for one function: direct tangent, split domain, cubic fast path."""

import logging
from fractions import Fraction

from tangent_prover.algebra.factorization import (
    DoubleRootFactor,
    double_root_factor,
    odd_multiplicity_part,
)
from tangent_prover.algebra.polynomial import Polynomial
from tangent_prover.algebra.rational_function import RationalFunction
from tangent_prover.algebra.rationals import (
    ceil_to_grid,
    floor_to_grid,
    simplest_rational_between,
)
from tangent_prover.basecurve.construction import tangent_line
from tangent_prover.basecurve.models import BaseCurve, ConstraintSpec, Direction
from tangent_prover.certify.evidence import numeric_evidence
from tangent_prover.certify.minimum import certified_min
from tangent_prover.certify.models import EvidenceReport, Interval, SignCertificate
from tangent_prover.certify.sturm import certify_sign, count_real_roots, isolate_real_roots
from tangent_prover.config import Settings, get_settings
from tangent_prover.core.errors import (
    AlgebraError,
    ConditionsFail,
    InvalidProblem,
    NoSplitFound,
    PoleInInterval,
    SplitConditionFails,
)
from tangent_prover.expr.calculus import lower_to_rational, neg
from tangent_prover.expr.nodes import Expr
from tangent_prover.expr.parser import parse
from tangent_prover.expr.printer import print_expr
from tangent_prover.jensen.models import (
    CandidateDiagnostic,
    Conclusion,
    Factorization,
    ProofCertificate,
    SplitData,
    Theorem5Data,
)

logger = logging.getLogger(__name__)


def orientation(direction: Direction) -> int:
    return 1 if direction == "ge" else -1


def required_verdict(sigma: int) -> str:
    return "NonNegative" if sigma > 0 else "NonPositive"


def relation(direction: Direction) -> str:
    return ">=" if direction == "ge" else "<="


def as_rational(e: Expr, what: str) -> RationalFunction:
    """Rational form of e.

    Raises:
        AlgebraError: e involves a radical or logarithm of the variable.
    """
    lowered = lower_to_rational(e)
    if not isinstance(lowered, RationalFunction):
        raise AlgebraError(
            message=f"{what} = {print_expr(e)} has no rational form: {lowered.reason}",
            details={"expression": print_expr(e), "node": lowered.node},
        )
    return lowered


def denominator_sign(q: Polynomial, domain: Interval) -> int:
    """Constant sign of Q on the domain.

    Raises:
        PoleInInterval: Q has a real root in the domain.
    """
    if q.degree > 0 and count_real_roots(q, domain) > 0:
        raise PoleInInterval(
            message=f"Denominator {q.to_text()} vanishes on {domain}",
            details={"Q": q.to_strings(), "interval": str(domain)},
        )
    sample = domain.lo if domain.is_point else simplest_rational_between(domain.lo, domain.hi)
    return q.sign_at(sample)


def factorization_record(
    f_text: str, curve: BaseCurve, factor: DoubleRootFactor
) -> Factorization:
    return Factorization(
        function=f_text,
        curve=curve.expr_text,
        x0=factor.x0,
        T_coeffs=list(factor.t.coeffs),
        Q_coeffs=list(factor.q_den.coeffs),
        T_text=factor.t.to_text(),
        Q_text=factor.q_den.to_text(),
    )


def factor_curve(f: Expr, curve: BaseCurve) -> tuple[RationalFunction, DoubleRootFactor]:
    if not curve.is_exact:
        raise AlgebraError(
            message=f"Curve {curve.expr_text} has irrational constants",
            details={"curve": curve.expr_text},
        )
    lf = as_rational(f, "f")
    lg = as_rational(curve.as_expr, "g")
    return lf, double_root_factor(lf, lg, curve.x0)


def oriented_residual(factor: DoubleRootFactor, domain: Interval) -> Polynomial:
    """T * sign(Q): the polynomial whose sign is the sign of f - g on the domain."""
    return factor.t.scale(denominator_sign(factor.q_den, domain))


def conclusion_for(
    value: Fraction, direction: Direction, lead: str = "sum f(x_j)"
) -> Conclusion:
    return Conclusion(
        n_f_x0=value,
        value=float(value),
        direction=direction,
        statement=f"{lead} {relation(direction)} {value}",
    )


def prove_theorem1(
    f: Expr,
    curve: BaseCurve,
    c: ConstraintSpec,
    domain: Interval,
    direction: Direction = "ge",
) -> ProofCertificate:
    """Direct route: g on the right side of f over the whole domain.

    f - g = (x - x0)^2 T / Q; with Q root-free on the domain the sign of
    T * sign(Q) is certified. A definite sign gives sum f(x_j) >= sum g(x_j) =
    n f(x0); an indefinite one gives a Failure certificate with the witness.

    Raises:
        TangencyViolation: g is not tangent to f at x0.
        PoleInInterval: Q vanishes on the domain.
    """
    sigma = orientation(direction)
    lf, factor = factor_curve(f, curve)
    f_text = print_expr(f)
    value = c.n * lf(curve.x0)
    record = factorization_record(f_text, curve, factor)
    sign_certs: list[SignCertificate] = []
    diagnostics: list[CandidateDiagnostic] = []

    holds = True
    if factor.t.is_zero:
        logger.debug(f"{f_text} coincides with its curve {curve.expr_text}")
    else:
        residual = oriented_residual(factor, domain)
        cert = certify_sign(residual, domain, label="T*sign(Q)")
        sign_certs.append(cert)
        holds = cert.verdict == required_verdict(sigma)
        if not holds:
            witness = None
            if cert.witness is not None:
                witness = cert.witness.negative_at if sigma > 0 else cert.witness.positive_at
            diagnostics.append(
                CandidateDiagnostic(
                    family=curve.family,
                    alpha=curve.alpha,
                    curve=curve.expr_text,
                    outcome=cert.verdict,
                    detail=f"f - g is not {required_verdict(sigma)} on {domain}",
                    witness=witness,
                )
            )

    return ProofCertificate(
        route="Theorem1" if holds else "Failure",
        functions=[f_text],
        n=c.n,
        constraint=c,
        domain=domain,
        effective_domain=domain,
        direction=direction,
        sigma=sigma,
        touch_point=curve.x0,
        curves=[curve],
        factorizations=[record],
        sign_certs=sign_certs,
        conclusion=conclusion_for(value, direction),
        diagnostics=diagnostics,
    )


def split_regions(domain: Interval, G: Interval) -> Interval:
    """I minus G, for G sharing one end with I."""
    same_right = G.hi == domain.hi and G.hi_open == domain.hi_open
    same_left = G.lo == domain.lo and G.lo_open == domain.lo_open
    if same_right and G.lo is not None and (domain.lo is None or G.lo > domain.lo):
        return Interval(lo=domain.lo, hi=G.lo, lo_open=domain.lo_open, hi_open=not G.lo_open)
    if same_left and G.hi is not None and (domain.hi is None or G.hi < domain.hi):
        return Interval(lo=G.hi, hi=domain.hi, lo_open=not G.hi_open, hi_open=domain.hi_open)
    raise InvalidProblem(
        message=f"Split region {G} must share exactly one end with {domain}",
        details={"G": str(G), "domain": str(domain)},
    )


def _min_condition(
    oriented: RationalFunction,
    G: Interval,
    domain: Interval,
    n: int,
    x0: Fraction,
    settings: Settings,
) -> tuple[SplitData, bool]:
    bracket = Fraction(settings.min_bracket_width).limit_denominator(10**15)
    min_g = certified_min(oriented, G, bracket)
    min_i = certified_min(oriented, domain, bracket)
    combined = min_g.value + (n - 1) * min_i.value
    required = n * oriented(x0)
    data = SplitData(
        G=G,
        tangent_region=split_regions(domain, G),
        min_G=min_g.value,
        min_I=min_i.value,
        min_G_report=min_g,
        min_I_report=min_i,
        combined=combined,
        required=required,
    )
    return data, combined >= required


def auto_split(
    f: Expr,
    curve: BaseCurve,
    domain: Interval,
    n: int | None = None,
    direction: Direction = "ge",
    settings: Settings | None = None,
) -> Interval:
    """Split region G cut off at the first crossing of f and g past x0.

    The cut is the crossing root's isolating bound rounded toward x0 on the
    decimal grids of ``split_denominators``; the first cut whose tangent region
    certifies (and, when n is given, whose minimum condition holds) wins, the raw
    bound otherwise. Crossings on both sides of x0, or at x0, have no split.

    Raises:
        NoSplitFound: No one-sided crossing layout exists.
    """
    settings = settings or get_settings()
    sigma = orientation(direction)
    lf, factor = factor_curve(f, curve)
    x0 = curve.x0
    residual = oriented_residual(factor, domain).scale(sigma)
    if residual.is_zero:
        raise NoSplitFound(message="f - g vanishes identically", details={"x0": str(x0)})
    width = Fraction(settings.split_isolation_width).limit_denominator(10**12)
    crossings = isolate_real_roots(odd_multiplicity_part(residual), domain.interior(), width)
    if not crossings:
        raise NoSplitFound(
            message=f"f - g does not change sign on {domain}", details={"x0": str(x0)}
        )
    if any(r.lo <= x0 <= r.hi for r in crossings):
        raise NoSplitFound(
            message=f"f - g changes sign at the touch point x0 = {x0}", details={"x0": str(x0)}
        )
    above = [r for r in crossings if r.lo > x0]
    below = [r for r in crossings if r.hi < x0]
    if above and below:
        raise NoSplitFound(
            message=f"f - g changes sign on both sides of x0 = {x0}",
            details={"above": str(above[0]), "below": str(below[-1])},
        )

    if above:
        bound = above[0].lo
        cuts = [floor_to_grid(bound, d) for d in settings.split_denominators] + [bound]
        cuts = [s for s in cuts if x0 < s <= bound]

        def region(s: Fraction) -> Interval:
            return Interval(lo=s, hi=domain.hi, lo_open=False, hi_open=domain.hi_open)
    else:
        bound = below[-1].hi
        cuts = [ceil_to_grid(bound, d) for d in settings.split_denominators] + [bound]
        cuts = [s for s in cuts if bound <= s < x0]

        def region(s: Fraction) -> Interval:
            return Interval(lo=domain.lo, hi=s, lo_open=domain.lo_open, hi_open=False)

    oriented = lf * sigma
    fallback: Interval | None = None
    for s in dict.fromkeys(cuts):
        G = region(s)
        tangent = split_regions(domain, G)
        if certify_sign(residual, tangent).verdict != "NonNegative":
            continue
        if fallback is None:
            fallback = G
        if n is None:
            return G
        try:
            _, ok = _min_condition(oriented, G, domain, n, x0, settings)
        except (PoleInInterval, AlgebraError) as e:
            logger.debug(f"Split at {s} not usable: {e}")
            continue
        if ok:
            logger.info(f"Split region for {print_expr(f)}: {G}")
            return G
    if fallback is not None:
        return fallback
    raise NoSplitFound(
        message=f"No split point between x0 = {x0} and the crossing near {bound}",
        details={"x0": str(x0), "bound": str(bound)},
    )


def prove_with_split(
    f: Expr,
    curve: BaseCurve,
    c: ConstraintSpec,
    domain: Interval,
    G: Interval | None,
    direction: Direction = "ge",
    settings: Settings | None = None,
) -> ProofCertificate:
    """Split route: tangent on I minus G, minima on G and I.

    If every x_j lies in I minus G the tangent bound applies. Otherwise some x_j is
    in G and sum f(x_j) >= min_G f + (n - 1) min_I f >= n f(x0). Values are
    oriented (sigma * f) for upper bounds. G = None is the direct route.

    Raises:
        SplitConditionFails: min_G f + (n - 1) min_I f < n f(x0).
        MinimumUncertifiable: A minimum cannot be certified.
    """
    if G is None:
        return prove_theorem1(f, curve, c, domain, direction)
    settings = settings or get_settings()
    sigma = orientation(direction)
    tangent = split_regions(domain, G)
    if not tangent.contains(curve.x0):
        raise InvalidProblem(
            message=f"Touch point {curve.x0} must lie outside the split region {G}",
            details={"x0": str(curve.x0), "G": str(G)},
        )
    partial = prove_theorem1(f, curve, c, tangent, direction)
    lf = as_rational(f, "f")
    split, ok = _min_condition(lf * sigma, G, domain, c.n, curve.x0, settings)
    if not ok:
        raise SplitConditionFails(
            message=(
                f"min_G + (n - 1) min_I = {split.min_G} + {c.n - 1}*({split.min_I}) = "
                f"{split.combined} < {split.required} = n f(x0) on G = {G}"
            ),
            details={
                "G": str(G),
                "min_G": str(split.min_G),
                "min_I": str(split.min_I),
                "combined": str(split.combined),
                "required": str(split.required),
            },
        )
    if partial.route == "Failure":
        return partial.model_copy(
            update={"domain": domain, "effective_domain": domain, "split": split}
        )
    return partial.model_copy(
        update={
            "route": "Theorem2Split",
            "domain": domain,
            "effective_domain": domain,
            "split": split,
        }
    )


def cubic_coefficients(f: Expr) -> tuple[Fraction, Fraction, Fraction, Fraction] | None:
    """(a, b, c, d) when f is a polynomial of degree exactly 3."""
    lowered = lower_to_rational(f)
    if not isinstance(lowered, RationalFunction) or not lowered.is_polynomial:
        return None
    p = lowered.as_polynomial()
    if p.degree != 3:
        return None
    return p.coeff(3), p.coeff(2), p.coeff(1), p.coeff(0)


def theorem5_data(
    a: Fraction, b: Fraction, c: Fraction, d: Fraction, n: int, x0: Fraction
) -> Theorem5Data:
    """Endpoint conditions of the linear factor a x + 2 a x0 + b on [0, n x0].

    P(x) - P(x0) - P'(x0)(x - x0) = (x - x0)^2 (a x + 2 a x0 + b), and a linear
    function is nonnegative on a segment iff it is at both ends.

    Raises:
        AlgebraError: a = 0.
        ConditionsFail: An endpoint value is negative.
    """
    a, b, c, d, x0 = (Fraction(v) for v in (a, b, c, d, x0))
    if a == 0:
        raise AlgebraError(message="Not a cubic: a = 0", details={"a": "0"})
    left = 2 * a * x0 + b
    right = (n + 2) * a * x0 + b
    convex_right = 3 * n * a * x0 + b
    data = Theorem5Data(
        a=a,
        b=b,
        c=c,
        d=d,
        n=n,
        x0=x0,
        condition_left=left,
        condition_right=right,
        linear_factor=[2 * a * x0 + b, a],
        convex_b=b >= 0,
        convex_right=convex_right,
        convex_on_range=b >= 0 and convex_right >= 0,
    )
    failed = [
        name
        for name, value in (("2a*x0 + b", left), ("(n+2)a*x0 + b", right))
        if value < 0
    ]
    if failed:
        raise ConditionsFail(
            message=(
                f"Cubic conditions fail: 2a*x0 + b = {left}, (n+2)a*x0 + b = {right}"
            ),
            details={"failed": failed, "left": str(left), "right": str(right)},
        )
    return data


def theorem5_cubic(
    a: Fraction, b: Fraction, c: Fraction, d: Fraction, n: int, x0: Fraction
) -> ProofCertificate:
    """Jensen at x0 for P = a x^3 + b x^2 + c x + d with sum x_j = n x0, x_j >= 0.

    Raises:
        ConditionsFail: 2 a x0 + b < 0 or (n + 2) a x0 + b < 0.
    """
    data = theorem5_data(a, b, c, d, n, x0)
    x0 = Fraction(x0)
    p = parse(Polynomial([d, c, b, a]).to_text())
    curve = tangent_line(p, x0)
    lf, factor = factor_curve(p, curve)
    constraint = ConstraintSpec(family="Sum", n=n, budget=n * x0)
    domain = Interval.closed(Fraction(0), n * x0)
    return ProofCertificate(
        route="Theorem5Cubic",
        functions=[print_expr(p)],
        n=n,
        constraint=constraint,
        domain=domain,
        effective_domain=domain,
        touch_point=x0,
        curves=[curve],
        factorizations=[factorization_record(print_expr(p), curve, factor)],
        theorem5=data,
        conclusion=conclusion_for(n * lf(x0), "ge"),
    )


def oriented_evidence(
    f: Expr, g: Expr, domain: Interval, sigma: int, settings: Settings
) -> EvidenceReport:
    """Numeric evidence for sigma * (f - g) >= 0 on the domain."""
    if sigma < 0:
        f, g = neg(f), neg(g)
    return numeric_evidence(
        f,
        g,
        domain,
        grid_points=settings.numeric_grid_points,
        tol=settings.numeric_tol,
        refinement_factor=settings.refinement_factor,
        dip_threshold=settings.dip_threshold,
        infinite_cap=settings.numeric_infinite_cap,
    )
