"""Certified minima of rational functions over intervals."""

import logging
from fractions import Fraction

from tangent_prover.algebra.rational_function import RationalFunction
from tangent_prover.algebra.rationals import simplest_rational_between
from tangent_prover.certify.models import Interval, MinimumCandidate, MinimumReport
from tangent_prover.certify.sturm import count_real_roots, isolate_real_roots
from tangent_prover.constants import MIN_BRACKET_WIDTH
from tangent_prover.core.errors import MinimumUncertifiable, PoleInInterval

logger = logging.getLogger(__name__)


def _limit_candidate(f: RationalFunction, positive_end: bool) -> MinimumCandidate | None:
    """Limit of f at +/- infinity, or None when it diverges upwards."""
    gap = f.num.degree - f.den.degree
    ratio = f.num.leading / f.den.leading
    where = "+inf" if positive_end else "-inf"
    if f.is_zero or gap < 0:
        return MinimumCandidate(kind="limit", location=where, value=0, attained=False)
    if gap == 0:
        return MinimumCandidate(kind="limit", location=where, value=ratio, attained=False)
    sign = ratio > 0
    if not positive_end and gap % 2 == 1:
        sign = not sign
    if not sign:
        raise MinimumUncertifiable(
            message=f"{f} is unbounded below as x -> {where}",
            details={"function": str(f), "end": where},
        )
    return None


def _bracket_lower_bound(f: RationalFunction, bracket: Interval) -> Fraction:
    """Rigorous lower bound of f on the closed bracket by interval Horner."""
    num_lo, num_hi = f.num.enclose(bracket.lo, bracket.hi)
    den_lo, den_hi = f.den.enclose(bracket.lo, bracket.hi)
    if den_lo <= 0 <= den_hi:
        raise MinimumUncertifiable(
            message=f"Denominator enclosure of {f} contains 0 on {bracket}",
            details={"function": str(f), "bracket": str(bracket)},
        )
    return min(n / d for n in (num_lo, num_hi) for d in (den_lo, den_hi))


def certified_min(
    f: RationalFunction, iv: Interval, bracket_width: Fraction = MIN_BRACKET_WIDTH
) -> MinimumReport:
    """Minimum of f over the closure of iv.

    Candidates are the finite ends, the limits at infinite ends and the real roots
    of the numerator of f'. Rational critical points give exact values; irrational
    ones are bracketed to ``bracket_width`` and contribute a rigorous lower bound.

    Raises:
        PoleInInterval: The denominator vanishes on the closure of iv.
        MinimumUncertifiable: f is unbounded below or a bracket cannot be bounded.
    """
    closure = iv.closure()
    if f.den.degree > 0 and count_real_roots(f.den, closure) > 0:
        raise PoleInInterval(
            message=f"Denominator {f.den} of {f} vanishes on {closure}",
            details={"function": str(f), "interval": str(closure)},
        )

    candidates: list[MinimumCandidate] = []
    for end, is_open, positive_end in ((iv.lo, iv.lo_open, False), (iv.hi, iv.hi_open, True)):
        if end is None:
            limit = _limit_candidate(f, positive_end)
            if limit is not None:
                candidates.append(limit)
        else:
            candidates.append(
                MinimumCandidate(
                    kind="endpoint", location=str(end), value=f(end), attained=not is_open
                )
            )

    brackets: dict[str, Interval] = {}
    critical = f.derivative().num
    if not critical.is_zero and critical.degree > 0 and not iv.is_point:
        for root in isolate_real_roots(critical, iv.interior(), bracket_width):
            if root.is_point:
                candidates.append(
                    MinimumCandidate(kind="critical", location=str(root.lo), value=f(root.lo))
                )
                continue
            guess = simplest_rational_between(root.lo, root.hi)
            if critical(guess) == 0:
                candidates.append(
                    MinimumCandidate(kind="critical", location=str(guess), value=f(guess))
                )
                continue
            closed = Interval.closed(root.lo, root.hi)
            brackets[str(closed)] = closed
            candidates.append(
                MinimumCandidate(
                    kind="critical",
                    location=str(closed),
                    value=_bracket_lower_bound(f, closed),
                    exact=False,
                )
            )

    if not candidates:
        raise MinimumUncertifiable(
            message=f"No minimum candidates for {f} on {iv}",
            details={"function": str(f), "interval": str(iv)},
        )
    # exact and attained candidates win ties
    best = min(candidates, key=lambda c: (c.value, not c.exact, not c.attained))
    argmin = Fraction(best.location) if best.exact and best.kind != "limit" else None
    logger.debug(f"min of {f} on {iv} = {best.value} at {best.location}")
    return MinimumReport(
        function=str(f),
        interval=iv,
        value=best.value,
        exact=best.exact,
        attained=best.attained,
        argmin=argmin,
        argmin_interval=brackets.get(best.location),
        candidates=candidates,
    )
