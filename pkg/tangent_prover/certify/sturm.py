"""Sturm sequences, exact real-root counting and isolation, sign certificates."""

import logging
from fractions import Fraction

from tangent_prover.algebra.factorization import odd_multiplicity_part
from tangent_prover.algebra.polynomial import Polynomial
from tangent_prover.algebra.rationals import simplest_rational_between
from tangent_prover.certify.models import Interval, RootReport, SignCertificate, Witness
from tangent_prover.constants import ROOT_REPORT_WIDTH
from tangent_prover.core.errors import AlgebraError

logger = logging.getLogger(__name__)


def sturm_chain(p: Polynomial) -> list[Polynomial]:
    """Sturm sequence of the square-free part of p.

    Raises:
        AlgebraError: When p is the zero polynomial.
    """
    if p.is_zero:
        raise AlgebraError(message="Sturm sequence of the zero polynomial")
    q = p.square_free_part()
    chain = [q]
    if q.degree < 1:
        return chain
    chain.append(q.derivative())
    while True:
        remainder = chain[-2] % chain[-1]
        if remainder.is_zero:
            return chain
        chain.append(-remainder)


def sign_variations(chain: list[Polynomial], x: Fraction) -> int:
    """Sign changes along the chain evaluated at x, zeros dropped."""
    signs = [s for s in (p.sign_at(x) for p in chain) if s != 0]
    return sum(1 for a, b in zip(signs, signs[1:], strict=False) if a != b)


def _count_open(chain: list[Polynomial], a: Fraction, b: Fraction) -> int:
    # for a square-free chain head, V(a) - V(b) counts roots in (a, b]
    if a >= b:
        return 0
    count = sign_variations(chain, a) - sign_variations(chain, b)
    if chain[0](b) == 0:
        count -= 1
    return count


def _search_bounds(q: Polynomial, iv: Interval) -> tuple[Fraction, Fraction]:
    bound = q.cauchy_bound()
    lo = iv.lo if iv.lo is not None else -bound
    hi = iv.hi if iv.hi is not None else bound
    if iv.lo is None and lo >= hi:
        lo = hi - 1
    if iv.hi is None and hi <= lo:
        hi = lo + 1
    return lo, hi


def count_real_roots(p: Polynomial, iv: Interval) -> int:
    """Number of distinct real roots of p in iv.

    Roots at open endpoints are excluded, roots at closed endpoints included.
    Infinite ends are replaced by the Cauchy root bound.
    """
    chain = sturm_chain(p)
    q = chain[0]
    if q.degree < 1:
        return 0
    if iv.is_point:
        return int(q(iv.lo) == 0)
    lo, hi = _search_bounds(q, iv)
    count = _count_open(chain, lo, hi)
    if iv.lo is not None and not iv.lo_open and q(lo) == 0:
        count += 1
    if iv.hi is not None and not iv.hi_open and q(hi) == 0:
        count += 1
    return count


def isolate_real_roots(
    p: Polynomial, iv: Interval, width: Fraction = ROOT_REPORT_WIDTH
) -> list[Interval]:
    """Sorted, pairwise separated isolating intervals of the distinct roots of p in iv.

    Exact rational roots met during bisection (and roots at closed endpoints) are
    point intervals; every other interval is open, no wider than ``width``, holds
    exactly one root and has no endpoint on a neighbouring root or on the ends of iv.
    """
    chain = sturm_chain(p)
    q = chain[0]
    if q.degree < 1:
        return []
    if iv.is_point:
        return [Interval.point(iv.lo)] if q(iv.lo) == 0 else []
    lo, hi = _search_bounds(q, iv)

    found: list[tuple[Fraction, Fraction]] = []
    stack = [(lo, hi)]
    while stack:
        a, b = stack.pop()
        n = _count_open(chain, a, b)
        if n == 0:
            continue
        if n == 1 and b - a <= width:
            found.append((a, b))
            continue
        m = (a + b) / 2
        if q(m) == 0:
            found.append((m, m))
        stack.append((m, b))
        stack.append((a, m))
    found.sort()
    found = _separate(chain, found, lo, hi)

    roots = [Interval.point(a) if a == b else Interval.open(a, b) for a, b in found]
    if iv.lo is not None and not iv.lo_open and q(lo) == 0:
        roots.insert(0, Interval.point(lo))
    if iv.hi is not None and not iv.hi_open and q(hi) == 0:
        roots.append(Interval.point(hi))
    return roots


def _separate(
    chain: list[Polynomial],
    found: list[tuple[Fraction, Fraction]],
    lo: Fraction,
    hi: Fraction,
) -> list[tuple[Fraction, Fraction]]:
    """Shrink open intervals until they touch neither a neighbour nor the search ends."""
    q = chain[0]
    result = list(found)
    for i, (a, b) in enumerate(result):
        if a == b:
            continue
        left = lo if i == 0 else result[i - 1][1]
        right = hi if i == len(result) - 1 else result[i + 1][0]
        while a <= left or b >= right:
            m = (a + b) / 2
            if q(m) == 0:
                a = b = m
                break
            if _count_open(chain, a, m) == 1:
                b = m
            else:
                a = m
        result[i] = (a, b)
    return result


def _gap_points(roots: list[Interval], iv: Interval) -> list[Fraction]:
    """One simplest rational in each gap between consecutive roots inside iv."""
    points = []
    left = iv.lo
    for root in roots:
        points.append(simplest_rational_between(left, root.lo))
        left = root.hi
    points.append(simplest_rational_between(left, iv.hi))
    return points


def certify_sign(
    p: Polynomial,
    iv: Interval,
    width: Fraction = ROOT_REPORT_WIDTH,
    label: str = "",
) -> SignCertificate:
    """Certify the sign of p on iv.

    Between consecutive distinct interior roots p has a constant nonzero sign, so
    one rational sample per gap decides the verdict; roots of even multiplicity
    produce equal signs on both sides. A closed endpoint inherits the sign of its
    adjacent gap or is a root.
    """
    if p.is_zero:
        raise AlgebraError(message="Sign certificate of the zero polynomial")
    all_roots = isolate_real_roots(p, iv, width)
    report = RootReport(count=len(all_roots), isolating=all_roots)

    if iv.is_point:
        value = p(iv.lo)
        verdict = "NonNegative" if value >= 0 else "NonPositive"
        return SignCertificate(
            label=label,
            coeffs=list(p.coeffs),
            interval=iv,
            verdict=verdict,
            sample=iv.lo,
            root_report=report,
        )

    interior = iv.interior()
    interior_roots = [r for r in all_roots if interior.contains_interval(r)]
    samples = _gap_points(interior_roots, interior)
    signs = [p.sign_at(s) for s in samples]
    odd_count = count_real_roots(odd_multiplicity_part(p), interior)

    positive = [s for s, sign in zip(samples, signs, strict=True) if sign > 0]
    negative = [s for s, sign in zip(samples, signs, strict=True) if sign < 0]
    if positive and negative:
        witness = _adjacent_witness(samples, signs)
        logger.debug(f"{label or p} changes sign on {iv}: {witness}")
        return SignCertificate(
            label=label,
            coeffs=list(p.coeffs),
            interval=iv,
            verdict="Indefinite",
            witness=witness,
            sign_changing_roots=odd_count,
            root_report=report,
        )
    sample = samples[0]
    return SignCertificate(
        label=label,
        coeffs=list(p.coeffs),
        interval=iv,
        verdict="NonNegative" if positive else "NonPositive",
        sample=sample,
        sign_changing_roots=odd_count,
        root_report=report,
    )


def _adjacent_witness(samples: list[Fraction], signs: list[int]) -> Witness:
    for i in range(len(samples) - 1):
        s1, s2, g1 = samples[i], samples[i + 1], signs[i]
        if g1 != signs[i + 1]:
            return Witness(
                negative_at=s1 if g1 < 0 else s2,
                positive_at=s2 if g1 < 0 else s1,
            )
    raise AlgebraError(message="No sign change between adjacent samples")
