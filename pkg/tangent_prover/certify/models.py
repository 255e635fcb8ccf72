"""Certificate-facing models of the certify layer."""

import re
from fractions import Fraction
from typing import Any, Literal

from pydantic import Field, model_validator

from tangent_prover.algebra.polynomial import Polynomial
from tangent_prover.constants import EVIDENCE_FLAG
from tangent_prover.core.errors import InvalidProblem
from tangent_prover.core.models import BaseProverModel, ExactRational

SignVerdict = Literal["NonNegative", "NonPositive", "Indefinite"]
EvidenceVerdict = Literal["HOLDS_NUMERICALLY", "VIOLATED"]

_INFINITY = {"inf", "+inf", "infinity", "+infinity", "∞", "+∞"}
_INTERVAL_RE = re.compile(r"^\s*([\[(])\s*([^,;]+?)\s*[,;]\s*([^,;]+?)\s*([\])])\s*$")


class Interval(BaseProverModel):
    """Real interval; ``None`` ends are infinite and always open."""

    lo: ExactRational | None = None
    hi: ExactRational | None = None
    lo_open: bool = True
    hi_open: bool = True

    @model_validator(mode="before")
    @classmethod
    def _open_infinite_ends(cls, data: Any) -> Any:
        if isinstance(data, dict):
            data = dict(data)
            if data.get("lo") is None:
                data["lo_open"] = True
            if data.get("hi") is None:
                data["hi_open"] = True
        return data

    @model_validator(mode="after")
    def _check_order(self) -> "Interval":
        if self.lo is not None and self.hi is not None:
            if self.lo > self.hi:
                raise ValueError(f"empty interval: {self.lo} > {self.hi}")
            if self.lo == self.hi and (self.lo_open or self.hi_open):
                raise ValueError(f"degenerate interval at {self.lo} must be closed")
        return self

    # constructors

    @classmethod
    def open(cls, lo: Fraction | None, hi: Fraction | None) -> "Interval":
        return cls(lo=lo, hi=hi, lo_open=True, hi_open=True)

    @classmethod
    def closed(cls, lo: Fraction, hi: Fraction) -> "Interval":
        return cls(lo=lo, hi=hi, lo_open=False, hi_open=False)

    @classmethod
    def point(cls, x: Fraction) -> "Interval":
        return cls.closed(x, x)

    @classmethod
    def real_line(cls) -> "Interval":
        return cls()

    @classmethod
    def parse(cls, text: str) -> "Interval":
        """Parse ``(0, 4)``, ``[9/10; 1]``, ``(0, inf)``, ``(-inf, inf)`` or ``reals``."""
        stripped = text.strip()
        if stripped.lower() in {"reals", "r", "(-inf, inf)"}:
            return cls.real_line()
        match = _INTERVAL_RE.match(stripped)
        if match is None:
            raise InvalidProblem(
                message=f"Cannot parse interval {text!r}",
                details={"interval": text},
            )
        left, lo_text, hi_text, right = match.groups()
        try:
            lo = None if lo_text.lower() in {"-inf", "-infinity", "-∞"} else Fraction(lo_text)
            hi = None if hi_text.lower() in _INFINITY else Fraction(hi_text)
            return cls(lo=lo, hi=hi, lo_open=left == "(", hi_open=right == ")")
        except ValueError as e:
            raise InvalidProblem(
                message=f"Cannot parse interval {text!r}: {e}",
                details={"interval": text},
            ) from e

    # queries

    @property
    def is_point(self) -> bool:
        return self.lo is not None and self.lo == self.hi

    @property
    def is_bounded(self) -> bool:
        return self.lo is not None and self.hi is not None

    def contains(self, x: Fraction) -> bool:
        if self.lo is not None and (x < self.lo or (x == self.lo and self.lo_open)):
            return False
        if self.hi is not None and (x > self.hi or (x == self.hi and self.hi_open)):
            return False
        return True

    def contains_interval(self, other: "Interval") -> bool:
        if self.lo is not None:
            if other.lo is None or other.lo < self.lo:
                return False
            if other.lo == self.lo and self.lo_open and not other.lo_open:
                return False
        if self.hi is not None:
            if other.hi is None or other.hi > self.hi:
                return False
            if other.hi == self.hi and self.hi_open and not other.hi_open:
                return False
        return True

    def interior(self) -> "Interval":
        if self.is_point:
            return self
        return Interval.open(self.lo, self.hi)

    def closure(self) -> "Interval":
        return Interval(
            lo=self.lo, hi=self.hi, lo_open=self.lo is None, hi_open=self.hi is None
        )

    def intersect(self, other: "Interval") -> "Interval | None":
        lo, lo_open = self.lo, self.lo_open
        if other.lo is not None and (lo is None or other.lo > lo):
            lo, lo_open = other.lo, other.lo_open
        elif other.lo is not None and other.lo == lo:
            lo_open = lo_open or other.lo_open
        hi, hi_open = self.hi, self.hi_open
        if other.hi is not None and (hi is None or other.hi < hi):
            hi, hi_open = other.hi, other.hi_open
        elif other.hi is not None and other.hi == hi:
            hi_open = hi_open or other.hi_open
        if lo is not None and hi is not None:
            if lo > hi or (lo == hi and (lo_open or hi_open)):
                return None
        return Interval(lo=lo, hi=hi, lo_open=lo_open, hi_open=hi_open)

    def float_bounds(self, cap: float | None = None) -> tuple[float, float]:
        """Float ends; infinite ends are replaced by a finite end -/+ ``cap``."""
        lo = float(self.lo) if self.lo is not None else None
        hi = float(self.hi) if self.hi is not None else None
        if cap is None and (lo is None or hi is None):
            raise ValueError("unbounded interval needs a cap")
        if lo is None:
            lo = (hi if hi is not None else 0.0) - cap
        if hi is None:
            hi = lo + cap if self.lo is not None else cap
        return lo, hi

    def __str__(self) -> str:
        left = "(" if self.lo_open else "["
        right = ")" if self.hi_open else "]"
        lo = "-inf" if self.lo is None else str(self.lo)
        hi = "inf" if self.hi is None else str(self.hi)
        return f"{left}{lo}, {hi}{right}"


class Witness(BaseProverModel):
    """Two points of the interval where the polynomial has strictly opposite signs."""

    negative_at: ExactRational
    positive_at: ExactRational


class RootReport(BaseProverModel):
    count: int
    isolating: list[Interval] = Field(default_factory=list)


class SignCertificate(BaseProverModel):
    """Sign of a polynomial on an interval, re-checkable from its own fields."""

    label: str = ""
    coeffs: list[ExactRational]
    interval: Interval
    verdict: SignVerdict
    sample: ExactRational | None = None
    witness: Witness | None = None
    sign_changing_roots: int = 0
    root_report: RootReport

    @property
    def polynomial(self) -> Polynomial:
        return Polynomial(self.coeffs)


class MinimumCandidate(BaseProverModel):
    kind: Literal["endpoint", "critical", "limit"]
    location: str
    value: ExactRational
    exact: bool = True
    attained: bool = True


class MinimumReport(BaseProverModel):
    """Certified minimum (or certified lower bound) of a rational function."""

    function: str
    interval: Interval
    value: ExactRational
    exact: bool
    attained: bool
    argmin: ExactRational | None = None
    argmin_interval: Interval | None = None
    candidates: list[MinimumCandidate] = Field(default_factory=list)


class EvidenceReport(BaseProverModel):
    """Grid verification of f - g >= 0; never a certificate."""

    flag: str = EVIDENCE_FLAG
    f: str
    g: str
    interval: Interval
    verdict: EvidenceVerdict
    grid_points: int
    tol: float
    min_gap: float
    argmin: float
    witness: ExactRational | None = None
    witness_gap: float | None = None
    refined_dips: int = 0
    truncated: bool = False
    evaluated_range: tuple[float, float]


class ConvexityProfile(BaseProverModel):
    """Signs of f'' sampled on a grid."""

    interval: Interval
    positive: int
    negative: int
    zero: int
    changes_sign: bool
