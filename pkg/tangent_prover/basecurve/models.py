"""Constraint, base-curve and power-mean models."""

from fractions import Fraction
from typing import Literal

from pydantic import Field, model_validator

from tangent_prover.algebra.rationals import rational_power
from tangent_prover.core.errors import InvalidProblem
from tangent_prover.core.models import BaseProverModel, ExactRational
from tangent_prover.expr.calculus import fold_constants, neg
from tangent_prover.expr.nodes import Expr
from tangent_prover.expr.parser import parse
from tangent_prover.expr.printer import print_expr

ConstraintFamily = Literal["Sum", "PowerSum", "Product", "MeanFixed", "Custom"]
CurveFamily = Literal["Line", "PowerCurve", "LogCurve", "Custom"]
Side = Literal["Below", "Above", "Crossing"]
Direction = Literal["ge", "le"]


class ConstraintSpec(BaseProverModel):
    """Side condition on the variables.

    Sum: sum x_j = B. PowerSum: sum x_j^alpha = B. Product: prod x_j = B.
    MeanFixed: the alpha power mean equals ``mean``. Custom: sum l(x_j) = B.
    """

    family: ConstraintFamily
    n: int = Field(ge=1)
    budget: ExactRational | None = None
    alpha: ExactRational | None = None
    mean: ExactRational | None = None
    l: str | None = None

    @model_validator(mode="after")
    def _check_family(self) -> "ConstraintSpec":
        if self.family == "MeanFixed":
            if self.mean is None:
                raise ValueError("MeanFixed constraint needs a mean")
            if self.alpha is None:
                self.alpha = Fraction(1)
            return self
        if self.budget is None:
            raise ValueError(f"{self.family} constraint needs a budget")
        if self.family == "PowerSum" and (self.alpha is None or self.alpha == 0):
            raise ValueError("PowerSum constraint needs a nonzero alpha")
        if self.family == "Product" and self.budget <= 0:
            raise ValueError("Product constraint needs a positive budget")
        if self.family == "Custom" and not self.l:
            raise ValueError("Custom constraint needs l")
        return self

    def canonical(self) -> "ConstraintSpec":
        """MeanFixed rewritten as a power-sum (or plain sum when alpha = 1) constraint."""
        if self.family != "MeanFixed":
            return self
        power = rational_power(self.mean, self.alpha)
        if power is None:
            raise InvalidProblem(
                message=f"mean^alpha = {self.mean}^{self.alpha} is not rational",
                details={"mean": str(self.mean), "alpha": str(self.alpha)},
            )
        budget = self.n * power
        if self.alpha == 1:
            return ConstraintSpec(family="Sum", n=self.n, budget=budget)
        return ConstraintSpec(family="PowerSum", n=self.n, budget=budget, alpha=self.alpha)

    def describe(self) -> str:
        match self.family:
            case "Sum":
                return f"sum x_j = {self.budget}"
            case "PowerSum":
                return f"sum x_j^{self.alpha} = {self.budget}"
            case "Product":
                return f"prod x_j = {self.budget}"
            case "MeanFixed":
                return f"power mean c_{self.alpha} = {self.mean}"
        return f"sum {self.l} = {self.budget}"


class BaseCurve(BaseProverModel):
    """g(x) = k*l(x) + m touching f at x0.

    ``k`` and ``m`` are exact when rational; ``k_text`` / ``m_text`` always hold an
    exact expression and ``k_value`` / ``m_value`` their floating-point values.
    """

    family: CurveFamily
    alpha: ExactRational | None = None
    x0: ExactRational
    k: ExactRational | None = None
    m: ExactRational | None = None
    k_text: str
    m_text: str
    k_value: float
    m_value: float
    l_text: str
    expr_text: str

    @property
    def is_exact(self) -> bool:
        return self.k is not None and self.m is not None

    @property
    def as_expr(self) -> Expr:
        return parse(self.expr_text)

    def describe(self) -> str:
        match self.family:
            case "Line":
                name = "tangent line"
            case "PowerCurve":
                name = f"power curve (alpha = {self.alpha})"
            case "LogCurve":
                name = "log curve"
            case _:
                name = f"curve in {self.l_text}"
        return f"{name} g(x) = {self.expr_text}"

    def negated(self) -> "BaseCurve":
        """The curve -g, tangent to -f at the same point."""
        k_text = print_expr(fold_constants(neg(parse(self.k_text))))
        m_text = print_expr(fold_constants(neg(parse(self.m_text))))
        return self.model_copy(
            update={
                "k": None if self.k is None else -self.k,
                "m": None if self.m is None else -self.m,
                "k_text": k_text,
                "m_text": m_text,
                "k_value": -self.k_value,
                "m_value": -self.m_value,
                "expr_text": print_expr(fold_constants(neg(self.as_expr))),
            }
        )


class Admissibility(BaseProverModel):
    theorem: Literal["Theorem3", "Theorem4"]
    alpha: ExactRational
    admissible: bool
    reason: str


class Rejection(BaseProverModel):
    family: CurveFamily
    alpha: ExactRational | None = None
    reason: str


class FamilySelection(BaseProverModel):
    """Candidate curves in method order plus the families ruled out."""

    x0: ExactRational
    candidates: list[BaseCurve] = Field(default_factory=list)
    rejected: list[Rejection] = Field(default_factory=list)


class PowerMeanValue(BaseProverModel):
    alpha: ExactRational
    value: float
    exact: ExactRational | None = None
