"""Problem, certificate and report models of the prover."""

from fractions import Fraction
from typing import Literal

from pydantic import Field, model_validator

from tangent_prover.basecurve.models import Admissibility, BaseCurve, ConstraintSpec, Direction
from tangent_prover.certify.models import EvidenceReport, Interval, MinimumReport, SignCertificate
from tangent_prover.constants import EXACT_ROUTES
from tangent_prover.core.errors import DomainViolation, InexactValue
from tangent_prover.core.models import BaseProverModel, ExactRational
from tangent_prover.expr.calculus import eval_exact, eval_numeric
from tangent_prover.expr.nodes import Expr, is_constant
from tangent_prover.expr.parser import parse

Route = Literal[
    "Theorem1",
    "Theorem2Split",
    "Theorem3Tangent",
    "Theorem4PowerCurve",
    "Theorem5Cubic",
    "Case2Heterogeneous",
    "SingleVariable",
    "NumericEvidenceOnly",
    "Failure",
]


class HomogeneousSpec(BaseProverModel):
    """Degree-homogeneous problem without a side condition.

    The bound is an expression in the aggregate s = sum x_j^alpha (s = prod x_j for
    alpha = 0); normalization fixes s to ``budget``.
    """

    degree: ExactRational
    alpha: ExactRational = Fraction(1)
    budget: ExactRational | None = None


class ProblemSpec(BaseProverModel):
    """sum f_j(x_j) >= A (or <= A) under a constraint, each x_j in the domain."""

    problem_id: str = "problem"
    functions: list[str] = Field(min_length=1)
    n: int = Field(ge=1)
    constraint: ConstraintSpec | None = None
    domain: Interval = Field(default_factory=Interval.real_line)
    direction: Direction = "ge"
    bound: str | None = None
    touch_point: ExactRational | None = None
    homogeneous: HomogeneousSpec | None = None

    @model_validator(mode="after")
    def _check_shape(self) -> "ProblemSpec":
        if len(self.functions) not in (1, self.n):
            raise ValueError(
                f"expected 1 or n = {self.n} functions, got {len(self.functions)}"
            )
        if self.constraint is None and self.homogeneous is None:
            raise ValueError("a constraint or a homogeneity declaration is required")
        if self.constraint is not None and self.constraint.n != self.n:
            raise ValueError(f"constraint n = {self.constraint.n} differs from n = {self.n}")
        for text in self.functions:
            parse(text)
        if self.bound is not None:
            parse(self.bound)
        return self

    @property
    def exprs(self) -> list[Expr]:
        return [parse(text) for text in self.functions]

    @property
    def is_symmetric(self) -> bool:
        return len(set(self.functions)) == 1

    def bound_value(self) -> tuple[Fraction | None, float | None]:
        """Exact and float value of a constant bound; (None, None) without one."""
        if self.bound is None:
            return None, None
        expr = parse(self.bound)
        if not is_constant(expr):
            return None, None
        try:
            exact = eval_exact(expr, Fraction(0))
            return exact, float(exact)
        except InexactValue:
            return None, eval_numeric(expr, 0.0)
        except DomainViolation:
            return None, None


class Factorization(BaseProverModel):
    """f - g = (x - x0)^2 * T / Q with coefficient arrays in ascending degree."""

    function: str
    curve: str
    x0: ExactRational
    T_coeffs: list[ExactRational]
    Q_coeffs: list[ExactRational]
    T_text: str
    Q_text: str


class SplitData(BaseProverModel):
    """Minimum argument over the split region G, values of sigma*f."""

    G: Interval
    tangent_region: Interval
    min_G: ExactRational
    min_I: ExactRational
    min_G_report: MinimumReport
    min_I_report: MinimumReport
    combined: ExactRational
    required: ExactRational


class Theorem5Data(BaseProverModel):
    """Cubic fast path for sigma*f = a x^3 + b x^2 + c x + d under a sum constraint."""

    a: ExactRational
    b: ExactRational
    c: ExactRational
    d: ExactRational
    n: int
    x0: ExactRational
    condition_left: ExactRational
    condition_right: ExactRational
    linear_factor: list[ExactRational]
    convex_b: bool
    convex_right: ExactRational
    convex_on_range: bool


class TouchPointSolution(BaseProverModel):
    """Touch points of a heterogeneous problem sharing one slope ratio f_j'/l'."""

    points: list[float]
    exact: list[ExactRational] | None = None
    common_slope: float
    exact_slope: ExactRational | None = None
    sum_residual: float
    slope_residual: float


class Case2Data(BaseProverModel):
    common_k: ExactRational
    budget: ExactRational
    sum_m: ExactRational
    value: ExactRational


class Closure(BaseProverModel):
    """How the summed curve values reach n*f(x0) when l differs from the constraint."""

    theorem: Literal["Theorem3", "Theorem4"]
    admissibility: Admissibility
    statement: str


class Conclusion(BaseProverModel):
    n_f_x0: ExactRational | None = None
    value: float | None = None
    direction: Direction = "ge"
    bound: str | None = None
    bound_implied: bool | None = None
    statement: str = ""


class CandidateDiagnostic(BaseProverModel):
    family: str
    alpha: ExactRational | None = None
    curve: str = ""
    outcome: str
    detail: str = ""
    witness: ExactRational | None = None


class ProofCertificate(BaseProverModel):
    """Structured proof record; every exact step is re-checkable from its fields."""

    problem_id: str = ""
    route: Route
    functions: list[str] = Field(default_factory=list)
    n: int = 1
    constraint: ConstraintSpec | None = None
    domain: Interval = Field(default_factory=Interval.real_line)
    effective_domain: Interval | None = None
    direction: Direction = "ge"
    sigma: int = 1
    bound: str | None = None
    touch_point: ExactRational | None = None
    curves: list[BaseCurve] = Field(default_factory=list)
    factorizations: list[Factorization] = Field(default_factory=list)
    sign_certs: list[SignCertificate] = Field(default_factory=list)
    split: SplitData | None = None
    touch_points: TouchPointSolution | None = None
    theorem5: Theorem5Data | None = None
    case2: Case2Data | None = None
    closure: Closure | None = None
    conclusion: Conclusion = Field(default_factory=Conclusion)
    numeric_evidence: list[EvidenceReport] = Field(default_factory=list)
    diagnostics: list[CandidateDiagnostic] = Field(default_factory=list)
    seeds: list[int] = Field(default_factory=list)
    numeric_tol: float = 1e-9

    @property
    def is_exact(self) -> bool:
        return self.route in EXACT_ROUTES

    @property
    def is_numeric(self) -> bool:
        return self.route == "NumericEvidenceOnly"


class CheckResult(BaseProverModel):
    name: str
    ok: bool
    detail: str = ""


class VerificationReport(BaseProverModel):
    problem_id: str
    route: Route
    ok: bool
    checks: list[CheckResult] = Field(default_factory=list)

    @property
    def failures(self) -> list[CheckResult]:
        return [c for c in self.checks if not c.ok]


class OracleReport(BaseProverModel):
    """Random constrained tuples checked against the proved value."""

    problem_id: str
    seed: int
    requested: int
    evaluated: int
    target: float
    worst_margin: float
    worst_point: list[float] = Field(default_factory=list)
    violations: int
    passed: bool


class ExtremeReport(BaseProverModel):
    sense: Literal["max", "min"]
    value: float
    argbest: list[float]
    samples: int
    seed: int
