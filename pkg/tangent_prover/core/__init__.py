"""Core module - errors, models, metrics."""

from tangent_prover.core.errors import (
    AlgebraError,
    ConditionsFail,
    CurveError,
    DomainViolation,
    ErrorResponse,
    ExprSyntaxError,
    InexactValue,
    InvalidProblem,
    MinimumUncertifiable,
    NoSolutionInDomain,
    NoSplitFound,
    NonMonotoneSlope,
    NotHomogeneous,
    PoleAtTouchPoint,
    PoleInInterval,
    ProverError,
    SplitConditionFails,
    TangencyViolation,
)
from tangent_prover.core.models import BaseProverModel, ExactRational, parse_rational

__all__ = [
    "AlgebraError",
    "BaseProverModel",
    "ConditionsFail",
    "CurveError",
    "DomainViolation",
    "ErrorResponse",
    "ExactRational",
    "ExprSyntaxError",
    "InexactValue",
    "InvalidProblem",
    "MinimumUncertifiable",
    "NoSolutionInDomain",
    "NoSplitFound",
    "NonMonotoneSlope",
    "NotHomogeneous",
    "PoleAtTouchPoint",
    "PoleInInterval",
    "ProverError",
    "SplitConditionFails",
    "TangencyViolation",
    "parse_rational",
]
