"""Error classes for the tangent prover."""

from typing import Any

from pydantic import BaseModel


class ErrorResponse(BaseModel):
    """Standard error payload written by the CLI and the corpus report."""

    error: str
    message: str
    details: dict[str, Any] | None = None


class ProverError(Exception):
    """Base exception for prover errors."""

    # Errors caused by the input rather than by the mathematics
    input_error: bool = False

    def __init__(
        self,
        error: str,
        message: str,
        details: dict[str, Any] | None = None,
    ) -> None:
        self.error = error
        self.message = message
        self.details = details
        super().__init__(message)

    def to_response(self) -> ErrorResponse:
        """Convert exception to error response model."""
        return ErrorResponse(
            error=self.error,
            message=self.message,
            details=self.details,
        )


class ExprSyntaxError(ProverError):
    """Expression text does not follow the grammar."""

    input_error = True

    def __init__(self, message: str, position: int, text: str = "") -> None:
        self.position = position
        super().__init__(
            error="syntax_error",
            message=f"{message} at offset {position}",
            details={"position": position, "text": text},
        )


class DomainViolation(ProverError):
    """Evaluation left the real domain of an expression."""

    def __init__(self, message: str, x: float | str | None = None) -> None:
        super().__init__(
            error="domain_violation",
            message=message,
            details={"x": str(x)} if x is not None else None,
        )


class TangencyViolation(ProverError):
    """Curve and function disagree in value or slope at the touch point."""

    def __init__(self, kind: str, x0: str, f_value: str, g_value: str) -> None:
        self.kind = kind
        prime = "" if kind == "value" else "'"
        super().__init__(
            error="tangency_violation",
            message=(
                f"{kind} mismatch at x0 = {x0}: "
                f"f{prime}(x0) = {f_value} but g{prime}(x0) = {g_value}"
            ),
            details={"kind": kind, "x0": x0, "f": f_value, "g": g_value},
        )


class InvalidProblem(ProverError):
    """Problem file or problem data is malformed."""

    input_error = True

    def __init__(
        self,
        message: str,
        details: dict[str, Any] | None = None,
    ) -> None:
        super().__init__(
            error="invalid_problem",
            message=message,
            details=details,
        )


class AlgebraError(ProverError):
    """Exact algebra precondition failed."""

    def __init__(
        self,
        message: str,
        details: dict[str, Any] | None = None,
    ) -> None:
        super().__init__(
            error="algebra_error",
            message=message,
            details=details,
        )


class InexactValue(ProverError):
    """Value is not an exact rational."""

    def __init__(
        self,
        message: str,
        details: dict[str, Any] | None = None,
    ) -> None:
        super().__init__(
            error="inexact_value",
            message=message,
            details=details,
        )


class PoleAtTouchPoint(ProverError):
    """A denominator vanishes at the touch point."""

    def __init__(
        self,
        message: str,
        details: dict[str, Any] | None = None,
    ) -> None:
        super().__init__(
            error="pole_at_touch_point",
            message=message,
            details=details,
        )


class PoleInInterval(ProverError):
    """A denominator vanishes inside the interval."""

    def __init__(
        self,
        message: str,
        details: dict[str, Any] | None = None,
    ) -> None:
        super().__init__(
            error="pole_in_interval",
            message=message,
            details=details,
        )


class MinimumUncertifiable(ProverError):
    """No certified lower bound exists for the minimum."""

    def __init__(
        self,
        message: str,
        details: dict[str, Any] | None = None,
    ) -> None:
        super().__init__(
            error="minimum_uncertifiable",
            message=message,
            details=details,
        )


class CurveError(ProverError):
    """Base curve cannot be built at the touch point."""

    def __init__(
        self,
        message: str,
        details: dict[str, Any] | None = None,
    ) -> None:
        super().__init__(
            error="curve_error",
            message=message,
            details=details,
        )


class SplitConditionFails(ProverError):
    """The split inequality min_G f + (n-1) min_I f >= n f(x0) is violated."""

    def __init__(
        self,
        message: str,
        details: dict[str, Any] | None = None,
    ) -> None:
        super().__init__(
            error="split_condition_fails",
            message=message,
            details=details,
        )


class NoSplitFound(ProverError):
    """No one-sided split makes the tangent hold."""

    def __init__(
        self,
        message: str,
        details: dict[str, Any] | None = None,
    ) -> None:
        super().__init__(
            error="no_split_found",
            message=message,
            details=details,
        )


class ConditionsFail(ProverError):
    """Cubic fast-path conditions are violated."""

    def __init__(
        self,
        message: str,
        details: dict[str, Any] | None = None,
    ) -> None:
        super().__init__(
            error="conditions_fail",
            message=message,
            details=details,
        )


class NonMonotoneSlope(ProverError):
    """A slope ratio is not strictly monotone on the domain."""

    def __init__(
        self,
        message: str,
        details: dict[str, Any] | None = None,
    ) -> None:
        super().__init__(
            error="non_monotone_slope",
            message=message,
            details=details,
        )


class NoSolutionInDomain(ProverError):
    """The touch-point system has no solution in the domain."""

    def __init__(
        self,
        message: str,
        details: dict[str, Any] | None = None,
    ) -> None:
        super().__init__(
            error="no_solution_in_domain",
            message=message,
            details=details,
        )


class NotHomogeneous(ProverError):
    """The inequality is not homogeneous of the stated degree."""

    def __init__(
        self,
        message: str,
        details: dict[str, Any] | None = None,
    ) -> None:
        super().__init__(
            error="not_homogeneous",
            message=message,
            details=details,
        )
