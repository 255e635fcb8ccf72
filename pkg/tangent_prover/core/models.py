"""Shared Pydantic base models and exact-rational field types."""

from fractions import Fraction
from typing import Annotated, Any

from pydantic import BaseModel, ConfigDict, PlainSerializer, PlainValidator, WithJsonSchema


def parse_rational(value: Any) -> Fraction:
    """Parse an exact rational from a Fraction, an int or a "p/q" / decimal string."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise ValueError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as e:
            raise ValueError(f"not an exact rational: {value!r}") from e
    raise ValueError(f"not an exact rational: {value!r} (floats are not accepted)")


def format_rational(value: Fraction) -> str:
    """Render a rational as "p/q" (or "p" for integers)."""
    return str(value)


ExactRational = Annotated[
    Fraction,
    PlainValidator(parse_rational),
    PlainSerializer(format_rational, return_type=str),
    WithJsonSchema({"type": "string", "pattern": r"^-?\d+(/\d+)?$"}),
]


class BaseProverModel(BaseModel):
    """Base model with common configuration for all prover models."""

    model_config = ConfigDict(
        populate_by_name=True,
        use_enum_values=True,
        validate_assignment=True,
        extra="ignore",
    )
