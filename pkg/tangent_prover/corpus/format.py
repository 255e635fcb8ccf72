"""Problem files: flat ``key = value`` text, one expression per key.

Lines starting with ``#`` are comments. Keys prefixed with ``expected.`` hold the
values a corpus run compares the certificate against.
"""

import logging
from fractions import Fraction
from pathlib import Path
from typing import Any

from pydantic import Field, ValidationError

from tangent_prover.basecurve.models import ConstraintSpec
from tangent_prover.certify.models import Interval
from tangent_prover.core.errors import InvalidProblem
from tangent_prover.core.models import BaseProverModel, ExactRational, parse_rational
from tangent_prover.jensen.models import HomogeneousSpec, ProblemSpec, Route

logger = logging.getLogger(__name__)

CONSTRAINT_FAMILIES = {
    "sum": "Sum",
    "power_sum": "PowerSum",
    "product": "Product",
    "mean": "MeanFixed",
    "custom": "Custom",
}

PROBLEM_KEYS = frozenset(
    {
        "id",
        "function",
        "functions",
        "n",
        "constraint",
        "alpha",
        "budget",
        "mean",
        "l",
        "domain",
        "direction",
        "bound",
        "touch_point",
        "homogeneous_degree",
        "homogeneous_alpha",
        "normalize_budget",
        "provenance",
        "erratum",
    }
)

EXPECTED_KEYS = frozenset(
    {"route", "T", "Q", "status", "split", "curve", "touch_points", "conclusion"}
)


class Expected(BaseProverModel):
    """Values a corpus entry's certificate must reproduce; unset fields are not compared."""

    route: Route | None = None
    T: list[ExactRational] | None = None
    Q: list[ExactRational] | None = None
    status: str | None = None
    split: Interval | None = None
    curve: str | None = None
    touch_points: list[ExactRational] | None = None
    conclusion: ExactRational | None = None


class ProblemFile(BaseProverModel):
    problem: ProblemSpec
    expected: Expected | None = None
    provenance: str = ""
    errata: list[str] = Field(default_factory=list)
    source: str = ""


def _rational_list(text: str) -> list[Fraction]:
    return [parse_rational(part) for part in text.split(",") if part.strip()]


def _split_lines(text: str, source: str) -> tuple[dict[str, str], dict[str, str], list[str]]:
    fields: dict[str, str] = {}
    expected: dict[str, str] = {}
    errata: list[str] = []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if not sep or not key:
            raise InvalidProblem(
                message=f"{source}:{number}: expected 'key = value', got {raw!r}",
                details={"line": number, "source": source},
            )
        if key.startswith("expected."):
            name = key.removeprefix("expected.")
            if name not in EXPECTED_KEYS:
                raise InvalidProblem(
                    message=f"{source}:{number}: unknown expected key {name!r}",
                    details={"line": number, "key": key},
                )
            expected[name] = value
            continue
        if key not in PROBLEM_KEYS:
            raise InvalidProblem(
                message=f"{source}:{number}: unknown key {key!r}",
                details={"line": number, "key": key},
            )
        if key == "erratum":
            errata.append(value)
        elif key in fields:
            raise InvalidProblem(
                message=f"{source}:{number}: duplicate key {key!r}",
                details={"line": number, "key": key},
            )
        else:
            fields[key] = value
    return fields, expected, errata


def _constraint(fields: dict[str, str], n: int) -> ConstraintSpec | None:
    name = fields.get("constraint")
    if name is None:
        return None
    family = CONSTRAINT_FAMILIES.get(name.lower())
    if family is None:
        raise InvalidProblem(
            message=f"unknown constraint {name!r}; use one of {', '.join(CONSTRAINT_FAMILIES)}",
            details={"constraint": name},
        )
    return ConstraintSpec(
        family=family,
        n=n,
        budget=fields.get("budget"),
        alpha=fields.get("alpha"),
        mean=fields.get("mean"),
        l=fields.get("l"),
    )


def _homogeneous(fields: dict[str, str]) -> HomogeneousSpec | None:
    if "homogeneous_degree" not in fields:
        return None
    data: dict[str, Any] = {"degree": fields["homogeneous_degree"]}
    if "homogeneous_alpha" in fields:
        data["alpha"] = fields["homogeneous_alpha"]
    if "normalize_budget" in fields:
        data["budget"] = fields["normalize_budget"]
    return HomogeneousSpec.model_validate(data)


def _expected(values: dict[str, str]) -> Expected | None:
    if not values:
        return None
    data: dict[str, Any] = dict(values)
    for key in ("T", "Q", "touch_points"):
        if key in data:
            data[key] = _rational_list(data[key])
    if "split" in data:
        data["split"] = Interval.parse(data["split"])
    return Expected.model_validate(data)


def parse_problem(text: str, source: str = "<string>") -> ProblemFile:
    """Parse problem-file text.

    Raises:
        InvalidProblem: Malformed lines, unknown keys or invalid values.
    """
    fields, expected, errata = _split_lines(text, source)
    if "function" in fields and "functions" in fields:
        raise InvalidProblem(
            message=f"{source}: give either 'function' or 'functions', not both",
            details={"source": source},
        )
    raw_functions = fields.get("functions", fields.get("function", ""))
    functions = [part.strip() for part in raw_functions.split(";") if part.strip()]
    try:
        n = int(fields.get("n", str(len(functions) or 1)))
        problem = ProblemSpec(
            problem_id=fields.get("id", Path(source).stem),
            functions=functions,
            n=n,
            constraint=_constraint(fields, n),
            domain=Interval.parse(fields["domain"]) if "domain" in fields else Interval(),
            direction=fields.get("direction", "ge"),
            bound=fields.get("bound"),
            touch_point=fields.get("touch_point"),
            homogeneous=_homogeneous(fields),
        )
        parsed_expected = _expected(expected)
    except ValidationError as e:
        raise InvalidProblem(
            message=f"{source}: invalid problem: {e.errors()[0]['msg']}",
            details={"source": source, "errors": [err["msg"] for err in e.errors()]},
        ) from e
    except ValueError as e:
        raise InvalidProblem(
            message=f"{source}: invalid value: {e}", details={"source": source}
        ) from e
    return ProblemFile(
        problem=problem,
        expected=parsed_expected,
        provenance=fields.get("provenance", ""),
        errata=errata,
        source=source,
    )


def load_problem(path: str | Path) -> ProblemFile:
    """Read and parse a problem file.

    Raises:
        InvalidProblem: The file is missing, unreadable or malformed.
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise InvalidProblem(
            message=f"Cannot read problem file {path}: {e.strerror or e}",
            details={"path": str(path)},
        ) from e
    logger.debug(f"Loaded problem file {path}")
    return parse_problem(text, source=str(path))
