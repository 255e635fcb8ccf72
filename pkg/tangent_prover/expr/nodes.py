"""Expression tree nodes.

Every node is an immutable value; equality and hashing are structural.
"""

from collections.abc import Iterator
from dataclasses import dataclass
from fractions import Fraction


@dataclass(frozen=True, slots=True)
class Const:
    value: Fraction

    def __post_init__(self) -> None:
        if isinstance(self.value, bool) or not isinstance(self.value, int | Fraction):
            raise TypeError(f"Const requires an exact rational, got {self.value!r}")
        if not isinstance(self.value, Fraction):
            object.__setattr__(self, "value", Fraction(self.value))


@dataclass(frozen=True, slots=True)
class Var:
    name: str = "x"


@dataclass(frozen=True, slots=True)
class Add:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True, slots=True)
class Sub:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True, slots=True)
class Mul:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True, slots=True)
class Div:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True, slots=True)
class Neg:
    operand: "Expr"


@dataclass(frozen=True, slots=True)
class IntPow:
    base: "Expr"
    exponent: int

    def __post_init__(self) -> None:
        if isinstance(self.exponent, bool) or not isinstance(self.exponent, int):
            raise TypeError("IntPow exponent must be an integer")


@dataclass(frozen=True, slots=True)
class Root:
    base: "Expr"
    index: int

    def __post_init__(self) -> None:
        if self.index < 2:
            raise ValueError(f"root index must be at least 2, got {self.index}")


@dataclass(frozen=True, slots=True)
class Ln:
    arg: "Expr"


Expr = Const | Var | Add | Sub | Mul | Div | Neg | IntPow | Root | Ln

BINARY_NODES = (Add, Sub, Mul, Div)


def children(e: Expr) -> tuple[Expr, ...]:
    """Direct sub-expressions of a node."""
    match e:
        case Add(a, b) | Sub(a, b) | Mul(a, b) | Div(a, b):
            return (a, b)
        case Neg(a) | Ln(a):
            return (a,)
        case IntPow(base, _) | Root(base, _):
            return (base,)
        case _:
            return ()


def walk(e: Expr) -> Iterator[Expr]:
    """Pre-order traversal."""
    stack = [e]
    while stack:
        node = stack.pop()
        yield node
        stack.extend(reversed(children(node)))


def variable_names(e: Expr) -> set[str]:
    return {node.name for node in walk(e) if isinstance(node, Var)}


def is_constant(e: Expr) -> bool:
    """True when the tree contains no variable."""
    return not any(isinstance(node, Var) for node in walk(e))


def node_name(e: Expr) -> str:
    return type(e).__name__
