"""Recursive-descent parser for single-variable expressions.

Grammar (whitespace ignored, offsets are 0-based character positions)::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := '-' unary | power
    power  := atom ['^' exponent]
    exponent := ['-'] INTEGER | '(' ['-'] INTEGER ')'
    atom   := NUMBER | IDENT | '(' expr ')'
            | 'sqrt' '(' expr ')' | 'root' '(' INTEGER ',' expr ')' | 'ln' '(' expr ')'

A literal that opens a term and is divided by a bare literal (``3/4``) is read as
one rational constant, and a minus sign directly on a literal (``-3``) yields a
negative constant. Neither applies when the literal is raised to a power.
"""

import logging
import re
from dataclasses import dataclass
from fractions import Fraction

from tangent_prover.constants import FUNCTION_NAMES
from tangent_prover.core.errors import ExprSyntaxError
from tangent_prover.expr.nodes import (
    Add,
    Const,
    Div,
    Expr,
    IntPow,
    Ln,
    Mul,
    Neg,
    Root,
    Sub,
    Var,
)

logger = logging.getLogger(__name__)

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<number>\d+(?:\.\d+)?)|(?P<ident>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*/^(),]))"
)


@dataclass(frozen=True, slots=True)
class Token:
    kind: str  # number | ident | op | end
    text: str
    pos: int


def tokenize(text: str) -> list[Token]:
    """Split expression text into tokens, ending with an ``end`` token."""
    tokens: list[Token] = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        match = _TOKEN_RE.match(text, pos)
        if match is None or match.lastgroup is None:
            raise ExprSyntaxError(f"unexpected character {text[pos]!r}", pos, text)
        start = match.start(match.lastgroup)
        tokens.append(Token(match.lastgroup, match.group(match.lastgroup), start))
        pos = match.end()
    tokens.append(Token("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, variable: str | None) -> None:
        self.text = text
        self.tokens = tokenize(text)
        self.index = 0
        self.variable = variable

    # token helpers

    @property
    def current(self) -> Token:
        return self.tokens[self.index]

    def _peek(self, offset: int = 1) -> Token:
        return self.tokens[min(self.index + offset, len(self.tokens) - 1)]

    def _advance(self) -> Token:
        token = self.current
        if token.kind != "end":
            self.index += 1
        return token

    def _is_op(self, symbol: str, token: Token | None = None) -> bool:
        token = token or self.current
        return token.kind == "op" and token.text == symbol

    def _expect(self, symbol: str) -> Token:
        if not self._is_op(symbol):
            self._fail(f"expected {symbol!r}")
        return self._advance()

    def _fail(self, message: str, token: Token | None = None) -> None:
        token = token or self.current
        if token.kind == "end":
            raise ExprSyntaxError(f"{message}, found end of input", token.pos, self.text)
        raise ExprSyntaxError(f"{message}, found {token.text!r}", token.pos, self.text)

    def _plain_literal_ahead(self) -> bool:
        return self.current.kind == "number" and not self._is_op("^", self._peek())

    # grammar

    def parse(self) -> Expr:
        if self.current.kind == "end":
            raise ExprSyntaxError("empty expression", 0, self.text)
        node = self._expr()
        if self.current.kind != "end":
            self._fail("unexpected token")
        return node

    def _expr(self) -> Expr:
        node = self._term()
        while self._is_op("+") or self._is_op("-"):
            op = self._advance().text
            right = self._term()
            node = Add(node, right) if op == "+" else Sub(node, right)
        return node

    def _term(self) -> Expr:
        node, literal = self._unary()
        while self._is_op("*") or self._is_op("/"):
            op = self._advance().text
            if op == "/" and literal and self._plain_literal_ahead():
                token = self._advance()
                divisor = Fraction(token.text)
                if divisor == 0:
                    raise ExprSyntaxError("zero denominator literal", token.pos, self.text)
                assert isinstance(node, Const)
                node = Const(node.value / divisor)
                literal = False
                continue
            divisor_token = self.current
            right, _ = self._unary()
            if op == "/" and isinstance(right, Const) and right.value == 0:
                raise ExprSyntaxError("zero denominator literal", divisor_token.pos, self.text)
            node = Mul(node, right) if op == "*" else Div(node, right)
            literal = False
        return node

    def _unary(self) -> tuple[Expr, bool]:
        if self._is_op("-"):
            self._advance()
            if self._plain_literal_ahead():
                return Const(-Fraction(self._advance().text)), True
            operand, _ = self._unary()
            return Neg(operand), False
        literal = self._plain_literal_ahead()
        return self._power(), literal

    def _power(self) -> Expr:
        base = self._atom()
        if not self._is_op("^"):
            return base
        self._advance()
        exponent_token = self.current
        exponent = self._exponent()
        if exponent < 0 and isinstance(base, Const) and base.value == 0:
            raise ExprSyntaxError("zero denominator literal", exponent_token.pos, self.text)
        return IntPow(base, exponent)

    def _exponent(self) -> int:
        if self._is_op("("):
            self._advance()
            value = self._signed_integer()
            self._expect(")")
            return value
        return self._signed_integer()

    def _signed_integer(self) -> int:
        sign = 1
        if self._is_op("-"):
            self._advance()
            sign = -1
        token = self.current
        if token.kind != "number" or "." in token.text:
            self._fail("expected an integer")
        self._advance()
        return sign * int(token.text)

    def _atom(self) -> Expr:
        token = self.current
        if token.kind == "number":
            self._advance()
            return Const(Fraction(token.text))
        if self._is_op("("):
            self._advance()
            node = self._expr()
            self._expect(")")
            return node
        if token.kind == "ident":
            if token.text in FUNCTION_NAMES:
                return self._call()
            self._advance()
            return self._variable(token)
        self._fail("unexpected token")
        raise AssertionError("unreachable")

    def _call(self) -> Expr:
        name = self._advance().text
        self._expect("(")
        if name == "root":
            index_token = self.current
            index = self._signed_integer()
            if index < 2:
                raise ExprSyntaxError("root index must be at least 2", index_token.pos, self.text)
            self._expect(",")
            node: Expr = Root(self._expr(), index)
        elif name == "sqrt":
            node = Root(self._expr(), 2)
        else:
            node = Ln(self._expr())
        self._expect(")")
        return node

    def _variable(self, token: Token) -> Var:
        if self.variable is None:
            self.variable = token.text
        elif token.text != self.variable:
            raise ExprSyntaxError(
                f"more than one variable name ({self.variable!r} and {token.text!r})",
                token.pos,
                self.text,
            )
        return Var(token.text)


def parse(text: str, variable: str | None = None) -> Expr:
    """Parse expression text into an expression tree.

    The first identifier that is not a function name becomes the variable unless
    ``variable`` fixes it in advance.

    Raises:
        ExprSyntaxError: On malformed input, a second variable name or a zero
            denominator literal.
    """
    node = _Parser(text, variable).parse()
    logger.debug(f"Parsed {text!r}")
    return node
