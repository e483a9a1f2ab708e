"""
Expression trees over positive rational literals and the text syntax that
produces them.

Syntax: integer or N/D literals, binary ``+ * /`` and parentheses. ``*`` and
``/`` bind tighter than ``+``; all three associate to the left. A literal
``N/D`` is written without spaces; a ``/`` next to a space or a parenthesis is
division, so ``3/2`` is the literal three halves while ``3 / 2`` divides the
literal 3 by the literal 2. ``-`` is rejected: Level 1 has no subtraction.
"""

from __future__ import annotations

import re
from typing import ClassVar, Union

from pydantic import BaseModel, ConfigDict

from app.errors import ExpressionError, UnsupportedOperationError
from app.exactq import ONE, PosRational
from app.tolerance import FLOORED, Tolerance

# ---------------------------------------------------------------------------
# Nodes
# ---------------------------------------------------------------------------


class Lit(BaseModel):
    """A rational literal; ``tol`` overrides the tolerance of its conversion."""

    model_config = ConfigDict(frozen=True)

    value: PosRational
    tol: Tolerance | None = None

    def __str__(self) -> str:
        if self.value.den == 1:
            return str(self.value.num)
        return str(self.value)


class _Binary(BaseModel):
    model_config = ConfigDict(frozen=True)

    symbol: ClassVar[str] = "?"

    left: Expr
    right: Expr

    def __str__(self) -> str:
        return f"({self.left} {self.symbol} {self.right})"


class Mult(_Binary):
    symbol: ClassVar[str] = "*"


class Div(_Binary):
    symbol: ClassVar[str] = "/"


class Add(_Binary):
    symbol: ClassVar[str] = "+"


class Sub(_Binary):
    symbol: ClassVar[str] = "-"


Expr = Union[Lit, Mult, Div, Add, Sub]

for _node in (_Binary, Mult, Div, Add, Sub):
    _node.model_rebuild()


def lit(num: int, den: int = 1, tol: Tolerance | None = None) -> Lit:
    return Lit(value=PosRational(num=num, den=den), tol=tol)


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<op>[-+*/()]))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens: list[tuple[str, str, int]] = []
    pos = 0
    while pos < len(text):
        if text[pos:].isspace():
            break
        match = _TOKEN.match(text, pos)
        if match is None:
            bad = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ExpressionError(f"unexpected character {text[bad]!r}", bad)
        kind = "num" if match.group("num") else "op"
        start = match.start(kind)
        if match.group("op") == "-":
            raise UnsupportedOperationError(
                "'-' is not supported: Level 1 has no subtraction", start
            )
        tokens.append((kind, match.group(kind), start))
        pos = match.end()
    return tokens


class _Parser:
    def __init__(self, text: str) -> None:
        self.text = text
        self.tokens = _tokenize(text)
        self.index = 0

    def _peek(self) -> tuple[str, str, int] | None:
        return self.tokens[self.index] if self.index < len(self.tokens) else None

    def _fail(self, message: str) -> ExpressionError:
        token = self._peek()
        return ExpressionError(message, token[2] if token else len(self.text))

    def parse(self) -> Expr:
        if not self.tokens:
            raise ExpressionError("empty expression", 0)
        node = self._sum()
        if self._peek() is not None:
            raise self._fail(f"unexpected {self._peek()[1]!r}")
        return node

    def _sum(self) -> Expr:
        node = self._product()
        while (token := self._peek()) and token[1] == "+":
            self.index += 1
            node = Add(left=node, right=self._product())
        return node

    def _product(self) -> Expr:
        node = self._factor()
        while (token := self._peek()) and token[1] in "*/":
            self.index += 1
            right = self._factor()
            node = Mult(left=node, right=right) if token[1] == "*" else Div(left=node, right=right)
        return node

    def _factor(self) -> Expr:
        token = self._peek()
        if token is None:
            raise self._fail("expression ends early")
        kind, text, pos = token
        if kind == "num":
            self.index += 1
            return _literal(text, pos)
        if text == "(":
            self.index += 1
            node = self._sum()
            closing = self._peek()
            if closing is None or closing[1] != ")":
                raise self._fail("missing ')'")
            self.index += 1
            return node
        raise self._fail(f"unexpected {text!r}")


def _literal(text: str, pos: int) -> Lit:
    num, _, den = text.partition("/")
    n, d = int(num), int(den or 1)
    if n <= 0 or d <= 0:
        raise ExpressionError(f"literal {text} is not a positive rational", pos)
    return lit(n, d)


def parse_expression(text: str) -> Expr:
    return _Parser(text).parse()


def parse_rational(text: str) -> PosRational:
    """A lone literal, e.g. a command-line value."""
    node = parse_expression(text)
    if not isinstance(node, Lit):
        raise ExpressionError(f"{text!r} is not a single rational literal")
    return node.value


# ---------------------------------------------------------------------------
# Taylor series for e^x
# ---------------------------------------------------------------------------


def taylor_exp_tree(x: Lit) -> Expr:
    """x^3/6 + (x^2/2 + (x + 1)), each sum adding a new term to the running one."""
    one = Lit(value=ONE)
    cube = Mult(left=x, right=Mult(left=x, right=x))
    square = Mult(left=x, right=x)
    return Add(
        left=Div(left=cube, right=lit(6)),
        right=Add(
            left=Div(left=square, right=lit(2)),
            right=Add(left=x, right=one),
        ),
    )


def taylor_exp_tree_reversed(x: Lit) -> Expr:
    """((x^3/6 + x^2/2) + x) + 1: the same terms summed in the opposite order."""
    one = Lit(value=ONE)
    cube = Mult(left=x, right=Mult(left=x, right=x))
    square = Mult(left=x, right=x)
    return Add(
        left=Add(
            left=Add(left=Div(left=cube, right=lit(6)), right=Div(left=square, right=lit(2))),
            right=x,
        ),
        right=one,
    )


def taylor_input(value: PosRational, tol: Tolerance = FLOORED) -> Lit:
    """x with the tolerance it would carry after a floor conversion."""
    return Lit(value=value, tol=tol)


def taylor_exp_value(x: PosRational) -> PosRational:
    """1 + x + x^2/2 + x^3/6 exactly."""
    n, d = x.num, x.den
    d3 = d * d * d
    return PosRational(num=6 * d3 + 6 * n * d * d + 3 * n * n * d + n * n * n, den=6 * d3)
