"""Expression syntax for manifold and map definitions.

Grammar, loosest binding first::

    expr    := term (("+" | "-") term)*
    term    := unary (("*" | "/") unary)*
    unary   := "-" unary | power
    power   := atom ("^" INT)?
    atom    := RATIONAL | "i" | NAME | "(" expr ")" | "exp" "(" expr ")"

``RATIONAL`` is ``123`` or ``123/456`` written without spaces.  Names must
belong to the variable space the text is parsed against.  Multiplication is
always explicit; ``2z1`` is an error.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import DegreeOverflow, NonUnit, ParseError, UnknownVariable
from .scalars import I, as_gaussian
from .series import TruncatedSeries, VariableSpace

__all__ = [
    "Num", "Imag", "Var", "Neg", "BinOp", "Pow", "Exp", "Node",
    "tokenize", "parse_expression", "evaluate_ast", "parse_series",
    "constant_value", "MAX_POWER",
]

MAX_POWER = 64


@dataclass(frozen=True)
class Num:
    value: Fraction


@dataclass(frozen=True)
class Imag:
    pass


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Neg:
    operand: "Node"


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Pow:
    base: "Node"
    exponent: int


@dataclass(frozen=True)
class Exp:
    argument: "Node"


Node = Union[Num, Imag, Var, Neg, BinOp, Pow, Exp]


_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<rat>\d+/\d+(?![\w]))
  | (?P<int>\d+)
  | (?P<name>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>[-+*/^()])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    pos: int


def tokenize(text: str) -> list:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", pos, text)
        kind = m.lastgroup
        if kind != "ws":
            tokens.append(Token(kind, m.group(), pos))
        pos = m.end()
    tokens.append(Token("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, space: VariableSpace | None):
        self.text = text
        self.space = space
        self.tokens = tokenize(text)
        self.k = 0

    def peek(self) -> Token:
        return self.tokens[self.k]

    def take(self) -> Token:
        tok = self.tokens[self.k]
        self.k += 1
        return tok

    def error(self, message: str, tok: Token | None = None):
        tok = tok or self.peek()
        return ParseError(message, tok.pos, self.text)

    def expect(self, text: str) -> Token:
        tok = self.peek()
        if tok.text != text or tok.kind not in ("op",):
            found = tok.text or "end of input"
            raise self.error(f"expected {text!r}, found {found!r}")
        return self.take()

    def parse(self) -> Node:
        if self.peek().kind == "end":
            raise self.error("empty expression")
        node = self.expr()
        if self.peek().kind != "end":
            raise self.error(f"unexpected {self.peek().text!r}")
        return node

    def expr(self) -> Node:
        node = self.term()
        while self.peek().kind == "op" and self.peek().text in "+-":
            op = self.take().text
            node = BinOp(op, node, self.term())
        return node

    def term(self) -> Node:
        node = self.unary()
        while True:
            tok = self.peek()
            if tok.kind == "op" and tok.text in "*/":
                self.take()
                node = BinOp(tok.text, node, self.unary())
            elif tok.kind in ("int", "rat", "name") or (tok.kind == "op" and tok.text == "("):
                raise self.error("implicit multiplication is not allowed; use '*'")
            else:
                return node

    def unary(self) -> Node:
        if self.peek().kind == "op" and self.peek().text == "-":
            self.take()
            return Neg(self.unary())
        return self.power()

    def power(self) -> Node:
        base = self.atom()
        if self.peek().kind == "op" and self.peek().text == "^":
            self.take()
            tok = self.peek()
            if tok.kind != "int":
                raise self.error("exponent must be a nonnegative integer literal")
            self.take()
            return Pow(base, int(tok.text))
        return base

    def atom(self) -> Node:
        tok = self.peek()
        if tok.kind == "int":
            self.take()
            return Num(Fraction(int(tok.text)))
        if tok.kind == "rat":
            self.take()
            a, b = tok.text.split("/")
            if int(b) == 0:
                raise self.error("zero denominator in rational literal", tok)
            return Num(Fraction(int(a), int(b)))
        if tok.kind == "name":
            self.take()
            if tok.text == "i":
                return Imag()
            if tok.text == "exp":
                self.expect("(")
                arg = self.expr()
                self.expect(")")
                return Exp(arg)
            if self.space is not None and tok.text not in self.space.index:
                raise UnknownVariable(
                    f"unknown variable {tok.text!r} at position {tok.pos}; "
                    f"allowed: {', '.join(self.space.names)}")
            return Var(tok.text)
        if tok.kind == "op" and tok.text == "(":
            self.take()
            node = self.expr()
            self.expect(")")
            return node
        found = tok.text or "end of input"
        raise self.error(f"unexpected {found!r}")


def parse_expression(text: str, space: VariableSpace | None = None) -> Node:
    """Parse ``text``; with ``space`` given, variable names are checked against it."""
    return _Parser(text, space).parse()


def evaluate_ast(node: Node, space: VariableSpace, K: int, *,
                 max_power: int = MAX_POWER) -> TruncatedSeries:
    """Evaluate an AST to a series in ``space`` faithful through degree ``K``."""

    def ev(n: Node) -> TruncatedSeries:
        if isinstance(n, Num):
            return TruncatedSeries.constant(space, K, n.value)
        if isinstance(n, Imag):
            return TruncatedSeries.constant(space, K, I)
        if isinstance(n, Var):
            return TruncatedSeries.variable(space, K, n.name)
        if isinstance(n, Neg):
            return -ev(n.operand)
        if isinstance(n, Pow):
            if n.exponent > max_power:
                raise DegreeOverflow(f"exponent {n.exponent} exceeds guard {max_power}")
            return ev(n.base) ** n.exponent
        if isinstance(n, Exp):
            return ev(n.argument).exp()
        if isinstance(n, BinOp):
            a, b = ev(n.left), ev(n.right)
            if n.op == "+":
                return a + b
            if n.op == "-":
                return a - b
            if n.op == "*":
                return a * b
            if not b.constant_term:
                raise NonUnit("denominator has zero constant term")
            return a * b.invert()
        raise TypeError(f"not an expression node: {n!r}")

    return ev(node)


def parse_series(text: str, space: VariableSpace, K: int) -> TruncatedSeries:
    """Parse and evaluate in one step."""
    return evaluate_ast(parse_expression(text, space), space, K)


def constant_value(text: str):
    """Parse a variable-free expression such as ``3/2 - 5*i`` to a Gaussian rational."""
    empty = VariableSpace([])
    return as_gaussian(0) + parse_series(text, empty, 0).constant_term
