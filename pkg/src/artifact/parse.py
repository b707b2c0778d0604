"""Parsers for polynomial expressions and two-equation system inputs.

The expression grammar covers exactly what the library emits plus the
usual hand-written shorthands: integer and rational "p/q" literals, the
two declared variables, + - * ^ with parentheses, unary minus, and
implicit multiplication by juxtaposition ("3x^2y", "2(x+y)").
"""

from __future__ import annotations

import json
import re
from fractions import Fraction

from .conjugate import DiffSystem
from .poly import BiPoly


class ParseError(ValueError):
    """Malformed expression; ``position`` is a 0-based offset into the text."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class UnknownVariable(ParseError):
    pass


class NonIntegerExponent(ParseError):
    pass


class NegativeExponent(ParseError):
    pass


class BothRhsZero(ValueError):
    """A system needs at least one nonzero right side."""


_NUMBER = re.compile(r"\d+(?:/\d+)?")
_NAME = re.compile(r"[A-Za-z][A-Za-z0-9_]*")


def _tokenize(text: str, variables: tuple[str, str]) -> list[tuple]:
    """Token stream of (kind, value, position) triples.

    kind is one of 'num', 'var', 'op'. A run of letters that is not a
    declared variable but spells a product of them ("xy") is split into
    variable tokens; anything else raises UnknownVariable.
    """
    tokens: list[tuple] = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch == "−":  # typographic minus is accepted as an alias
            tokens.append(("op", "-", i))
            i += 1
            continue
        if ch in "+-*^()":
            tokens.append(("op", ch, i))
            i += 1
            continue
        m = _NUMBER.match(text, i)
        if m:
            tokens.append(("num", m.group(), i))
            i = m.end()
            continue
        m = _NAME.match(text, i)
        if m:
            name = m.group()
            if name in variables:
                tokens.append(("var", name, i))
            elif all(c in variables for c in name):
                for off, c in enumerate(name):
                    tokens.append(("var", c, i + off))
            else:
                raise UnknownVariable(f"unknown variable {name!r}", i)
            i = m.end()
            continue
        raise ParseError(f"unexpected character {ch!r}", i)
    return tokens


class _Parser:
    """Recursive descent over the token stream; every method returns BiPoly."""

    def __init__(self, text: str, variables: tuple[str, str]):
        self.text = text
        self.vars = variables
        self.tokens = _tokenize(text, variables)
        self.pos = 0

    def peek(self) -> tuple | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self) -> tuple:
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of input", len(self.text))
        self.pos += 1
        return tok

    def expect_op(self, op: str) -> None:
        tok = self.peek()
        if tok is None or tok[0] != "op" or tok[1] != op:
            where = tok[2] if tok else len(self.text)
            raise ParseError(f"expected {op!r}", where)
        self.pos += 1

    def parse(self) -> BiPoly:
        value = self.expression()
        tok = self.peek()
        if tok is not None:
            raise ParseError(f"unexpected {tok[1]!r}", tok[2])
        return value

    def expression(self) -> BiPoly:
        value = self.term()
        while True:
            tok = self.peek()
            if tok and tok[0] == "op" and tok[1] in "+-":
                self.pos += 1
                rhs = self.term()
                value = value + rhs if tok[1] == "+" else value - rhs
            else:
                return value

    def term(self) -> BiPoly:
        value = self.signed_factor()
        while True:
            tok = self.peek()
            if tok and tok[0] == "op" and tok[1] == "*":
                self.pos += 1
                value = value * self.signed_factor()
            elif tok and (tok[0] in ("num", "var")
                          or (tok[0] == "op" and tok[1] == "(")):
                # juxtaposition: "3x", "2(x+y)", "x^2y"
                value = value * self.factor()
            else:
                return value

    def signed_factor(self) -> BiPoly:
        tok = self.peek()
        if tok and tok[0] == "op" and tok[1] == "-":
            self.pos += 1
            return -self.signed_factor()
        return self.factor()

    def factor(self) -> BiPoly:
        base = self.atom()
        tok = self.peek()
        if tok and tok[0] == "op" and tok[1] == "^":
            self.pos += 1
            return base ** self.exponent()
        return base

    def exponent(self) -> int:
        tok = self.peek()
        if tok and tok[0] == "op" and tok[1] == "-":
            raise NegativeExponent("exponent must be nonnegative", tok[2])
        if tok is None or tok[0] != "num":
            where = tok[2] if tok else len(self.text)
            raise ParseError("expected an integer exponent", where)
        self.pos += 1
        if "/" in tok[1]:
            raise NonIntegerExponent("exponent must be an integer", tok[2])
        return int(tok[1])

    def atom(self) -> BiPoly:
        tok = self.take()
        kind, value, where = tok
        if kind == "num":
            try:
                return BiPoly.const(Fraction(value), self.vars)
            except ZeroDivisionError:
                raise ParseError("zero denominator", where) from None
        if kind == "var":
            return BiPoly.var(value, self.vars)
        if kind == "op" and value == "(":
            inner = self.expression()
            self.expect_op(")")
            return inner
        raise ParseError(f"unexpected {value!r}", where)


def parse_polynomial(text: str, variables: tuple[str, str]) -> BiPoly:
    """Parse an expression into a fully expanded polynomial."""
    variables = (str(variables[0]), str(variables[1]))
    return _Parser(text, variables).parse()


def parse_system(variables, rhs) -> DiffSystem:
    """Parse the two right sides against the declared variable pair."""
    variables = (str(variables[0]), str(variables[1]))
    if variables[0] == variables[1]:
        raise ValueError(f"variables must be distinct, got {variables}")
    for name in variables:
        if not _NAME.fullmatch(name):
            raise ValueError(f"bad variable name {name!r}")
    expressions = (str(rhs[0]), str(rhs[1]))
    if not expressions[0].strip() or not expressions[1].strip():
        raise ValueError("right-hand sides must be nonempty")
    p = parse_polynomial(expressions[0], variables)
    q = parse_polynomial(expressions[1], variables)
    if p.is_zero() and q.is_zero():
        raise BothRhsZero("both right sides parse to zero")
    return DiffSystem.build(variables, p, q)


def system_from_json(source) -> DiffSystem:
    """Build a system from {"vars": ["x","y"], "rhs": ["...", "..."]}."""
    data = json.loads(source) if isinstance(source, (str, bytes)) else source
    if not isinstance(data, dict) or "vars" not in data or "rhs" not in data:
        raise ValueError('system JSON needs "vars" and "rhs" entries')
    vars_ = data["vars"]
    rhs = data["rhs"]
    if len(vars_) != 2 or len(rhs) != 2:
        raise ValueError('"vars" and "rhs" must each have two entries')
    return parse_system((vars_[0], vars_[1]), (rhs[0], rhs[1]))


_EQUATION_LINE = re.compile(
    r"^\s*d([A-Za-z][A-Za-z0-9_]*)\s*/\s*dt\s*=\s*(.+?)\s*$")


def system_from_text(text: str) -> DiffSystem:
    """Build a system from the two-line "dx/dt = ..." / "dy/dt = ..." form."""
    pairs: list[tuple[str, str]] = []
    for line in text.splitlines():
        if not line.strip():
            continue
        m = _EQUATION_LINE.match(line)
        if m is None:
            raise ValueError(f"cannot read equation line: {line.strip()!r}")
        pairs.append((m.group(1), m.group(2)))
    if len(pairs) != 2:
        raise ValueError(f"expected two equations, found {len(pairs)}")
    (v1, e1), (v2, e2) = pairs
    return parse_system((v1, v2), (e1, e2))


def load_system(text: str) -> DiffSystem:
    """Accept either the JSON or the two-line plain-text system form."""
    stripped = text.lstrip()
    if stripped.startswith("{"):
        return system_from_json(text)
    return system_from_text(text)
