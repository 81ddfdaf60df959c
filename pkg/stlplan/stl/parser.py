"""Text syntax for STL formulas.

Grammar, loosest binding first::

    implies := or ("->" implies)?
    or      := and ("|" and)*
    and     := until ("&" until)*
    until   := unary ("U" interval? unary)?
    unary   := "!" unary | "F" interval? unary | "G" interval? unary
             | "(" implies ")" | "true" | predicate
    predicate := NAME (">=" | "<=") NUMBER | NUMBER (">=" | "<=") NAME
    interval  := "[" NUMBER "," (NUMBER | "inf") "]"

Omitted intervals mean [0, inf].

Example:
    >>> str(parse_formula("F (r <= 0.1) & ((r >= 2) U G (v <= 0.1))", ["r", "v"]))
    '(F[0,inf] (r <= 0.1) & ((r >= 2) U[0,inf] G[0,inf] (v <= 0.1)))'
"""
from __future__ import annotations

import math
import re
from typing import Sequence

from stlplan.core.errors import FormulaError
from stlplan.stl.formula import Always, And, Eventually, Formula, Implies, Not, Or, Predicate, TrueF, Until
from stlplan.stl.signal import Interval

_TOKEN = re.compile(
    r"\s*(?:(?P<arrow>->)|(?P<cmp>>=|<=)|(?P<num>-?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?)"
    r"|(?P<punct>[!&|()\[\],])|(?P<name>[A-Za-z_][A-Za-z0-9_]*))"
)
_KEYWORDS = {"F", "G", "U", "true", "inf"}


def _tokenize(text: str) -> list[tuple[str, str]]:
    tokens: list[tuple[str, str]] = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise FormulaError(f"unexpected character {text[pos:pos + 1]!r} at offset {pos}")
        kind = m.lastgroup
        tokens.append((kind, m.group(kind)))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, text: str, channels: Sequence[str]) -> None:
        self.tokens = _tokenize(text)
        self.pos = 0
        self.channels = {name: i for i, name in enumerate(channels)}

    def peek(self) -> tuple[str, str] | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self, value: str | None = None, kind: str | None = None) -> str:
        tok = self.peek()
        if tok is None:
            raise FormulaError(f"unexpected end of formula, expected {value or kind}")
        if (value is not None and tok[1] != value) or (kind is not None and tok[0] != kind):
            raise FormulaError(f"expected {value or kind}, got {tok[1]!r}")
        self.pos += 1
        return tok[1]

    def at(self, value: str) -> bool:
        tok = self.peek()
        return tok is not None and tok[1] == value

    def parse(self) -> Formula:
        f = self.implies()
        if self.peek() is not None:
            raise FormulaError(f"trailing input starting at {self.peek()[1]!r}")
        return f

    def implies(self) -> Formula:
        left = self.disjunction()
        if self.at("->"):
            self.take("->")
            return Implies(left, self.implies())
        return left

    def disjunction(self) -> Formula:
        f = self.conjunction()
        while self.at("|"):
            self.take("|")
            f = Or(f, self.conjunction())
        return f

    def conjunction(self) -> Formula:
        f = self.until()
        while self.at("&"):
            self.take("&")
            f = And(f, self.until())
        return f

    def until(self) -> Formula:
        left = self.unary()
        if self.at("U"):
            self.take("U")
            interval = self.interval()
            return Until(interval, left, self.unary())
        return left

    def unary(self) -> Formula:
        tok = self.peek()
        if tok is None:
            raise FormulaError("unexpected end of formula")
        kind, value = tok
        if value == "!":
            self.take()
            return Not(self.unary())
        if value in ("F", "G"):
            self.take()
            interval = self.interval()
            arg = self.unary()
            return Eventually(arg, interval) if value == "F" else Always(arg, interval)
        if value == "(":
            self.take("(")
            f = self.implies()
            self.take(")")
            return f
        if value == "true":
            self.take()
            return TrueF()
        return self.predicate()

    def interval(self) -> Interval:
        if not self.at("["):
            return Interval()
        self.take("[")
        lower = float(self.take(kind="num"))
        self.take(",")
        if self.at("inf"):
            self.take("inf")
            upper = math.inf
        else:
            upper = float(self.take(kind="num"))
        self.take("]")
        return Interval(lower, upper)

    def predicate(self) -> Formula:
        kind, value = self.peek()
        if kind == "name":
            name = self.take(kind="name")
            op = self.take(kind="cmp")
            threshold = float(self.take(kind="num"))
        elif kind == "num":
            threshold = float(self.take(kind="num"))
            op = ">=" if self.take(kind="cmp") == "<=" else "<="
            name = self.take(kind="name")
        else:
            raise FormulaError(f"expected a predicate, got {value!r}")
        if name in _KEYWORDS or name not in self.channels:
            raise FormulaError(f"unknown channel {name!r}; known channels: {sorted(self.channels)}")
        return Predicate(self.channels[name], threshold, op, name=name)


def parse_formula(text: str, channels: Sequence[str]) -> Formula:
    """Parse `text` into a formula over the named channels."""
    return _Parser(text, channels).parse()
