"""STL abstract syntax.

Core nodes are `TrueF`, `Predicate`, `Not`, `And` and `Until`. `Or`, `Implies`,
`Eventually` and `Always` are constructors that expand into core nodes:

    F_I φ = true U_I φ        G_I φ = !F_I !φ
    φ | ψ = !(!φ & !ψ)        φ -> ψ = !φ | ψ

Rendering with `str()` folds those expansions back into the short forms so the
text can be fed to `parse_formula` again.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Literal

from stlplan.core.errors import FormulaError
from stlplan.stl.signal import Interval

Direction = Literal[">=", "<="]


class Formula:
    """Base class of STL AST nodes."""

    def __invert__(self) -> Formula:
        return Not(self)

    def __and__(self, other: Formula) -> Formula:
        return And(self, other)

    def __or__(self, other: Formula) -> Formula:
        return Or(self, other)

    def __rshift__(self, other: Formula) -> Formula:
        return Implies(self, other)

    def children(self) -> tuple[Formula, ...]:
        return ()

    def max_channel(self) -> int:
        """Largest channel index referenced by a predicate, -1 if none."""
        return max((c.max_channel() for c in self.children()), default=-1)

    def depth(self) -> int:
        return 1 + max((c.depth() for c in self.children()), default=0)


@dataclass(frozen=True)
class TrueF(Formula):
    def __str__(self) -> str:
        return "true"


@dataclass(frozen=True)
class Predicate(Formula):
    """value[channel] >= threshold, or value[channel] <= threshold."""

    channel: int
    threshold: float
    direction: Direction = ">="
    name: str = field(default="", compare=False)

    def __post_init__(self) -> None:
        if self.channel < 0:
            raise FormulaError(f"channel index must be >= 0, got {self.channel}")
        if self.direction not in (">=", "<="):
            raise FormulaError(f"unknown predicate direction {self.direction!r}")

    def max_channel(self) -> int:
        return self.channel

    def __str__(self) -> str:
        label = self.name or f"x{self.channel}"
        return f"{label} {self.direction} {self.threshold:g}"


@dataclass(frozen=True)
class Not(Formula):
    arg: Formula

    def children(self) -> tuple[Formula, ...]:
        return (self.arg,)

    def __str__(self) -> str:
        inner = self.arg
        if isinstance(inner, Until) and isinstance(inner.left, TrueF) and isinstance(inner.right, Not):
            return f"G{inner.interval} {_wrap(inner.right.arg)}"
        if isinstance(inner, And) and isinstance(inner.left, Not) and isinstance(inner.right, Not):
            return f"({_wrap(inner.left.arg)} | {_wrap(inner.right.arg)})"
        return f"!{_wrap(inner)}"


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula

    def children(self) -> tuple[Formula, ...]:
        return (self.left, self.right)

    def __str__(self) -> str:
        return f"({_wrap(self.left)} & {_wrap(self.right)})"


@dataclass(frozen=True)
class Until(Formula):
    """left U_interval right."""

    interval: Interval
    left: Formula
    right: Formula

    def children(self) -> tuple[Formula, ...]:
        return (self.left, self.right)

    def __str__(self) -> str:
        if isinstance(self.left, TrueF):
            return f"F{self.interval} {_wrap(self.right)}"
        return f"({_wrap(self.left)} U{self.interval} {_wrap(self.right)})"


def Or(left: Formula, right: Formula) -> Formula:
    return Not(And(Not(left), Not(right)))


def Implies(left: Formula, right: Formula) -> Formula:
    return Or(Not(left), right)


def Eventually(arg: Formula, interval: Interval | None = None) -> Formula:
    return Until(interval or Interval(), TrueF(), arg)


def Always(arg: Formula, interval: Interval | None = None) -> Formula:
    return Not(Eventually(Not(arg), interval))


def _wrap(f: Formula) -> str:
    text = str(f)
    if isinstance(f, Predicate):
        return f"({text})"
    return text
