"""Reverse-mode automatic differentiation over scalar expression tapes.

A `Tape` is an append-only list of elementary operations. Every `Var` points at
one node on its tape; the parents of a node always precede it, so a single reverse
sweep visits each node once and accumulates all adjoints.

The math helpers at the bottom (`exp`, `log`, `sqrt`, ...) accept plain floats as
well as `Var`s. Model code written against them runs unchanged on floats (fast
evaluation, finite differences) and on Vars (gradients).
"""
from __future__ import annotations

import math
from typing import Iterable, Sequence, Union

from stlplan.core.errors import NumericError

Scalar = Union[float, "Var"]

_isfinite = math.isfinite


class Tape:
    """Append-only record of elementary operations with their local partials."""

    __slots__ = ("_ops", "_parents", "_partials")

    def __init__(self) -> None:
        self._ops: list[str] = []
        self._parents: list[tuple[int, ...]] = []
        self._partials: list[tuple[float, ...]] = []

    def __len__(self) -> int:
        return len(self._ops)

    def variable(self, value: float) -> Var:
        """Create an input (leaf) node."""
        value = float(value)
        if not _isfinite(value):
            raise NumericError("input", f"non-finite input value {value}")
        return self._push("input", value, (), ())

    def record(
        self,
        op: str,
        value: float,
        parents: Sequence[Var],
        partials: Sequence[float],
    ) -> Var:
        """Append a node computed from `parents` with d(value)/d(parent) = `partials`."""
        for parent in parents:
            if parent.tape is not self:
                raise NumericError(op, "operands live on different tapes")
        return self._push(op, value, tuple(p.index for p in parents), tuple(partials))

    def _push(self, op: str, value: float, parents: tuple[int, ...], partials: tuple[float, ...]) -> Var:
        if not _isfinite(value):
            raise NumericError(op, f"non-finite value {value}")
        for d in partials:
            if not _isfinite(d):
                raise NumericError(op, f"non-finite partial derivative {d}")
        self._ops.append(op)
        self._parents.append(parents)
        self._partials.append(partials)
        return Var(self, len(self._ops) - 1, value)

    def backward(self, output: Var) -> list[float]:
        """Return the adjoint of every node with respect to `output`."""
        if output.tape is not self:
            raise NumericError("backward", "output lives on a different tape")
        adjoint = [0.0] * (output.index + 1)
        adjoint[output.index] = 1.0
        parents = self._parents
        partials = self._partials
        for i in range(output.index, -1, -1):
            a = adjoint[i]
            if a == 0.0:
                continue
            for p, d in zip(parents[i], partials[i]):
                adjoint[p] += a * d
        return adjoint


class Var:
    """A scalar value living on a tape."""

    __slots__ = ("tape", "index", "value")

    def __init__(self, tape: Tape, index: int, value: float) -> None:
        self.tape = tape
        self.index = index
        self.value = value

    def __repr__(self) -> str:
        return f"Var(value={self.value!r}, index={self.index})"

    def __float__(self) -> float:
        return self.value

    def __add__(self, other: Scalar) -> Var:
        if isinstance(other, Var):
            return self.tape.record("add", self.value + other.value, (self, other), (1.0, 1.0))
        return self.tape.record("add", self.value + other, (self,), (1.0,))

    __radd__ = __add__

    def __sub__(self, other: Scalar) -> Var:
        if isinstance(other, Var):
            return self.tape.record("sub", self.value - other.value, (self, other), (1.0, -1.0))
        return self.tape.record("sub", self.value - other, (self,), (1.0,))

    def __rsub__(self, other: float) -> Var:
        return self.tape.record("sub", other - self.value, (self,), (-1.0,))

    def __mul__(self, other: Scalar) -> Var:
        if isinstance(other, Var):
            return self.tape.record(
                "mul", self.value * other.value, (self, other), (other.value, self.value)
            )
        return self.tape.record("mul", self.value * other, (self,), (float(other),))

    __rmul__ = __mul__

    def __truediv__(self, other: Scalar) -> Var:
        if isinstance(other, Var):
            if other.value == 0.0:
                raise NumericError("div", "division by zero")
            q = self.value / other.value
            return self.tape.record("div", q, (self, other), (1.0 / other.value, -q / other.value))
        if other == 0:
            raise NumericError("div", "division by zero")
        return self.tape.record("div", self.value / other, (self,), (1.0 / other,))

    def __rtruediv__(self, other: float) -> Var:
        if self.value == 0.0:
            raise NumericError("div", "division by zero")
        q = other / self.value
        return self.tape.record("div", q, (self,), (-q / self.value,))

    def __neg__(self) -> Var:
        return self.tape.record("neg", -self.value, (self,), (-1.0,))

    def __pos__(self) -> Var:
        return self

    def __pow__(self, exponent: float) -> Var:
        if isinstance(exponent, Var):
            raise NumericError("power", "only constant exponents are supported")
        return power(self, exponent)

    def __rpow__(self, base: float) -> Var:
        if base <= 0:
            raise NumericError("power", f"base {base} must be positive")
        value = base**self.value
        return self.tape.record("power", value, (self,), (value * math.log(base),))


def _float_op(op: str, fn, x: float) -> float:
    try:
        value = fn(x)
    except (ValueError, OverflowError) as e:
        raise NumericError(op, f"{e} at {x}") from e
    if not _isfinite(value):
        raise NumericError(op, f"non-finite value at {x}")
    return value


def exp(x: Scalar) -> Scalar:
    if isinstance(x, Var):
        value = _float_op("exp", math.exp, x.value)
        return x.tape.record("exp", value, (x,), (value,))
    return _float_op("exp", math.exp, x)


def log(x: Scalar) -> Scalar:
    if isinstance(x, Var):
        if x.value <= 0.0:
            raise NumericError("log", f"argument {x.value} must be positive")
        return x.tape.record("log", math.log(x.value), (x,), (1.0 / x.value,))
    return _float_op("log", math.log, x)


def sqrt(x: Scalar) -> Scalar:
    if isinstance(x, Var):
        if x.value <= 0.0:
            # derivative is unbounded at zero
            raise NumericError("sqrt", f"argument {x.value} has no finite derivative")
        value = math.sqrt(x.value)
        return x.tape.record("sqrt", value, (x,), (0.5 / value,))
    return _float_op("sqrt", math.sqrt, x)


def sin(x: Scalar) -> Scalar:
    if isinstance(x, Var):
        return x.tape.record("sin", math.sin(x.value), (x,), (math.cos(x.value),))
    return math.sin(x)


def cos(x: Scalar) -> Scalar:
    if isinstance(x, Var):
        return x.tape.record("cos", math.cos(x.value), (x,), (-math.sin(x.value),))
    return math.cos(x)


def power(x: Scalar, exponent: float) -> Scalar:
    if isinstance(x, Var):
        try:
            value = x.value**exponent
            partial = exponent * x.value ** (exponent - 1) if exponent != 0 else 0.0
        except (ZeroDivisionError, OverflowError) as e:
            raise NumericError("power", f"{e} at {x.value}") from e
        if isinstance(value, complex) or isinstance(partial, complex):
            raise NumericError("power", f"complex result at {x.value}")
        return x.tape.record("power", value, (x,), (partial,))
    return _float_op("power", lambda v: v**exponent, x)


def vsum(items: Iterable[Scalar]) -> Scalar:
    """Sum many scalars with a single tape node."""
    constant = 0.0
    parents: list[Var] = []
    for item in items:
        if isinstance(item, Var):
            parents.append(item)
        else:
            constant += item
    if not parents:
        return constant
    value = constant
    for p in parents:
        value += p.value
    return parents[0].tape.record("sum", value, parents, (1.0,) * len(parents))


def clip(x: Scalar, lower: float, upper: float) -> Scalar:
    """Clamp to [lower, upper]; outside the range the bound is a constant."""
    v = float(x)
    if v < lower:
        return lower
    if v > upper:
        return upper
    return x


def value_of(x: Scalar) -> float:
    return x.value if isinstance(x, Var) else float(x)
