"""Gradient evaluation and finite-difference checking."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from stlplan.autodiff.tape import Scalar, Tape, Var
from stlplan.core.errors import DomainError, NumericError

ScalarFunction = Callable[[Sequence[Scalar]], Scalar]


def grad(f: ScalarFunction, x: Sequence[float]) -> tuple[float, np.ndarray]:
    """Evaluate `f` at `x` and its gradient with one reverse sweep.

    `f` receives a list of `Var`s and must build its result from the primitives in
    `stlplan.autodiff.tape`.

    Example:
        >>> value, g = grad(lambda v: v[0] * v[1], [2.0, 3.0])
        >>> value, g.tolist()
        (6.0, [3.0, 2.0])
    """
    tape = Tape()
    inputs = [tape.variable(v) for v in np.asarray(x, dtype=float).ravel().tolist()]
    out = f(inputs)
    if not isinstance(out, Var):
        value = float(out)
        if not np.isfinite(value):
            raise NumericError("output", f"non-finite value {value}")
        return value, np.zeros(len(inputs))
    adjoint = tape.backward(out)
    gradient = np.array([adjoint[v.index] for v in inputs], dtype=float)
    return out.value, gradient


def evaluate(f: ScalarFunction, x: Sequence[float]) -> float:
    """Evaluate `f` on plain floats (no tape)."""
    value = float(f(np.asarray(x, dtype=float).ravel().tolist()))
    if not np.isfinite(value):
        raise NumericError("output", f"non-finite value {value}")
    return value


@dataclass
class GradientReport:
    """Per-coordinate comparison of reverse-mode and central-difference gradients."""

    value: float
    analytic: np.ndarray
    numeric: np.ndarray
    errors: np.ndarray
    tol: float
    failures: list[int] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    @property
    def worst_index(self) -> int:
        return int(np.argmax(self.errors)) if self.errors.size else -1

    @property
    def max_error(self) -> float:
        return float(self.errors.max()) if self.errors.size else 0.0

    def summary(self) -> str:
        status = "pass" if self.passed else f"fail at coordinates {self.failures}"
        return f"gradient check {status}; max error {self.max_error:.3e} at coordinate {self.worst_index}"


def check_gradient(
    f: ScalarFunction,
    x: Sequence[float],
    step: float = 1e-5,
    tol: float = 1e-4,
    scale_floor: float = 1e-3,
) -> GradientReport:
    """Compare `grad(f, x)` against central differences, coordinate by coordinate.

    The error per coordinate is |analytic - numeric| / max(|analytic|, |numeric|, scale_floor),
    so tiny gradients are judged on absolute error.
    """
    if step <= 0:
        raise DomainError("step must be positive")
    x = np.asarray(x, dtype=float).ravel()
    value, analytic = grad(f, x)
    numeric = np.empty_like(analytic)
    for i in range(x.size):
        forward = x.copy()
        backward = x.copy()
        forward[i] += step
        backward[i] -= step
        numeric[i] = (evaluate(f, forward) - evaluate(f, backward)) / (2.0 * step)
    scale = np.maximum(np.maximum(np.abs(analytic), np.abs(numeric)), scale_floor)
    errors = np.abs(analytic - numeric) / scale
    failures = [int(i) for i in np.flatnonzero(errors > tol)]
    return GradientReport(value, analytic, numeric, errors, tol, failures)
