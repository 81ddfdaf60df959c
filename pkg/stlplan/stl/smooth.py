"""Log-sum-exp relaxations of max and min."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from stlplan.autodiff import Scalar, exp, log, value_of, vsum
from stlplan.core.errors import DomainError


@dataclass(frozen=True)
class SmoothingConfig:
    """Smoothing parameter k; larger k tracks max/min more tightly."""

    k: float = 100.0

    def __post_init__(self) -> None:
        if not self.k > 0:
            raise DomainError(f"smoothing parameter k must be positive, got {self.k}")


def smooth_max(xs: Iterable[Scalar], k: float) -> Scalar:
    """(1/k) log sum exp(k x_i), shifted by max(x) so no exponent overflows.

    max(xs) <= smooth_max(xs, k) <= max(xs) + log(len(xs)) / k.
    """
    xs = list(xs)
    if not xs:
        raise DomainError("smooth_max of an empty sequence")
    if not k > 0:
        raise DomainError(f"smoothing parameter k must be positive, got {k}")
    if len(xs) == 1:
        return xs[0]
    shift = max(value_of(x) for x in xs)
    total = vsum(exp((x - shift) * k) for x in xs)
    return log(total) / k + shift


def smooth_min(xs: Iterable[Scalar], k: float) -> Scalar:
    """-smooth_max(-xs)."""
    return -smooth_max([-x for x in xs], k)
