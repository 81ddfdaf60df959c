"""Box-bounded exogenous parameters."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from stlplan.core.errors import ConfigError


@dataclass(frozen=True, eq=False)
class Box:
    lower: np.ndarray
    upper: np.ndarray

    def __post_init__(self) -> None:
        lower = np.asarray(self.lower, dtype=float).ravel()
        upper = np.asarray(self.upper, dtype=float).ravel()
        if lower.shape != upper.shape or lower.size == 0:
            raise ConfigError("box bounds must be non-empty and of equal length", field="chi_box")
        if not (np.all(np.isfinite(lower)) and np.all(np.isfinite(upper))):
            raise ConfigError("box bounds must be finite", field="chi_box")
        if np.any(lower > upper):
            raise ConfigError("box lower bound exceeds upper bound", field="chi_box")
        object.__setattr__(self, "lower", lower)
        object.__setattr__(self, "upper", upper)

    @property
    def dim(self) -> int:
        return self.lower.size

    @property
    def center(self) -> np.ndarray:
        return 0.5 * (self.lower + self.upper)

    @property
    def width(self) -> np.ndarray:
        return self.upper - self.lower

    def project(self, x: Sequence[float]) -> np.ndarray:
        """Per-coordinate clamp onto the box."""
        return np.clip(np.asarray(x, dtype=float), self.lower, self.upper)

    def contains(self, x: Sequence[float]) -> bool:
        x = np.asarray(x, dtype=float)
        return bool(np.all(x >= self.lower) and np.all(x <= self.upper))

    def sample(self, rng: np.random.Generator, count: int) -> np.ndarray:
        """`count` i.i.d. uniform points, shape (count, dim)."""
        if count < 1:
            raise ConfigError("count must be >= 1", field="count")
        return self.lower + rng.random((count, self.dim)) * self.width


class Exogenous:
    """An exogenous vector chi, always stored projected onto its box."""

    __slots__ = ("value", "box")

    def __init__(self, value: Sequence[float], box: Box) -> None:
        value = np.asarray(value, dtype=float).ravel()
        if value.size != box.dim:
            raise ConfigError(f"chi has {value.size} coordinates, box has {box.dim}", field="chi")
        self.box = box
        self.value = box.project(value)

    def __repr__(self) -> str:
        return f"Exogenous({self.value.tolist()})"

    def tolist(self) -> list[float]:
        return self.value.tolist()
