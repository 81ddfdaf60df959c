"""Piecewise-affine signals and time intervals."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from stlplan.autodiff import Scalar
from stlplan.core.errors import DomainError

# Times closer than this to a sample are treated as that sample.
SNAP_TOL = 1e-9


@dataclass(frozen=True)
class Interval:
    """Closed time interval [lower, upper]; upper may be +inf."""

    lower: float = 0.0
    upper: float = math.inf

    def __post_init__(self) -> None:
        if not math.isfinite(self.lower) or self.lower < 0:
            raise DomainError(f"interval lower bound must be finite and >= 0, got {self.lower}")
        if self.upper < self.lower:
            raise DomainError(f"interval upper bound {self.upper} is below lower bound {self.lower}")

    @property
    def bounded(self) -> bool:
        return math.isfinite(self.upper)

    def __str__(self) -> str:
        upper = "inf" if not self.bounded else f"{self.upper:g}"
        return f"[{self.lower:g},{upper}]"


class Signal:
    """Samples (t_i, x_i) with affine interpolation between them.

    Values may be floats or autodiff `Var`s; the latter is how the smooth robustness
    path receives a differentiable trace. After the last sample the signal stays
    constant; before the first sample it is undefined.
    """

    def __init__(self, times: Sequence[float], values: Sequence) -> None:
        times = np.asarray(times, dtype=float).ravel()
        if times.size == 0:
            raise DomainError("a signal needs at least one sample")
        if not np.all(np.isfinite(times)):
            raise DomainError("signal times must be finite")
        if times.size > 1 and not np.all(np.diff(times) > 0):
            raise DomainError("signal times must be strictly increasing")

        rows = [list(v) if _is_sequence(v) else [v] for v in values]
        if len(rows) != times.size:
            raise DomainError(f"got {times.size} times but {len(rows)} value vectors")
        dim = len(rows[0])
        if dim == 0 or any(len(r) != dim for r in rows):
            raise DomainError("all value vectors must have the same non-zero dimension")

        self._times = times
        self._time_list: list[float] = times.tolist()
        self._columns: list[list[Scalar]] = [
            [_plain(r[c]) for r in rows] for c in range(dim)
        ]

    @classmethod
    def from_columns(cls, times: Sequence[float], columns: Sequence[Sequence[Scalar]]) -> Signal:
        return cls(times, list(zip(*columns)))

    def __len__(self) -> int:
        return len(self._time_list)

    def __repr__(self) -> str:
        return f"Signal(samples={len(self)}, dim={self.dim}, span=[{self.start:g}, {self.end:g}])"

    @property
    def times(self) -> np.ndarray:
        return self._times

    @property
    def time_list(self) -> list[float]:
        return self._time_list

    @property
    def dim(self) -> int:
        return len(self._columns)

    @property
    def start(self) -> float:
        return self._time_list[0]

    @property
    def end(self) -> float:
        return self._time_list[-1]

    def column(self, channel: int) -> list[Scalar]:
        return self._columns[channel]

    def values(self) -> np.ndarray:
        """Sample values as an (n, dim) float array."""
        return np.array(
            [[float(v) for v in col] for col in self._columns], dtype=float
        ).T

    def snap(self, t: float) -> float:
        """Return the sample time within SNAP_TOL of `t`, or `t` itself."""
        i = int(np.searchsorted(self._times, t))
        for j in (i - 1, i):
            if 0 <= j < len(self._time_list) and abs(self._time_list[j] - t) <= SNAP_TOL:
                return self._time_list[j]
        return t

    def sample_index(self, t: float) -> int | None:
        """Index of the sample at exactly `t` (after snapping), if any."""
        t = self.snap(t)
        i = int(np.searchsorted(self._times, t))
        if i < len(self._time_list) and self._time_list[i] == t:
            return i
        return None

    def check_time(self, t: float) -> float:
        """Validate `t` against the domain and return it snapped and clamped to the end."""
        if not math.isfinite(t):
            raise DomainError(f"time {t} is not finite")
        t = self.snap(t)
        if t < self.start:
            raise DomainError(f"time {t} precedes the first sample at {self.start}")
        return min(t, self.end)

    def window_points(self, lower: float, upper: float) -> list[float]:
        """Quantifier grid for [lower, upper]: both endpoints plus every sample inside.

        Endpoints are clamped to the last sample time and snapped.
        """
        lower = self.snap(min(lower, self.end))
        upper = self.snap(min(upper, self.end))
        i0 = int(np.searchsorted(self._times, lower, side="left"))
        i1 = int(np.searchsorted(self._times, upper, side="right"))
        points = {lower, upper}
        points.update(self._time_list[i0:i1])
        return sorted(points)

    def interpolate(self, channel: int, t: float) -> Scalar:
        """Value of one channel at `t` (t must already be inside the domain)."""
        col = self._columns[channel]
        if t >= self.end:
            return col[-1]
        p = int(np.searchsorted(self._times, t, side="right")) - 1
        t0 = self._time_list[p]
        if t == t0:
            return col[p]
        alpha = (t - t0) / (self._time_list[p + 1] - t0)
        return col[p] * (1.0 - alpha) + col[p + 1] * alpha

    def sample(self, channel: int, times: Sequence[float]) -> list[Scalar]:
        return [self.interpolate(channel, t) for t in times]


def eval_at(signal: Signal, t: float) -> np.ndarray | list[Scalar]:
    """Evaluate every channel at `t`.

    Example:
        >>> eval_at(Signal([0.0, 2.0], [[0.0], [4.0]]), 1.0)
        array([2.])
    """
    if not math.isfinite(t) or signal.snap(t) < signal.start:
        raise DomainError(f"time {t} precedes the first sample at {signal.start}")
    t = min(signal.snap(t), signal.end)
    row = [signal.interpolate(c, t) for c in range(signal.dim)]
    if all(isinstance(v, float) for v in row):
        return np.array(row, dtype=float)
    return row


def _is_sequence(v) -> bool:
    return isinstance(v, (list, tuple, np.ndarray))


def _plain(v) -> Scalar:
    if isinstance(v, (int, float, np.floating, np.integer)):
        return float(v)
    return v
