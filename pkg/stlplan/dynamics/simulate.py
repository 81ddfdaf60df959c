"""Closed-loop rollout, STL channel map and total impulse."""
from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Literal, Sequence, Union

import numpy as np

from stlplan.autodiff import Scalar, sqrt, value_of, vsum
from stlplan.core.errors import ConfigError, DomainError, NumericError, SimulationDivergedError
from stlplan.dynamics.exogenous import Exogenous
from stlplan.dynamics.plan import Plan, tracking_control
from stlplan.dynamics.plants import NORM_EPS, Plant
from stlplan.stl.signal import Signal
from stlplan.utils.io import write_csv

Derivative = Callable[[Sequence[Scalar], Sequence[Scalar]], list[Scalar]]


@dataclass(frozen=True)
class SimGrid:
    """Uniform output grid; each output step is integrated with `substeps` RK4 steps."""

    dt: float = 2.0
    horizon: float = 200.0
    substeps: int = 4

    def __post_init__(self) -> None:
        if not (self.dt > 0 and self.horizon > 0):
            raise DomainError("dt and horizon must be positive")
        if self.substeps < 1:
            raise DomainError("substeps must be >= 1")
        steps = self.horizon / self.dt
        if abs(steps - round(steps)) > 1e-9 * max(1.0, steps):
            raise DomainError(f"dt={self.dt} does not divide the horizon {self.horizon}")

    @property
    def steps(self) -> int:
        return int(round(self.horizon / self.dt))

    @property
    def times(self) -> np.ndarray:
        return np.arange(self.steps + 1) * self.dt


def rk4_step(f: Derivative, x: list[Scalar], u: Sequence[Scalar], dt: float, substeps: int = 1) -> list[Scalar]:
    """Advance x by dt under a control held constant, using `substeps` RK4 steps."""
    h = dt / substeps
    for _ in range(substeps):
        k1 = f(x, u)
        k2 = f([xi + 0.5 * h * ki for xi, ki in zip(x, k1)], u)
        k3 = f([xi + 0.5 * h * ki for xi, ki in zip(x, k2)], u)
        k4 = f([xi + h * ki for xi, ki in zip(x, k3)], u)
        x = [
            vsum([xi, (h / 6.0) * a, (h / 3.0) * b, (h / 3.0) * c, (h / 6.0) * d])
            for xi, a, b, c, d in zip(x, k1, k2, k3, k4)
        ]
    return x


@dataclass(eq=False)
class Trace:
    """State and applied-control signals on the simulation grid."""

    states: Signal
    controls: Signal
    plant: Plant
    dt: float

    @property
    def times(self) -> np.ndarray:
        return self.states.times

    def columns(self) -> list[str]:
        return ["t", *self.plant.state_names, *self.plant.control_names]

    def to_array(self) -> np.ndarray:
        return np.column_stack([self.times, self.states.values(), self.controls.values()])

    def to_csv(self, path: Union[str, Path]) -> Path:
        return write_csv(path, self.columns(), self.to_array())


def _initial_state(chi: Union[Exogenous, Sequence[Scalar]], plant: Plant) -> list[Scalar]:
    if isinstance(chi, Exogenous):
        x0: list[Scalar] = chi.value.tolist()
    else:
        x0 = [v if not isinstance(v, (np.floating, np.integer, int)) else float(v) for v in chi]
    if len(x0) != plant.state_dim:
        raise DomainError(f"initial state has {len(x0)} coordinates, plant expects {plant.state_dim}")
    return x0


def simulate(plant: Plant, plan: Plan, chi: Union[Exogenous, Sequence[Scalar]], grid: SimGrid = SimGrid()) -> Trace:
    """Roll out the tracking controller from x0 = chi.

    The control is recomputed at each output sample and held for one dt. The trace has
    `grid.steps + 1` samples; the last control row is the command at the final state.
    `chi` may hold autodiff Vars, in which case the whole rollout is on their tape.
    """
    x = _initial_state(chi, plant)
    times = grid.times.tolist()
    states: list[list[Scalar]] = [x]
    controls: list[list[Scalar]] = []
    for step, t in enumerate(times):
        try:
            u = plant.saturate(tracking_control(plan, x, t))
            controls.append(u)
            if step == grid.steps:
                break
            x = rk4_step(plant.derivative, x, u, grid.dt, grid.substeps)
        except NumericError as e:
            raise SimulationDivergedError(step, f"non-finite value in {e.op} during rollout") from e
        if not all(math.isfinite(value_of(v)) for v in x):
            raise SimulationDivergedError(step + 1)
        states.append(x)
    return Trace(Signal(times, states), Signal(times, controls), plant, grid.dt)


def channel_map(trace: Trace) -> Signal:
    """STL channels (r, v) of a trace, one sample per trace sample."""
    plant = trace.plant
    state_cols = [trace.states.column(c) for c in range(trace.states.dim)]
    control_cols = [trace.controls.column(c) for c in range(trace.controls.dim)]
    rows = [
        plant.channels([col[i] for col in state_cols], [col[i] for col in control_cols])
        for i in range(len(trace.states))
    ]
    return Signal(trace.states.times, rows)


ImpulseNorm = Literal["l1", "l2"]


def total_impulse(trace: Trace, dt: float | None = None, norm: ImpulseNorm = "l1") -> Scalar:
    """Sum over applied steps of |u| * dt with |.| smoothed as sqrt(. ^2 + eps^2).

    "l1" sums per-axis magnitudes (per-thruster impulse); "l2" takes the Euclidean norm.
    """
    dt = trace.dt if dt is None else dt
    cols = [trace.controls.column(c) for c in range(trace.controls.dim)]
    eps2 = NORM_EPS * NORM_EPS
    terms: list[Scalar] = []
    for i in range(len(trace.controls) - 1):
        u = [col[i] for col in cols]
        if norm == "l1":
            terms.extend(sqrt(ui * ui + eps2) for ui in u)
        elif norm == "l2":
            terms.append(sqrt(vsum([eps2, *(ui * ui for ui in u)])))
        else:
            raise ConfigError(f"unknown impulse norm {norm!r}", field="impulse_norm")
    return vsum(terms) * dt

