"""Plant models: CWH relative orbital motion and the Dubins ground robot.

The right-hand sides are written against the float/Var math helpers so the same code
runs on plain floats and on autodiff tapes.
"""
from __future__ import annotations

import math
from typing import Sequence, Union

import numpy as np

from stlplan.autodiff import Scalar, clip, cos, sin, sqrt
from stlplan.core.errors import ConfigError
from stlplan.dynamics.params import CwhParams, DubinsParams

# Regularizer for differentiated norms: sqrt(x^2 + NORM_EPS^2).
NORM_EPS = 1e-6


def cwh_derivative(state: Sequence[Scalar], control: Sequence[Scalar], params: CwhParams) -> list[Scalar]:
    """State derivative of the CWH equations with thrust `control` in newtons.

    State is (px, py, pz, vx, vy, vz) in the target's rotating frame, x radial.
    """
    px, py, pz, vx, vy, vz = state
    ux, uy, uz = control
    n = params.n
    m = params.mass
    return [
        vx,
        vy,
        vz,
        3.0 * n * n * px + 2.0 * n * vy + ux / m,
        -2.0 * n * vx + uy / m,
        -n * n * pz + uz / m,
    ]


def dubins_derivative(state: Sequence[Scalar], control: Sequence[Scalar]) -> list[Scalar]:
    """Unicycle kinematics: state (x, y, heading), control (speed, turn rate)."""
    _, _, heading = state
    speed, turn_rate = control
    return [speed * cos(heading), speed * sin(heading), turn_rate]


def cwh_state_transition(n: float, t: float) -> np.ndarray:
    """Closed-form 6x6 transition matrix of the unforced CWH equations."""
    s, c = math.sin(n * t), math.cos(n * t)
    nt = n * t
    return np.array(
        [
            [4 - 3 * c, 0, 0, s / n, 2 * (1 - c) / n, 0],
            [6 * (s - nt), 1, 0, -2 * (1 - c) / n, (4 * s - 3 * nt) / n, 0],
            [0, 0, c, 0, 0, s / n],
            [3 * n * s, 0, 0, c, 2 * s, 0],
            [-6 * n * (1 - c), 0, 0, -2 * s, 4 * c - 3, 0],
            [0, 0, -n * s, 0, 0, c],
        ],
        dtype=float,
    )


def _norm(xs: Sequence[Scalar]) -> Scalar:
    total = NORM_EPS * NORM_EPS
    for x in xs:
        total = total + x * x
    return sqrt(total)


class Plant:
    """Closed-loop plant interface used by the simulator and the plan layout."""

    kind: str = ""
    state_names: tuple[str, ...] = ()
    control_names: tuple[str, ...] = ()
    channel_names: tuple[str, ...] = ("r", "v")

    @property
    def state_dim(self) -> int:
        return len(self.state_names)

    @property
    def control_dim(self) -> int:
        return len(self.control_names)

    def derivative(self, state: Sequence[Scalar], control: Sequence[Scalar]) -> list[Scalar]:
        raise NotImplementedError

    def saturate(self, control: Sequence[Scalar]) -> list[Scalar]:
        """Control actually applied for a commanded `control`."""
        return list(control)

    def channels(self, state: Sequence[Scalar], control: Sequence[Scalar]) -> list[Scalar]:
        """STL channel values (r, v) for one sample."""
        raise NotImplementedError

    # Units of one plan coordinate, per block.
    def state_scale(self) -> list[float]:
        return [1.0] * self.state_dim

    def control_scale(self) -> list[float]:
        return [1.0] * self.control_dim

    def gain_scale(self) -> float:
        return 1.0

    def default_gains(self, approach: np.ndarray) -> np.ndarray:
        """Stabilizing feedback matrix (control_dim x state_dim) in physical units.

        `approach` is the unit direction of travel of the nominal path.
        """
        raise NotImplementedError

    # Number of leading state coordinates that are positions.
    position_dim: int = 0

    def reference_state(self, position: np.ndarray, velocity: np.ndarray, approach: np.ndarray) -> list[float]:
        raise NotImplementedError

    def nominal_feedforward(self, velocity: np.ndarray) -> list[float]:
        return [0.0] * self.control_dim


class CwhPlant(Plant):
    kind = "cwh"
    state_names = ("px", "py", "pz", "vx", "vy", "vz")
    control_names = ("ux", "uy", "uz")

    # Per unit mass: stiffness in s^-2 and damping in s^-1.
    KP = 0.25
    KD = 0.7

    def __init__(self, params: CwhParams | None = None) -> None:
        self.params = params or CwhParams()

    def derivative(self, state, control):
        return cwh_derivative(state, control, self.params)

    def channels(self, state, control):
        return [_norm(state[:3]), _norm(state[3:])]

    def control_scale(self) -> list[float]:
        return [0.01 * self.params.mass] * 3

    def gain_scale(self) -> float:
        return self.params.mass

    def default_gains(self, approach: np.ndarray) -> np.ndarray:
        m = self.params.mass
        return np.hstack([self.KP * m * np.eye(3), self.KD * m * np.eye(3)])

    position_dim = 3

    def reference_state(self, position, velocity, approach):
        return [*np.asarray(position, dtype=float).tolist(), *np.asarray(velocity, dtype=float).tolist()]


class DubinsPlant(Plant):
    kind = "dubins"
    state_names = ("x", "y", "heading")
    control_names = ("speed", "turn_rate")

    ALONG_TRACK = 0.2
    CROSS_TRACK = 0.3
    HEADING = 0.5

    def __init__(self, params: DubinsParams | None = None) -> None:
        self.params = params or DubinsParams()

    def derivative(self, state, control):
        return dubins_derivative(state, control)

    def saturate(self, control):
        speed, turn_rate = control
        return [clip(speed, 0.0, self.params.v_max), turn_rate]

    def channels(self, state, control):
        return [_norm(state[:2]), control[0]]

    def control_scale(self) -> list[float]:
        return [0.1, 0.1]

    def default_gains(self, approach: np.ndarray) -> np.ndarray:
        ax, ay = float(approach[0]), float(approach[1])
        return np.array(
            [
                [self.ALONG_TRACK * ax, self.ALONG_TRACK * ay, 0.0],
                [-self.CROSS_TRACK * ay, self.CROSS_TRACK * ax, self.HEADING],
            ]
        )

    position_dim = 2

    def reference_state(self, position, velocity, approach):
        x, y = np.asarray(position, dtype=float).tolist()
        return [x, y, math.atan2(float(approach[1]), float(approach[0]))]

    def nominal_feedforward(self, velocity):
        return [float(np.linalg.norm(velocity)), 0.0]


def make_plant(kind: str, params: Union[CwhParams, DubinsParams, None] = None) -> Plant:
    if kind == "cwh":
        return CwhPlant(params)
    if kind == "dubins":
        return DubinsPlant(params)
    raise ConfigError(f"unknown plant {kind!r}", field="plant")
