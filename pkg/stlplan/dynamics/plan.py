"""Waypoint-tracking plans and their flat parameter vector.

A plan holds reference states and feedforward controls on a fixed waypoint schedule,
plus one feedback matrix shared by the whole trajectory. Between waypoints both are
interpolated affinely; the controller is

    u(t) = u_ff(t) + K (x_ref(t) - x)
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from stlplan.autodiff import Scalar, vsum
from stlplan.core.errors import ConfigError
from stlplan.dynamics.plants import Plant


def waypoint_schedule(horizon: float, count: int = 11) -> np.ndarray:
    """`count` uniformly spaced waypoint times over [0, horizon]."""
    if count < 2:
        raise ConfigError("a plan needs at least two waypoints", field="waypoints")
    return np.linspace(0.0, horizon, count)


@dataclass(eq=False)
class Plan:
    waypoint_times: np.ndarray
    states: list[list[Scalar]]
    feedforward: list[list[Scalar]]
    gains: list[list[Scalar]]

    def __post_init__(self) -> None:
        times = np.asarray(self.waypoint_times, dtype=float)
        if times.size < 2 or not np.all(np.diff(times) > 0):
            raise ConfigError("waypoint times must be strictly increasing", field="waypoints")
        if len(self.states) != times.size or len(self.feedforward) != times.size:
            raise ConfigError("one state and one feedforward row per waypoint", field="waypoints")
        self.waypoint_times = times
        self._time_list = times.tolist()

    @classmethod
    def zeros(cls, plant: Plant, waypoint_times: np.ndarray) -> Plan:
        w = len(waypoint_times)
        return cls(
            waypoint_times,
            [[0.0] * plant.state_dim for _ in range(w)],
            [[0.0] * plant.control_dim for _ in range(w)],
            [[0.0] * plant.state_dim for _ in range(plant.control_dim)],
        )

    def reference(self, t: float) -> tuple[list[Scalar], list[Scalar]]:
        """(x_ref(t), u_ff(t)); held constant outside the schedule."""
        times = self._time_list
        if t <= times[0]:
            return list(self.states[0]), list(self.feedforward[0])
        if t >= times[-1]:
            return list(self.states[-1]), list(self.feedforward[-1])
        p = int(np.searchsorted(self.waypoint_times, t, side="right")) - 1
        t0, t1 = times[p], times[p + 1]
        if t == t0:
            return list(self.states[p]), list(self.feedforward[p])
        alpha = (t - t0) / (t1 - t0)
        beta = 1.0 - alpha

        def blend(rows: list[list[Scalar]]) -> list[Scalar]:
            return [a * beta + b * alpha for a, b in zip(rows[p], rows[p + 1])]

        return blend(self.states), blend(self.feedforward)


def tracking_control(plan: Plan, state: Sequence[Scalar], t: float) -> list[Scalar]:
    """u = u_ff(t) + K (x_ref(t) - x)."""
    x_ref, u_ff = plan.reference(t)
    error = [r - x for r, x in zip(x_ref, state)]
    return [
        vsum([ff, *(k * e for k, e in zip(row, error))])
        for ff, row in zip(u_ff, plan.gains)
    ]


class PlanLayout:
    """Maps a plan to a flat vector theta of O(1) coordinates and back.

    Layout: waypoint states (row-major), then feedforward rows, then the gain matrix.
    Each coordinate is the physical value divided by its block's unit.
    """

    def __init__(self, plant: Plant, waypoint_times: np.ndarray) -> None:
        self.plant = plant
        self.waypoint_times = np.asarray(waypoint_times, dtype=float)
        w = self.waypoint_times.size
        sd, cd = plant.state_dim, plant.control_dim
        self.n_states = w * sd
        self.n_feedforward = w * cd
        self.n_gains = cd * sd
        self.scale = np.concatenate(
            [
                np.tile(plant.state_scale(), w),
                np.tile(plant.control_scale(), w),
                np.full(self.n_gains, plant.gain_scale()),
            ]
        )
        self._scale_list = self.scale.tolist()

    @property
    def size(self) -> int:
        return self.scale.size

    def blocks(self) -> dict[str, slice]:
        a = self.n_states
        b = a + self.n_feedforward
        return {"states": slice(0, a), "feedforward": slice(a, b), "gains": slice(b, self.size)}

    def flatten(self, plan: Plan) -> np.ndarray:
        physical = [
            float(v)
            for rows in (plan.states, plan.feedforward, plan.gains)
            for row in rows
            for v in row
        ]
        if len(physical) != self.size:
            raise ConfigError(f"plan has {len(physical)} coordinates, layout expects {self.size}", field="theta")
        return np.asarray(physical) / self.scale

    def unflatten(self, theta: Sequence[Scalar]) -> Plan:
        theta = list(theta)
        if len(theta) != self.size:
            raise ConfigError(f"theta has {len(theta)} coordinates, expected {self.size}", field="theta")
        values = [v * s for v, s in zip(theta, self._scale_list)]
        sd, cd = self.plant.state_dim, self.plant.control_dim
        w = self.waypoint_times.size
        blocks = self.blocks()
        states = values[blocks["states"]]
        feedforward = values[blocks["feedforward"]]
        gains = values[blocks["gains"]]
        return Plan(
            self.waypoint_times,
            [states[i * sd:(i + 1) * sd] for i in range(w)],
            [feedforward[i * cd:(i + 1) * cd] for i in range(w)],
            [gains[i * sd:(i + 1) * sd] for i in range(cd)],
        )


def initial_plan(
    plant: Plant,
    waypoint_times: np.ndarray,
    start_state: Sequence[float],
    arrive_fraction: float = 0.9,
) -> Plan:
    """Straight-line approach from `start_state` to the origin, arriving at
    `arrive_fraction` of the horizon and holding there, tracked by the plant's default gains.
    """
    times = np.asarray(waypoint_times, dtype=float)
    k = plant.position_dim
    p0 = np.asarray(start_state, dtype=float)[:k]
    arrive = arrive_fraction * times[-1]
    distance = float(np.linalg.norm(p0))
    approach = -p0 / distance if distance > 0 else np.eye(k)[0]
    cruise = -p0 / arrive

    states, feedforward = [], []
    for t in times.tolist():
        moving = t < arrive
        position = p0 + cruise * min(t, arrive)
        velocity = cruise if moving else np.zeros(k)
        states.append(plant.reference_state(position, velocity, approach))
        feedforward.append(plant.nominal_feedforward(velocity))
    gains = plant.default_gains(approach).tolist()
    return Plan(times, states, feedforward, gains)
