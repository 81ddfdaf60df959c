"""Missions: a plant, a specification and a cost, exposed as a planning problem."""
from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence, Union

import numpy as np

from stlplan.autodiff import Scalar, value_of
from stlplan.core.errors import ConfigError
from stlplan.dynamics import (
    Box,
    Exogenous,
    PlanLayout,
    SimGrid,
    Trace,
    channel_map,
    initial_plan,
    make_plant,
    simulate,
    total_impulse,
    waypoint_schedule,
)
from stlplan.missions.specs import spec_dubins, spec_mission1, spec_mission2
from stlplan.planner.problem import Problem
from stlplan.schemas.mission import MissionConfig, ThetaFile
from stlplan.stl import Formula, SmoothingConfig, parse_formula, robustness, robustness_smooth
from stlplan.utils.io import read_json


def build_formula(config: MissionConfig, channels: Sequence[str]) -> Formula:
    if config.formula:
        return parse_formula(config.formula, channels)
    if config.spec == "mission1":
        return spec_mission1(config.goal_radius, config.keep_out_radius, config.speed_limit)
    if config.spec == "mission2":
        return spec_mission2(
            config.goal_radius, config.keep_out_radius, config.speed_limit, config.loiter_band, config.t_obs
        )
    return spec_dubins(config.goal_radius, config.loiter_band, config.t_obs)


def load_config(path: Union[str, Path]) -> MissionConfig:
    """Read and validate a mission config file."""
    return MissionConfig.model_validate(read_json(path))


def sample_chi(box: Box, rng: np.random.Generator, count: int) -> list[Exogenous]:
    """`count` i.i.d. uniform draws from `box`."""
    return [Exogenous(row, box) for row in box.sample(rng, count)]


@dataclass
class MissionReport:
    exact_robustness: float
    smooth_robustness: float
    impulse: float
    cost: float
    trace: Trace

    @property
    def satisfied(self) -> bool:
        return self.exact_robustness > 0


class Mission(Problem):
    """J(theta, chi) = -smooth robustness at t=0 + lambda * total impulse.

    Exact robustness of the same formula is used for reporting.
    """

    def __init__(self, config: MissionConfig, formula: Optional[Formula] = None, smoothing_k: Optional[float] = None) -> None:
        self.config = config
        params = config.cwh if config.plant == "cwh" else config.dubins
        self.plant = make_plant(config.plant, params)
        self.grid = SimGrid(config.dt, config.horizon, config.substeps)
        self.layout = PlanLayout(self.plant, waypoint_schedule(config.horizon, config.waypoints))
        box = Box(config.chi_box.lower, config.chi_box.upper)
        plan = initial_plan(self.plant, self.layout.waypoint_times, box.center)
        super().__init__(self.layout.flatten(plan), box)
        self.formula = formula if formula is not None else build_formula(config, self.plant.channel_names)
        self.smoothing = SmoothingConfig(smoothing_k if smoothing_k is not None else config.smoothing_k)

    @classmethod
    def from_config(cls, config: Union[MissionConfig, str, Path]) -> Mission:
        if not isinstance(config, MissionConfig):
            config = load_config(config)
        return cls(config)

    @property
    def name(self) -> str:
        return self.config.name

    def trace(self, theta: Sequence[Scalar], chi: Sequence[Scalar]) -> Trace:
        return simulate(self.plant, self.layout.unflatten(theta), chi, self.grid)

    def impulse(self, trace: Trace) -> Scalar:
        return total_impulse(trace, norm=self.config.impulse_norm)

    def cost(self, theta, chi):
        trace = self.trace(theta, chi)
        rho = robustness_smooth(self.formula, channel_map(trace), 0.0, self.smoothing)
        return -rho + self.config.lambda_impulse * self.impulse(trace)

    def annealed(self) -> Mission:
        """Same mission and formula object, with k multiplied by the anneal factor."""
        return Mission(self.config, self.formula, self.smoothing.k * self.config.anneal_factor)

    def exact_robustness(self, theta, chi) -> float:
        trace = self.trace(np.asarray(theta, dtype=float).tolist(), np.asarray(chi, dtype=float).tolist())
        return robustness(self.formula, channel_map(trace), 0.0)

    def report(self, theta: Sequence[float], chi: Sequence[float]) -> MissionReport:
        """Exact and smooth robustness, impulse and cost of one rollout."""
        trace = self.trace(np.asarray(theta, dtype=float).tolist(), np.asarray(chi, dtype=float).tolist())
        signal = channel_map(trace)
        exact = robustness(self.formula, signal, 0.0)
        smooth = value_of(robustness_smooth(self.formula, signal, 0.0, self.smoothing))
        impulse = value_of(self.impulse(trace))
        return MissionReport(exact, smooth, impulse, -smooth + self.config.lambda_impulse * impulse, trace)

    def theta_file(self, theta: Sequence[float]) -> ThetaFile:
        return ThetaFile(
            plant=self.config.plant,
            waypoints=self.config.waypoints,
            horizon=self.config.horizon,
            theta=np.asarray(theta, dtype=float).tolist(),
        )

    def load_theta(self, saved: ThetaFile) -> np.ndarray:
        if saved.plant != self.config.plant:
            raise ConfigError(f"theta is for plant {saved.plant!r}, mission uses {self.config.plant!r}", field="plant")
        if saved.waypoints != self.config.waypoints or saved.horizon != self.config.horizon:
            raise ConfigError("theta waypoint schedule does not match the mission", field="waypoints")
        if len(saved.theta) != self.layout.size:
            raise ConfigError(f"theta has {len(saved.theta)} coordinates, expected {self.layout.size}", field="theta")
        return np.asarray(saved.theta, dtype=float)

    def load_chi(self, chi: Sequence[float]) -> np.ndarray:
        if len(chi) != self.chi_box.dim:
            raise ConfigError(f"chi has {len(chi)} coordinates, expected {self.chi_box.dim}", field="chi")
        return Exogenous(chi, self.chi_box).value
