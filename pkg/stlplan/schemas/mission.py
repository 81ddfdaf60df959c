"""Mission and solver configuration schemas."""
from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from stlplan.dynamics.params import CwhParams, DubinsParams


class BoxConfig(BaseModel):
    """Per-coordinate bounds."""

    model_config = ConfigDict(extra="forbid")

    lower: list[float] = Field(..., min_length=1)
    upper: list[float] = Field(..., min_length=1)

    @model_validator(mode="after")
    def check_bounds(self) -> "BoxConfig":
        if len(self.lower) != len(self.upper):
            raise ValueError("lower and upper must have the same length")
        if any(lo > hi for lo, hi in zip(self.lower, self.upper)):
            raise ValueError("lower bound exceeds upper bound")
        return self


class SolverConfig(BaseModel):
    """Outer loop and inner optimizer settings."""

    model_config = ConfigDict(extra="forbid")

    n0: int = Field(8, ge=1, description="Initial dataset size")
    max_rounds: int = Field(10, ge=1, description="Maximum outer rounds M")
    fixed_point_tol: float = Field(1e-3, gt=0, description="Infinity-norm tolerance on successive chi*")

    min_iterations: int = Field(500, ge=1)
    min_grad_tol: float = Field(1e-6, gt=0)
    max_iterations: int = Field(200, ge=1)
    max_grad_tol: float = Field(1e-6, gt=0)
    multistart: int = Field(4, ge=1, description="Uniform starting points for the chi ascent")

    # Armijo backtracking
    initial_step: float = Field(1.0, gt=0)
    armijo_c: float = Field(1e-4, gt=0, lt=1)
    backtrack: float = Field(0.5, gt=0, lt=1)
    max_backtracks: int = Field(30, ge=1)

    dr_samples: int = Field(32, ge=1, description="Samples for the domain-randomization baseline")
    falsify_restarts: int = Field(8, ge=1)
    seed: int = 0
    workers: Optional[int] = Field(None, ge=1, description="Defaults to STLPLAN_THREADS")


_CWH_BOX = BoxConfig(lower=[10.0, 10.0, -3.0, -1.0, -1.0, -1.0], upper=[13.0, 13.0, 3.0, 1.0, 1.0, 1.0])
_DUBINS_BOX = BoxConfig(lower=[-1.6, -1.6, -0.1], upper=[-1.4, -1.4, 0.1])

# Values a dubins mission takes when the config does not set them.
_DUBINS_DEFAULTS = {
    "spec": "dubins",
    "horizon": 60.0,
    "dt": 0.5,
    "loiter_band": (0.5, 1.0),
    "chi_box": _DUBINS_BOX,
    "lambda_impulse": 1e-3,
}


class MissionConfig(BaseModel):
    """Planning problem: plant, specification, cost, grid and exogenous box."""

    model_config = ConfigDict(extra="forbid")

    name: str = "mission1"
    plant: Literal["cwh", "dubins"] = "cwh"
    spec: Literal["mission1", "mission2", "dubins"] = "mission1"
    formula: Optional[str] = Field(None, description="Formula text over channels r, v; overrides `spec`")

    goal_radius: float = Field(0.1, gt=0)
    keep_out_radius: float = Field(2.0, gt=0)
    speed_limit: float = Field(0.1, gt=0)
    loiter_band: tuple[float, float] = (2.0, 3.0)
    t_obs: float = Field(10.0, gt=0)

    lambda_impulse: float = Field(5e-5, ge=0)
    impulse_norm: Literal["l1", "l2"] = "l1"

    dt: float = Field(2.0, gt=0)
    horizon: float = Field(200.0, gt=0)
    substeps: int = Field(4, ge=1)
    waypoints: int = Field(11, ge=2)

    chi_box: BoxConfig = Field(default_factory=lambda: _CWH_BOX.model_copy())
    cwh: CwhParams = Field(default_factory=CwhParams)
    dubins: DubinsParams = Field(default_factory=DubinsParams)

    smoothing_k: float = Field(100.0, gt=0)
    anneal_factor: float = Field(10.0, ge=1)

    solver: SolverConfig = Field(default_factory=SolverConfig)

    @model_validator(mode="after")
    def apply_plant_defaults(self) -> "MissionConfig":
        if self.plant == "dubins":
            for key, value in _DUBINS_DEFAULTS.items():
                if key not in self.model_fields_set:
                    setattr(self, key, value)
        lo, hi = self.loiter_band
        if not 0 < lo < hi:
            raise ValueError("loiter_band must satisfy 0 < lower < upper")
        if self.t_obs >= self.horizon:
            raise ValueError("t_obs must be shorter than the horizon")
        state_dim = 6 if self.plant == "cwh" else 3
        if len(self.chi_box.lower) != state_dim:
            raise ValueError(f"chi_box must have {state_dim} coordinates for plant {self.plant}")
        return self


class ThetaFile(BaseModel):
    """Saved plan parameters."""

    plant: Literal["cwh", "dubins"]
    waypoints: int
    horizon: float
    theta: list[float]


class ChiFile(BaseModel):
    chi: list[float]
