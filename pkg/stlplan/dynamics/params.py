"""Plant parameters."""
import math

from pydantic import BaseModel, ConfigDict, Field


class CwhParams(BaseModel):
    """Clohessy-Wiltshire-Hill parameters; `n` is derived from `mu_grav` and `a`."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    mu_grav: float = Field(3.986e14, gt=0, description="Gravitational parameter, m^3/s^2")
    a: float = Field(353000.0, gt=0, description="Target orbit semi-major axis, m")
    mass: float = Field(500.0, gt=0, description="Chaser mass, kg")

    @property
    def n(self) -> float:
        """Mean motion of the target orbit, rad/s."""
        return math.sqrt(self.mu_grav / self.a**3)


class DubinsParams(BaseModel):
    """Dubins ground robot parameters."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    v_max: float = Field(0.22, gt=0, description="Speed limit, m/s")
