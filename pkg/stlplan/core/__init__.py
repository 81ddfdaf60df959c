"""Core application modules."""
from stlplan.core.config import Settings, get_settings
from stlplan.core.errors import (
    ConfigError,
    DomainError,
    FormulaError,
    NumericError,
    SimulationDivergedError,
    SolverError,
    StlPlanError,
)
from stlplan.core.logging import configure_logging

__all__ = [
    "Settings",
    "get_settings",
    "configure_logging",
    "StlPlanError",
    "DomainError",
    "FormulaError",
    "NumericError",
    "SimulationDivergedError",
    "SolverError",
    "ConfigError",
]
