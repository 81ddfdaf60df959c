"""Exception hierarchy shared by every stlplan module."""
from typing import Optional


class StlPlanError(Exception):
    """Base class for all stlplan errors."""


class DomainError(StlPlanError, ValueError):
    """A time lies outside a signal's domain, or a signal/interval is malformed."""


class FormulaError(StlPlanError, ValueError):
    """A formula does not fit the signal it is evaluated on, or cannot be parsed."""


class NumericError(StlPlanError, ArithmeticError):
    """A non-finite value appeared while building or sweeping an expression tape."""

    def __init__(self, op: str, message: str) -> None:
        super().__init__(f"{op}: {message}")
        self.op = op


class SimulationDivergedError(NumericError):
    """The closed-loop rollout produced a non-finite state."""

    def __init__(self, step: int, message: str = "non-finite state") -> None:
        super().__init__("simulate", f"{message} at step {step}")
        self.step = step


class SolverError(StlPlanError):
    """An inner optimizer could not make progress from its starting point."""


class ConfigError(StlPlanError, ValueError):
    """A config, plan or exogenous file is invalid."""

    def __init__(self, message: str, field: Optional[str] = None) -> None:
        super().__init__(f"{field}: {message}" if field else message)
        self.field = field
