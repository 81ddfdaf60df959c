"""Signal temporal logic: signals, formulas, and their semantics."""
from stlplan.stl.formula import (
    Always,
    And,
    Eventually,
    Formula,
    Implies,
    Not,
    Or,
    Predicate,
    TrueF,
    Until,
)
from stlplan.stl.parser import parse_formula
from stlplan.stl.semantics import (
    ExactAlgebra,
    OpCounter,
    SmoothAlgebra,
    eval_boolean,
    robustness,
    robustness_smooth,
    robustness_trace,
)
from stlplan.stl.signal import Interval, Signal, eval_at
from stlplan.stl.smooth import SmoothingConfig, smooth_max, smooth_min

__all__ = [
    "Signal",
    "Interval",
    "eval_at",
    "Formula",
    "TrueF",
    "Predicate",
    "Not",
    "And",
    "Until",
    "Or",
    "Implies",
    "Eventually",
    "Always",
    "parse_formula",
    "eval_boolean",
    "robustness",
    "robustness_trace",
    "robustness_smooth",
    "OpCounter",
    "ExactAlgebra",
    "SmoothAlgebra",
    "SmoothingConfig",
    "smooth_max",
    "smooth_min",
]
