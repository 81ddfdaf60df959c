"""Reverse-mode automatic differentiation."""
from stlplan.autodiff.gradients import GradientReport, check_gradient, evaluate, grad
from stlplan.autodiff.tape import (
    Scalar,
    Tape,
    Var,
    clip,
    cos,
    exp,
    log,
    power,
    sin,
    sqrt,
    value_of,
    vsum,
)

__all__ = [
    "Scalar",
    "Tape",
    "Var",
    "grad",
    "evaluate",
    "check_gradient",
    "GradientReport",
    "exp",
    "log",
    "sqrt",
    "sin",
    "cos",
    "power",
    "vsum",
    "clip",
    "value_of",
]
