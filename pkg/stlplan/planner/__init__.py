"""Robust planning game solvers."""
from stlplan.planner.dataset import CounterexampleDataset
from stlplan.planner.optimize import (
    AscentResult,
    DescentResult,
    descend,
    falsify_independent,
    maximize_chi,
    minimize_theta,
)
from stlplan.planner.problem import FunctionProblem, Problem
from stlplan.planner.solve import SolveResult, solve_cg, solve_dr

__all__ = [
    "Problem",
    "FunctionProblem",
    "CounterexampleDataset",
    "DescentResult",
    "AscentResult",
    "descend",
    "minimize_theta",
    "maximize_chi",
    "falsify_independent",
    "SolveResult",
    "solve_cg",
    "solve_dr",
]
