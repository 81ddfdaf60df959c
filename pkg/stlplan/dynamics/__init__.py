"""Plants, plans and differentiable simulation."""
from stlplan.dynamics.exogenous import Box, Exogenous
from stlplan.dynamics.params import CwhParams, DubinsParams
from stlplan.dynamics.plan import Plan, PlanLayout, initial_plan, tracking_control, waypoint_schedule
from stlplan.dynamics.plants import (
    NORM_EPS,
    CwhPlant,
    DubinsPlant,
    Plant,
    cwh_derivative,
    cwh_state_transition,
    dubins_derivative,
    make_plant,
)
from stlplan.dynamics.simulate import SimGrid, Trace, channel_map, rk4_step, simulate, total_impulse

__all__ = [
    "CwhParams",
    "DubinsParams",
    "Plant",
    "CwhPlant",
    "DubinsPlant",
    "make_plant",
    "NORM_EPS",
    "cwh_derivative",
    "dubins_derivative",
    "cwh_state_transition",
    "Plan",
    "PlanLayout",
    "initial_plan",
    "tracking_control",
    "waypoint_schedule",
    "Box",
    "Exogenous",
    "SimGrid",
    "Trace",
    "rk4_step",
    "simulate",
    "channel_map",
    "total_impulse",
]
