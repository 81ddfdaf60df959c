"""CLI sub-commands."""
from stlplan.commands import benchmark, evaluate, falsify, plan

COMMANDS = (plan, falsify, evaluate, benchmark)

__all__ = ["COMMANDS", "plan", "falsify", "evaluate", "benchmark"]
