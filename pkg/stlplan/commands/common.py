"""Helpers shared by the sub-commands."""
import argparse
import re
from pathlib import Path
from typing import Optional

from stlplan.core.config import get_settings
from stlplan.core.errors import ConfigError
from stlplan.missions import Mission
from stlplan.planner import SolveResult, solve_cg, solve_dr
from stlplan.schemas import SolverConfig, ThetaFile
from stlplan.utils import read_json

METHODS = ("cg", "dr", "dr32", "dr64")
_DR = re.compile(r"^dr(\d*)$")


def add_config_argument(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", required=True, help="Mission config JSON file")


def add_out_argument(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--out", help="Output directory (default: OUTPUT_DIR/<mission>)")


def output_dir(args: argparse.Namespace, mission: Mission, suffix: str = "") -> Path:
    if args.out:
        return Path(args.out)
    return Path(get_settings().OUTPUT_DIR) / f"{mission.name}{suffix}"


def solver_config(mission: Mission, seed: Optional[int]) -> SolverConfig:
    config = mission.config.solver
    if seed is not None:
        config = config.model_copy(update={"seed": seed})
    return config


def validate_method(method: str) -> str:
    if method != "cg" and not _DR.match(method):
        raise ConfigError(f"unknown method {method!r}; expected one of {', '.join(METHODS)} or drN", field="method")
    return method


def run_method(mission: Mission, method: str, config: SolverConfig) -> SolveResult:
    """Plan with counterexample-guided search ("cg") or domain randomization.

    "drN" draws N samples; a bare "dr" uses `config.dr_samples`.
    """
    validate_method(method)
    if method == "cg":
        return solve_cg(mission, config)
    count = _DR.match(method).group(1)
    return solve_dr(mission, int(count) if count else config.dr_samples, config)


def load_theta(mission: Mission, path: str):
    return mission.load_theta(ThetaFile.model_validate(read_json(path)))
