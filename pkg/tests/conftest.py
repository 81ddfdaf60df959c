"""Shared fixtures and the `slow` marker."""
import numpy as np
import pytest

from stlplan.schemas import MissionConfig, SolverConfig
from stlplan.stl import Signal


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False, help="run slow protocol tests")


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: long multi-seed protocol runs (use --runslow)")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture
def ramp():
    """x: 0 -> 2 -> 0 over three samples."""
    return Signal([0.0, 1.0, 2.0], [[0.0], [2.0], [0.0]])


@pytest.fixture
def short_mission_config():
    """Mission 1 on a coarse, short grid so gradients and solver smoke runs stay quick."""
    return MissionConfig(
        horizon=40.0,
        dt=2.0,
        substeps=2,
        waypoints=3,
        t_obs=8.0,
        solver=SolverConfig(
            n0=2,
            max_rounds=2,
            min_iterations=3,
            max_iterations=3,
            multistart=1,
            falsify_restarts=1,
            dr_samples=2,
        ),
    )
