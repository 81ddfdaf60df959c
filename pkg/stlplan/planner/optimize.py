"""Inner optimizers: descent over theta, multistart projected ascent over chi."""
from __future__ import annotations

import math
from concurrent.futures import Executor
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional, Sequence, TypeVar

import numpy as np
from loguru import logger

from stlplan.autodiff import evaluate, grad
from stlplan.core.errors import ConfigError, NumericError, SolverError
from stlplan.dynamics.exogenous import Box
from stlplan.planner.problem import Problem
from stlplan.schemas.mission import SolverConfig

T = TypeVar("T")
R = TypeVar("R")


def ordered_map(pool: Optional[Executor], fn: Callable[[T], R], items: Iterable[T]) -> list[R]:
    """Map in input order, in `pool` when one is given."""
    if pool is None:
        return [fn(item) for item in items]
    return list(pool.map(fn, items))


@dataclass
class DescentResult:
    x: np.ndarray
    value: float
    iterations: int
    history: list[float] = field(default_factory=list)
    converged: bool = False
    line_search_failed: bool = False


def descend(
    value_fn: Callable[[np.ndarray], float],
    grad_fn: Callable[[np.ndarray], tuple[float, np.ndarray]],
    x0: np.ndarray,
    config: SolverConfig,
    max_iterations: int,
    grad_tol: float,
    box: Optional[Box] = None,
) -> DescentResult:
    """Projected gradient descent with Armijo backtracking.

    Only steps with sufficient decrease are taken, so `history` is non-increasing.
    `value_fn` may return inf for points where the objective cannot be evaluated.
    """
    x = box.project(x0) if box is not None else np.asarray(x0, dtype=float).copy()
    value, g = grad_fn(x)
    history = [value]
    step = config.initial_step
    for iteration in range(1, max_iterations + 1):
        if box is not None:
            stationarity = float(np.linalg.norm(x - box.project(x - g)))
        else:
            stationarity = float(np.linalg.norm(g))
        if stationarity <= grad_tol:
            return DescentResult(x, value, iteration - 1, history, converged=True)

        accepted = False
        for _ in range(config.max_backtracks):
            candidate = x - step * g
            if box is not None:
                candidate = box.project(candidate)
            decrease = float(g @ (candidate - x))
            if decrease >= 0.0:
                break
            trial = value_fn(candidate)
            if trial <= value + config.armijo_c * decrease:
                accepted = True
                break
            step *= config.backtrack

        if not accepted:
            logger.debug("line search failed at iteration {} (value {:.6g})", iteration, value)
            return DescentResult(x, value, iteration - 1, history, line_search_failed=True)

        x = candidate
        value, g = grad_fn(x)
        history.append(value)
        step *= 2.0
        logger.debug("descent iteration {}: value {:.6g}, step {:.3g}", iteration, value, step)
    return DescentResult(x, value, max_iterations, history)


def _safe(value_fn: Callable[[np.ndarray], float]) -> Callable[[np.ndarray], float]:
    def wrapped(x: np.ndarray) -> float:
        try:
            value = value_fn(x)
        except NumericError:
            return math.inf
        return value if math.isfinite(value) else math.inf

    return wrapped


def minimize_theta(
    problem: Problem,
    dataset: Sequence[np.ndarray],
    theta0: np.ndarray,
    config: SolverConfig,
    pool: Optional[Executor] = None,
) -> DescentResult:
    """Minimize the dataset mean of J(theta, chi_i) over theta."""
    if not dataset:
        raise SolverError("cannot minimize over an empty dataset")
    chis = [np.asarray(c, dtype=float).tolist() for c in dataset]
    count = float(len(chis))

    def value_fn(theta: np.ndarray) -> float:
        th = theta.tolist()
        values = ordered_map(pool, lambda chi: evaluate(lambda t: problem.cost(t, chi), th), chis)
        return math.fsum(values) / count

    def grad_fn(theta: np.ndarray) -> tuple[float, np.ndarray]:
        th = theta.tolist()
        parts = ordered_map(pool, lambda chi: grad(lambda t: problem.cost(t, chi), th), chis)
        value = math.fsum(v for v, _ in parts) / count
        gradient = np.sum([g for _, g in parts], axis=0) / count
        return value, gradient

    try:
        start_value, _ = grad_fn(np.asarray(theta0, dtype=float))
    except NumericError as e:
        raise SolverError(f"objective is not finite at the initial theta ({e})") from e
    if not math.isfinite(start_value):
        raise SolverError("objective is not finite at the initial theta")

    result = descend(
        _safe(value_fn),
        grad_fn,
        np.asarray(theta0, dtype=float),
        config,
        config.min_iterations,
        config.min_grad_tol,
        problem.theta_box,
    )
    if result.line_search_failed:
        logger.warning("theta line search stalled after {} iterations; keeping best iterate", result.iterations)
    return result


@dataclass
class AscentResult:
    chi: np.ndarray
    value: float
    winning_start: str
    iterations: int
    start_values: dict[str, float] = field(default_factory=dict)
    line_search_failed: bool = False


def _ascend(problem: Problem, theta: list[float], start: np.ndarray, config: SolverConfig) -> Optional[DescentResult]:
    def value_fn(chi: np.ndarray) -> float:
        return -evaluate(lambda c: problem.cost(theta, c), chi.tolist())

    def grad_fn(chi: np.ndarray) -> tuple[float, np.ndarray]:
        value, g = grad(lambda c: problem.cost(theta, c), chi.tolist())
        return -value, -g

    start = problem.chi_box.project(start)
    try:
        grad_fn(start)
    except NumericError as e:
        logger.debug("skipping ascent start {}: {}", start.tolist(), e)
        return None
    return descend(
        _safe(value_fn),
        grad_fn,
        start,
        config,
        config.max_iterations,
        config.max_grad_tol,
        problem.chi_box,
    )


def maximize_chi(
    problem: Problem,
    theta: np.ndarray,
    config: SolverConfig,
    rng: np.random.Generator,
    extra_starts: Optional[dict[str, np.ndarray]] = None,
    multistart: Optional[int] = None,
    pool: Optional[Executor] = None,
) -> AscentResult:
    """Projected gradient ascent on J(theta, .) from several starts; the best end point wins.

    Starts are `multistart` uniform samples from the box (labelled "uniform-i") followed
    by `extra_starts` in insertion order. Ties go to the earlier start.
    """
    count = config.multistart if multistart is None else multistart
    uniform = problem.chi_box.sample(rng, count)
    starts: list[tuple[str, np.ndarray]] = [(f"uniform-{i}", row) for i, row in enumerate(uniform)]
    for label, chi in (extra_starts or {}).items():
        starts.append((label, np.asarray(chi, dtype=float)))

    th = np.asarray(theta, dtype=float).tolist()
    results = ordered_map(pool, lambda item: _ascend(problem, th, item[1], config), starts)

    best: Optional[tuple[str, DescentResult]] = None
    start_values: dict[str, float] = {}
    for (label, _), res in zip(starts, results):
        if res is None or not math.isfinite(res.value):
            continue
        start_values[label] = -res.history[0]
        if best is None or res.value < best[1].value:
            best = (label, res)
    if best is None:
        raise SolverError("J is not finite at any sampled chi")
    label, res = best
    return AscentResult(
        chi=res.x,
        value=-res.value,
        winning_start=label,
        iterations=res.iterations,
        start_values=start_values,
        line_search_failed=res.line_search_failed,
    )


def falsify_independent(
    problem: Problem,
    theta: np.ndarray,
    n_restarts: int,
    config: SolverConfig,
    rng: np.random.Generator,
    pool: Optional[Executor] = None,
) -> AscentResult:
    """Evaluation-time adversary: best of `n_restarts` uniform projected ascents."""
    if n_restarts < 1:
        raise ConfigError("n_restarts must be >= 1", field="restarts")
    return maximize_chi(problem, theta, config, rng, multistart=n_restarts, pool=pool)
