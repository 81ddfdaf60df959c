"""Counterexample-guided Gauss-Seidel loop and the domain-randomization baseline."""
from __future__ import annotations

import math
import time
from concurrent.futures import ThreadPoolExecutor
from contextlib import contextmanager
from dataclasses import dataclass, field
from typing import Iterator, Optional

import numpy as np
from loguru import logger

from stlplan.autodiff import evaluate
from stlplan.core.config import get_settings
from stlplan.core.errors import ConfigError
from stlplan.planner.dataset import CounterexampleDataset
from stlplan.planner.optimize import maximize_chi, minimize_theta, ordered_map
from stlplan.planner.problem import Problem
from stlplan.schemas.mission import SolverConfig
from stlplan.schemas.result import RoundLog, SolveResultModel, Termination
from stlplan.utils.seeding import make_rng


@dataclass
class SolveResult:
    method: str
    seed: int
    theta: np.ndarray
    dataset: CounterexampleDataset
    rounds: list[RoundLog] = field(default_factory=list)
    termination: Termination = "max-rounds"
    wall_time: float = 0.0

    def to_model(self, include_timings: bool = True) -> SolveResultModel:
        """Serializable form; without timings it is identical across runs with the same seed."""
        rounds = self.rounds if include_timings else [r.model_copy(update={"wall_time": None}) for r in self.rounds]
        return SolveResultModel(
            method=self.method,
            seed=self.seed,
            theta=self.theta.tolist(),
            dataset=self.dataset.to_entries(),
            rounds=rounds,
            termination=self.termination,
            appended_counterexamples=self.dataset.counterexamples,
            timings=self.timings() if include_timings else {},
        )

    def timings(self) -> dict[str, float]:
        out = {"solve_seconds": self.wall_time}
        for r in self.rounds:
            if r.wall_time is not None:
                out[f"round_{r.index}_seconds"] = r.wall_time
        return out


@contextmanager
def worker_pool(config: SolverConfig) -> Iterator[Optional[ThreadPoolExecutor]]:
    workers = config.workers or get_settings().STLPLAN_THREADS
    if workers <= 1:
        yield None
        return
    with ThreadPoolExecutor(max_workers=workers) as pool:
        yield pool


def _costs(problem: Problem, theta: np.ndarray, chis: list[np.ndarray], pool) -> list[float]:
    th = theta.tolist()

    def one(chi: np.ndarray) -> float:
        try:
            return evaluate(lambda t: problem.cost(t, chi.tolist()), th)
        except ArithmeticError:
            return -math.inf

    return ordered_map(pool, one, chis)


def solve_cg(problem: Problem, config: SolverConfig) -> SolveResult:
    """Alternate theta minimization over the dataset and chi maximization, growing the
    dataset by one counterexample per round until chi* stops moving or M rounds pass.
    """
    started = time.perf_counter()
    rng = make_rng(config.seed)
    dataset = CounterexampleDataset.initial(problem.chi_box, rng, config.n0)
    theta = problem.theta0.copy()
    previous: Optional[np.ndarray] = None
    result = SolveResult("cg", config.seed, theta, dataset)

    with worker_pool(config) as pool:
        for index in range(1, config.max_rounds + 1):
            round_start = time.perf_counter()
            descent = minimize_theta(problem, dataset.chis, theta, config, pool)
            theta = descent.x

            costs = _costs(problem, theta, dataset.chis, pool)
            extra = {"dataset-best": dataset.chis[int(np.argmax(costs))]}
            if previous is not None:
                extra = {"previous": previous, **extra}
            ascent = maximize_chi(problem, theta, config, rng, extra, pool=pool)

            entry = RoundLog(
                index=index,
                mean_cost=descent.value,
                chi_star=ascent.chi.tolist(),
                cost_at_chi_star=ascent.value,
                exact_robustness=problem.exact_robustness(theta, ascent.chi),
                winning_start=ascent.winning_start,
                min_iterations=descent.iterations,
                max_iterations=ascent.iterations,
                line_search_warning=descent.line_search_failed or ascent.line_search_failed,
                wall_time=time.perf_counter() - round_start,
            )
            result.rounds.append(entry)
            logger.info(
                "round {}: mean J {:.6g}, chi* {}, J(chi*) {:.6g}, dataset {}",
                index,
                entry.mean_cost,
                np.round(ascent.chi, 4).tolist(),
                entry.cost_at_chi_star,
                len(dataset),
            )

            if previous is not None and float(np.max(np.abs(ascent.chi - previous))) <= config.fixed_point_tol:
                result.termination = "fixed-point"
                break
            dataset.append_counterexample(ascent.chi)
            previous = ascent.chi
            if index == 1:
                problem = problem.annealed()
        else:
            result.termination = "max-rounds"

    result.theta = theta
    result.wall_time = time.perf_counter() - started
    logger.info(
        "solve_cg finished: {} after {} rounds, {} counterexamples", result.termination, len(result.rounds), dataset.counterexamples
    )
    return result


def solve_dr(problem: Problem, n_samples: int, config: SolverConfig) -> SolveResult:
    """Domain randomization: one theta minimization over `n_samples` uniform chis."""
    if n_samples < 1:
        raise ConfigError("n_samples must be >= 1", field="n_samples")
    started = time.perf_counter()
    rng = make_rng(config.seed)
    dataset = CounterexampleDataset.initial(problem.chi_box, rng, n_samples)

    with worker_pool(config) as pool:
        descent = minimize_theta(problem, dataset.chis, problem.theta0.copy(), config, pool)
        costs = _costs(problem, descent.x, dataset.chis, pool)

    worst = int(np.argmax(costs))
    wall_time = time.perf_counter() - started
    entry = RoundLog(
        index=1,
        mean_cost=descent.value,
        chi_star=dataset.chis[worst].tolist(),
        cost_at_chi_star=costs[worst],
        exact_robustness=problem.exact_robustness(descent.x, dataset.chis[worst]),
        winning_start="dataset-best",
        min_iterations=descent.iterations,
        max_iterations=0,
        line_search_warning=descent.line_search_failed,
        wall_time=wall_time,
    )
    logger.info("solve_dr({}) finished: mean J {:.6g}", n_samples, descent.value)
    return SolveResult(f"dr{n_samples}", config.seed, descent.x, dataset, [entry], "single-pass", wall_time)
