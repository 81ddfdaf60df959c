"""`benchmark`: plan then falsify over seeds and methods, and aggregate."""
import argparse
import time
from concurrent.futures import ProcessPoolExecutor

import numpy as np
from loguru import logger

from stlplan.commands.common import (
    add_config_argument,
    add_out_argument,
    output_dir,
    run_method,
    solver_config,
    validate_method,
)
from stlplan.commands.falsify import falsify
from stlplan.core.config import get_settings
from stlplan.core.errors import ConfigError
from stlplan.missions import Mission
from stlplan.schemas import BenchmarkAggregate, BenchmarkRecord, BenchmarkReport, MissionConfig
from stlplan.utils import parse_seeds, write_csv, write_json

CSV_COLUMNS = ["seed", "method", "worst_robustness", "impulse", "wall_time", "rounds", "dataset_size", "success"]


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser("benchmark", help="Compare planning methods over many seeds")
    add_config_argument(parser)
    parser.add_argument("--method", action="append", dest="methods", help="Repeatable; default: cg")
    parser.add_argument("--methods", dest="method_list", help="Comma-separated alias of repeated --method")
    parser.add_argument("--seeds", default="0..9", help='"0..9", "0,1,5" or "3"')
    parser.add_argument("--restarts", type=int, help="Falsification restarts (default: solver.falsify_restarts)")
    add_out_argument(parser)
    parser.set_defaults(handler=run)


def run_record(config: MissionConfig, seed: int, method: str, restarts: int) -> BenchmarkRecord:
    """Plan, falsify and summarize one (seed, method) pair; failures are captured in the record."""
    try:
        mission = Mission(config)
        started = time.perf_counter()
        result = run_method(mission, method, solver_config(mission, seed))
        wall_time = time.perf_counter() - started
        worst = falsify(mission, result.theta, restarts, seed)
        impulse = mission.report(result.theta, worst.chi).impulse
        return BenchmarkRecord(
            seed=seed,
            method=method,
            worst_robustness=worst.exact_robustness,
            impulse=impulse,
            wall_time=wall_time,
            rounds=len(result.rounds),
            dataset_size=len(result.dataset),
            success=worst.exact_robustness > 0,
        )
    except Exception as e:
        logger.warning("benchmark record seed={} method={} failed: {}", seed, method, e)
        return BenchmarkRecord(seed=seed, method=method, error=f"{type(e).__name__}: {e}")


def aggregate(method: str, records: list[BenchmarkRecord]) -> BenchmarkAggregate:
    completed = [r for r in records if r.error is None]
    times = [r.wall_time for r in completed if r.wall_time is not None]
    sizes = [r.dataset_size for r in completed if r.dataset_size is not None]
    return BenchmarkAggregate(
        method=method,
        records=len(records),
        completed=len(completed),
        success_rate=sum(r.success for r in records) / len(records) if records else 0.0,
        median_time=float(np.median(times)) if times else None,
        median_dataset_size=float(np.median(sizes)) if sizes else None,
    )


def run_benchmark(
    config: MissionConfig,
    config_path: str,
    methods: list[str],
    seeds: list[int],
    restarts: int,
    workers: int = 1,
) -> BenchmarkReport:
    jobs = [(seed, method) for seed in seeds for method in methods]
    if workers > 1:
        # one process per record; no nested thread pools
        config = config.model_copy(update={"solver": config.solver.model_copy(update={"workers": 1})})
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(run_record, config, seed, method, restarts) for seed, method in jobs]
            records = [f.result() for f in futures]
    else:
        records = [run_record(config, seed, method, restarts) for seed, method in jobs]

    order = {m: i for i, m in enumerate(methods)}
    records.sort(key=lambda r: (r.seed, order[r.method]))
    aggregates = [aggregate(m, [r for r in records if r.method == m]) for m in methods]
    return BenchmarkReport(config=config_path, seeds=seeds, methods=methods, records=records, aggregates=aggregates)


def _methods(args: argparse.Namespace) -> list[str]:
    methods = list(args.methods or [])
    if args.method_list:
        methods.extend(m.strip() for m in args.method_list.split(",") if m.strip())
    methods = methods or ["cg"]
    unique: list[str] = []
    for m in methods:
        if validate_method(m) not in unique:
            unique.append(m)
    return unique


def run(args: argparse.Namespace) -> int:
    mission = Mission.from_config(args.config)
    methods = _methods(args)
    seeds = parse_seeds(args.seeds)
    if not seeds:
        raise ConfigError("no seeds given", field="seeds")
    restarts: int = args.restarts or mission.config.solver.falsify_restarts
    workers = mission.config.solver.workers or get_settings().STLPLAN_THREADS
    logger.info("benchmark {}: methods {} x seeds {} ({} workers)", mission.name, methods, seeds, workers)

    report = run_benchmark(mission.config, args.config, methods, seeds, restarts, workers)

    out = output_dir(args, mission, "-benchmark")
    path = write_json(out / "benchmark.json", report)
    rows = [["" if (v := getattr(r, c)) is None else v for c in CSV_COLUMNS] for r in report.records]
    write_csv(out / "benchmark.csv", CSV_COLUMNS, np.array(rows, dtype=object), fmt="%s")

    for agg in report.aggregates:
        print(
            f"📊 {agg.method}: success_rate={agg.success_rate:.3f} ({agg.completed}/{agg.records} completed), "
            f"median_time={agg.median_time}, median_dataset_size={agg.median_dataset_size}"
        )
    print(f"   Results: {path}")
    return 0 if any(r.error is None for r in report.records) else 2
