"""`plan`: solve the robust planning game for one mission and seed."""
import argparse

from loguru import logger

from stlplan.commands.common import (
    add_config_argument,
    add_out_argument,
    output_dir,
    run_method,
    solver_config,
    validate_method,
)
from stlplan.missions import Mission
from stlplan.utils import write_json


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser("plan", help="Optimize a plan against the worst-case initial state")
    add_config_argument(parser)
    parser.add_argument("--seed", type=int, help="Solver seed (default: the config's solver.seed)")
    parser.add_argument("--method", default="cg", help="cg (default), dr32, dr64, drN, or dr for solver.dr_samples")
    add_out_argument(parser)
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace) -> int:
    mission = Mission.from_config(args.config)
    method = validate_method(args.method)
    config = solver_config(mission, args.seed)
    out = output_dir(args, mission, f"-{method}-seed{config.seed}")
    logger.info("planning {} with {} (seed {})", mission.name, method, config.seed)

    result = run_method(mission, method, config)

    nominal = mission.report(result.theta, mission.chi_box.center)
    write_json(out / "solve_result.json", result.to_model(include_timings=False))
    write_json(out / "timings.json", result.timings())
    write_json(out / "theta.json", mission.theta_file(result.theta))
    nominal.trace.to_csv(out / "nominal_trace.csv")

    last = result.rounds[-1]
    print(
        f"✅ {method} finished: termination={result.termination}, rounds={len(result.rounds)}, "
        f"dataset={len(result.dataset)}, J(chi*)={last.cost_at_chi_star:.6g}, rho(chi*)={last.exact_robustness:.6g}"
    )
    print(f"   Results: {out / 'solve_result.json'}")
    return 0
