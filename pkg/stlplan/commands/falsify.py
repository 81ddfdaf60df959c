"""`falsify`: search for the initial state that hurts a saved plan the most."""
import argparse

from stlplan.commands.common import add_config_argument, add_out_argument, load_theta, output_dir, solver_config
from stlplan.missions import Mission
from stlplan.planner import falsify_independent
from stlplan.schemas import FalsifyReport
from stlplan.utils import FALSIFY_STREAM, make_rng, write_json


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser("falsify", help="Find the worst initial state for a saved plan")
    add_config_argument(parser)
    parser.add_argument("--theta", required=True, help="theta.json written by `plan`")
    parser.add_argument("--restarts", type=int, help="Ascent restarts (default: solver.falsify_restarts)")
    parser.add_argument("--seed", type=int, default=0)
    add_out_argument(parser)
    parser.set_defaults(handler=run)


def falsify(mission: Mission, theta, restarts: int, seed: int) -> FalsifyReport:
    config = solver_config(mission, seed)
    found = falsify_independent(mission, theta, restarts, config, make_rng(seed, FALSIFY_STREAM))
    rho = mission.exact_robustness(theta, found.chi)
    return FalsifyReport(
        seed=seed,
        restarts=restarts,
        chi=found.chi.tolist(),
        cost=found.value,
        exact_robustness=rho,
        satisfied=rho > 0,
        winning_restart=int(found.winning_start.rsplit("-", 1)[1]),
    )


def run(args: argparse.Namespace) -> int:
    mission = Mission.from_config(args.config)
    theta = load_theta(mission, args.theta)
    restarts = args.restarts or mission.config.solver.falsify_restarts
    report = falsify(mission, theta, restarts, args.seed)

    out = output_dir(args, mission, "-falsify")
    path = write_json(out / "falsify.json", report)
    print(
        f"{'✅' if report.satisfied else '❌'} worst chi={report.chi}, J={report.cost:.6g}, "
        f"rho={report.exact_robustness:.6g}, satisfied={report.satisfied}"
    )
    print(f"   Results: {path}")
    return 0
