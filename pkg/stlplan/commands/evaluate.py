"""`evaluate`: exact and smooth robustness, impulse and cost of one rollout."""
import argparse

from stlplan.commands.common import add_config_argument, add_out_argument, load_theta, output_dir
from stlplan.missions import Mission
from stlplan.schemas import ChiFile, EvaluateReport
from stlplan.utils import read_json, write_json


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser("evaluate", help="Evaluate a saved plan from one initial state")
    add_config_argument(parser)
    parser.add_argument("--theta", required=True, help="theta.json written by `plan`")
    parser.add_argument("--chi", help="JSON file {\"chi\": [...]} (default: the box center)")
    add_out_argument(parser)
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace) -> int:
    mission = Mission.from_config(args.config)
    theta = load_theta(mission, args.theta)
    if args.chi:
        chi = mission.load_chi(ChiFile.model_validate(read_json(args.chi)).chi)
    else:
        chi = mission.chi_box.center

    result = mission.report(theta, chi)
    report = EvaluateReport(
        chi=chi.tolist(),
        exact_robustness=result.exact_robustness,
        smooth_robustness=result.smooth_robustness,
        smoothing_k=mission.smoothing.k,
        impulse=result.impulse,
        cost=result.cost,
        satisfied=result.satisfied,
    )

    out = output_dir(args, mission, "-evaluate")
    path = write_json(out / "evaluate.json", report)
    result.trace.to_csv(out / "trace.csv")
    print(
        f"rho={report.exact_robustness:.6g}, smooth rho={report.smooth_robustness:.6g} (k={report.smoothing_k:g}), "
        f"impulse={report.impulse:.6g}, J={report.cost:.6g}"
    )
    print(f"   Results: {path}")
    return 0
