from pathlib import Path

import numpy as np
import pytest
from pydantic import ValidationError

from stlplan.autodiff import check_gradient
from stlplan.core.errors import ConfigError
from stlplan.dynamics import Box, channel_map
from stlplan.missions import (
    CHANNELS,
    Mission,
    build_formula,
    loiter,
    reach,
    sample_chi,
    spec_dubins,
    spec_mission1,
    spec_mission2,
)
from stlplan.planner import maximize_chi, minimize_theta
from stlplan.schemas import MissionConfig
from stlplan.stl import (
    Always,
    And,
    Eventually,
    Interval,
    Predicate,
    Signal,
    SmoothingConfig,
    Until,
    eval_boolean,
    parse_formula,
    robustness,
    robustness_smooth,
)
from stlplan.utils import make_rng


CONFIGS = Path(__file__).resolve().parent.parent / "configs"


def channels(r, v, dt=1.0):
    times = np.arange(len(r)) * dt
    return Signal(times, np.column_stack([r, v]))


# --- specifications --------------------------------------------------------


def test_mission1_structure():
    expected = And(
        Eventually(Predicate(0, 0.1, "<=")),
        Until(Interval(), Predicate(0, 2.0, ">="), Always(Predicate(1, 0.1, "<="))),
    )
    assert spec_mission1() == expected
    assert parse_formula("F (r <= 0.1) & ((r >= 2) U G (v <= 0.1))", CHANNELS) == spec_mission1()


def test_mission2_adds_loiter():
    band = And(Predicate(0, 2.0, ">="), Predicate(0, 3.0, "<="))
    assert spec_mission2() == And(spec_mission1(), Eventually(Always(band, Interval(0, 10))))
    assert spec_dubins() == And(reach(0.1), loiter((0.5, 1.0), 10.0))


def test_far_away_trace_violates_reach():
    s = channels([10.0] * 5, [0.0] * 5)
    assert robustness(reach(), s) == pytest.approx(-9.9)
    assert robustness(spec_mission1(), s) == pytest.approx(-9.9)


def test_keep_out_holds_until_slow():
    # slow from the start, outside 2 m while approaching, then at the target
    r = np.concatenate([np.linspace(5.0, 0.0, 26), np.zeros(10)])
    v = np.full_like(r, 0.05)
    s = channels(r, v, dt=2.0)
    assert robustness(spec_mission1(), s) == pytest.approx(0.05)
    assert eval_boolean(spec_mission1(), s)


def test_fast_close_approach_violates_speed_limit():
    r = np.concatenate([np.linspace(5.0, 0.0, 6), np.zeros(5)])
    v = np.concatenate([np.full(6, 0.5), np.zeros(5)])
    s = channels(r, v)
    assert robustness(reach(), s) > 0
    assert robustness(spec_mission1(), s) < 0
    assert not eval_boolean(spec_mission1(), s)


def test_starting_at_the_target_fails_the_keep_out_premise():
    # the keep-out clause is read at the release time as well, so r must be >= 2 at t=0
    s = channels([0.0] * 5, [0.0] * 5)
    assert robustness(reach(), s) == pytest.approx(0.1)
    assert robustness(spec_mission1(), s) == pytest.approx(-2.0)


def test_loiter_then_reach():
    t = np.arange(0.0, 101.0)
    r = np.clip(2.5 - 0.05 * np.maximum(t - 12.0, 0.0), 0.0, None)
    v = np.full_like(t, 0.05)
    s = channels(r, v)
    assert robustness(loiter(), s) == pytest.approx(0.5)
    assert robustness(spec_mission2(), s) == pytest.approx(0.05)


def test_short_dwell_fails_loiter():
    t = np.arange(0.0, 41.0)
    r = np.maximum(5.0 - 0.25 * t, 0.0)
    s = channels(r, np.full_like(t, 0.05))
    assert robustness(loiter(), s) < 0
    assert not eval_boolean(loiter(), s)


def test_conjunctions_never_raise_robustness(rng):
    for _ in range(25):
        s = channels(rng.uniform(0.0, 6.0, size=30), rng.uniform(0.0, 0.3, size=30), dt=2.0)
        assert robustness(spec_mission2(), s) <= robustness(spec_mission1(), s)
        assert robustness(spec_dubins(0.1, (0.5, 1.0)), s) <= robustness(reach(), s)


def test_smooth_robustness_gradient_over_channel_values(rng):
    times = np.arange(12) * 2.0
    r = rng.uniform(0.0, 5.0, size=12)
    v = rng.uniform(0.0, 0.2, size=12)

    def rho(values):
        return robustness_smooth(spec_mission1(), Signal.from_columns(times, [values[:12], values[12:]]))

    report = check_gradient(rho, np.concatenate([r, v]), step=1e-6)
    assert report.passed, report.summary()


# --- configuration ---------------------------------------------------------


def test_dubins_defaults_fill_unset_fields():
    config = MissionConfig(plant="dubins")
    assert config.spec == "dubins"
    assert (config.horizon, config.dt) == (60.0, 0.5)
    assert config.loiter_band == (0.5, 1.0)
    assert config.chi_box.lower == [-1.6, -1.6, -0.1]
    assert config.lambda_impulse == 1e-3


def test_dubins_explicit_fields_win():
    config = MissionConfig(plant="dubins", horizon=30.0, lambda_impulse=0.0)
    assert config.horizon == 30.0
    assert config.lambda_impulse == 0.0


@pytest.mark.parametrize(
    "overrides",
    [
        {"loiter_band": (3.0, 2.0)},
        {"t_obs": 250.0},
        {"chi_box": {"lower": [0.0], "upper": [1.0]}},
        {"chi_box": {"lower": [1.0] * 6, "upper": [0.0] * 6}},
        {"goal_radius": 0.0},
        {"unknown_field": 1},
    ],
)
def test_invalid_configs(overrides):
    with pytest.raises(ValidationError):
        MissionConfig(**overrides)


def test_formula_text_overrides_spec():
    config = MissionConfig(formula="F (r <= 0.5)")
    assert build_formula(config, CHANNELS) == Eventually(Predicate(0, 0.5, "<="))
    assert Mission(config).formula == Eventually(Predicate(0, 0.5, "<="))


def test_mission_loads_shipped_configs():
    for name, spec in [("mission1", spec_mission1()), ("mission2", spec_mission2()), ("dubins", spec_dubins())]:
        mission = Mission.from_config(CONFIGS / f"{name}.json")
        assert mission.name == name
        assert mission.formula == spec


# --- exogenous sampling ----------------------------------------------------


def test_sample_chi_statistics():
    box = Box([10.0, 10.0, -3.0, -1.0, -1.0, -1.0], [13.0, 13.0, 3.0, 1.0, 1.0, 1.0])
    chis = sample_chi(box, make_rng(0), 4000)
    values = np.array([c.value for c in chis])
    assert values.shape == (4000, 6)
    assert np.all(values >= box.lower) and np.all(values <= box.upper)
    assert values.mean(axis=0) == pytest.approx(box.center, abs=0.05 * box.width.max())


def test_sample_chi_degenerate_box_and_determinism():
    box = Box([1.0, 2.0], [1.0, 2.0])
    assert {tuple(c.tolist()) for c in sample_chi(box, make_rng(0), 5)} == {(1.0, 2.0)}
    wide = Box([0.0], [1.0])
    assert [c.tolist() for c in sample_chi(wide, make_rng(3), 4)] == [c.tolist() for c in sample_chi(wide, make_rng(3), 4)]


# --- cost ------------------------------------------------------------------


def test_cost_without_impulse_is_negative_smooth_robustness(short_mission_config):
    mission = Mission(short_mission_config.model_copy(update={"lambda_impulse": 0.0}))
    chi = mission.chi_box.center
    report = mission.report(mission.theta0, chi)
    assert report.cost == pytest.approx(-report.smooth_robustness)
    assert mission.cost(mission.theta0.tolist(), chi.tolist()) == pytest.approx(report.cost)


def test_report_is_consistent_with_trace(short_mission_config):
    mission = Mission(short_mission_config)
    chi = mission.chi_box.upper
    report = mission.report(mission.theta0, chi)
    signal = channel_map(report.trace)
    assert report.exact_robustness == robustness(mission.formula, signal)
    assert report.satisfied == (report.exact_robustness > 0)
    assert report.cost == pytest.approx(-report.smooth_robustness + mission.config.lambda_impulse * report.impulse)
    assert mission.exact_robustness(mission.theta0, chi) == report.exact_robustness


def test_mission_objective_gradient(short_mission_config):
    mission = Mission(short_mission_config, smoothing_k=10.0)
    rng = make_rng(8)
    theta = mission.theta0 + 0.01 * rng.normal(size=mission.layout.size)
    chi = mission.chi_box.sample(rng, 1)[0]
    report = check_gradient(lambda th: mission.cost(th, chi.tolist()), theta, step=1e-6, scale_floor=1e-2)
    assert report.passed, report.summary()


def test_mission_objective_gradient_in_chi(short_mission_config):
    mission = Mission(short_mission_config, smoothing_k=10.0)
    chi = mission.chi_box.center + 0.1
    report = check_gradient(lambda c: mission.cost(mission.theta0.tolist(), c), chi, step=1e-6, scale_floor=1e-2)
    assert report.passed, report.summary()


def test_smoothing_error_shrinks_on_nominal_trace():
    mission = Mission.from_config(CONFIGS / "mission1.json")
    trace = mission.trace(mission.theta0.tolist(), mission.chi_box.center.tolist())
    signal = channel_map(trace)
    exact = robustness(mission.formula, signal)
    coarse, fine = (
        abs(robustness_smooth(mission.formula, signal, 0.0, SmoothingConfig(k)) - exact) for k in (100.0, 1000.0)
    )
    assert fine <= coarse


@pytest.mark.slow
@pytest.mark.parametrize("seed", range(10))
def test_mission1_gradients_match_central_differences(seed):
    mission = Mission.from_config(CONFIGS / "mission1.json")
    rng = make_rng(100 + seed)
    theta = mission.theta0 + 0.05 * rng.normal(size=mission.layout.size)
    chi = mission.chi_box.sample(rng, 1)[0]

    in_theta = check_gradient(lambda th: mission.cost(th, chi.tolist()), theta, step=1e-5, tol=1e-4)
    assert in_theta.passed, in_theta.summary()
    in_chi = check_gradient(lambda c: mission.cost(theta.tolist(), c), chi, step=1e-5, tol=1e-4)
    assert in_chi.passed, in_chi.summary()


def test_annealing_keeps_the_formula(short_mission_config):
    mission = Mission(short_mission_config)
    sharper = mission.annealed()
    assert sharper.formula is mission.formula
    assert sharper.smoothing == SmoothingConfig(mission.smoothing.k * short_mission_config.anneal_factor)


def test_theta_descends_on_the_mission(short_mission_config):
    mission = Mission(short_mission_config)
    dataset = [c.value for c in sample_chi(mission.chi_box, make_rng(1), 2)]
    result = minimize_theta(mission, dataset, mission.theta0, short_mission_config.solver)
    assert result.value < result.history[0]


def test_adversary_matches_known_examples(short_mission_config):
    mission = Mission(short_mission_config)
    rng = make_rng(2)
    dataset = [c.value for c in sample_chi(mission.chi_box, rng, 3)]
    costs = [mission.report(mission.theta0, c).cost for c in dataset]
    best = dataset[int(np.argmax(costs))]
    ascent = maximize_chi(mission, mission.theta0, short_mission_config.solver, rng, {"dataset-best": best})
    assert ascent.value >= max(costs) - 1e-9
    assert mission.chi_box.contains(ascent.chi)


# --- saved parameters ------------------------------------------------------


def test_theta_file_round_trip(short_mission_config):
    mission = Mission(short_mission_config)
    saved = mission.theta_file(mission.theta0)
    assert mission.load_theta(saved).tolist() == mission.theta0.tolist()


def test_theta_file_mismatches(short_mission_config):
    mission = Mission(short_mission_config)
    saved = mission.theta_file(mission.theta0)
    with pytest.raises(ConfigError):
        mission.load_theta(saved.model_copy(update={"plant": "dubins"}))
    with pytest.raises(ConfigError):
        mission.load_theta(saved.model_copy(update={"waypoints": 11}))
    with pytest.raises(ConfigError):
        mission.load_theta(saved.model_copy(update={"theta": saved.theta[:-1]}))


def test_load_chi_projects_and_checks_length(short_mission_config):
    mission = Mission(short_mission_config)
    assert mission.load_chi([0.0, 0.0, -5.0, -5.0, -5.0, -5.0]).tolist() == mission.chi_box.lower.tolist()
    with pytest.raises(ConfigError):
        mission.load_chi([0.0] * 3)
