import math

import numpy as np
import pytest
from scipy.integrate import solve_ivp

from stlplan.autodiff import check_gradient, grad
from stlplan.core.errors import ConfigError, DomainError, NumericError, SimulationDivergedError
from stlplan.dynamics import (
    Box,
    CwhParams,
    CwhPlant,
    DubinsParams,
    DubinsPlant,
    Exogenous,
    Plan,
    PlanLayout,
    Plant,
    SimGrid,
    Trace,
    channel_map,
    cwh_derivative,
    cwh_state_transition,
    dubins_derivative,
    initial_plan,
    make_plant,
    rk4_step,
    simulate,
    total_impulse,
    tracking_control,
    waypoint_schedule,
)
from stlplan.stl import Signal

PARAMS = CwhParams()
N = math.sqrt(3.986e14 / 353000.0**3)


def zero_plan(plant, horizon=200.0):
    return Plan.zeros(plant, waypoint_schedule(horizon, 11))


def constant_controls_trace(plant, control, steps=100, dt=2.0):
    times = np.arange(steps + 1) * dt
    states = Signal(times, np.zeros((steps + 1, plant.state_dim)))
    return Trace(states, Signal(times, np.tile(control, (steps + 1, 1))), plant, dt)


# --- plant equations -------------------------------------------------------


def test_mean_motion():
    assert PARAMS.n == pytest.approx(N, rel=1e-15)


def test_cwh_origin_is_an_equilibrium():
    assert cwh_derivative([0.0] * 6, [0.0] * 3, PARAMS) == [0.0] * 6


def test_cwh_radial_offset():
    d = cwh_derivative([1.0, 0, 0, 0, 0, 0], [0.0] * 3, PARAMS)
    assert d[3] == pytest.approx(3 * N * N, rel=1e-12)
    assert d[4] == 0.0


def test_cwh_thrust_over_mass():
    d = cwh_derivative([0.0] * 6, [0.0, 500.0, 0.0], PARAMS)
    assert d[4] == 1.0


@pytest.mark.parametrize(
    "state, control, expected",
    [
        ([0.0, 0.0, 0.0], [1.0, 0.0], [1.0, 0.0, 0.0]),
        ([0.0, 0.0, math.pi / 2], [2.0, 0.0], [0.0, 2.0, 0.0]),
        ([0.0, 0.0, 0.3], [0.0, 1.0], [0.0, 0.0, 1.0]),
    ],
)
def test_dubins_derivative(state, control, expected):
    assert dubins_derivative(state, control) == pytest.approx(expected, abs=1e-12)


def test_dubins_saturates_speed_only():
    plant = DubinsPlant()
    assert plant.saturate([1.0, 3.0]) == [0.22, 3.0]
    assert plant.saturate([-0.5, -3.0]) == [0.0, -3.0]


def test_make_plant():
    assert isinstance(make_plant("cwh"), CwhPlant)
    assert make_plant("dubins", DubinsParams(v_max=1.0)).params.v_max == 1.0
    with pytest.raises(ConfigError):
        make_plant("quadrotor")


# --- rollout ---------------------------------------------------------------


def test_zero_plan_at_origin_stays_at_origin():
    plant = CwhPlant()
    trace = simulate(plant, zero_plan(plant), [0.0] * 6)
    assert len(trace.states) == 101
    assert np.all(trace.to_array()[:, 1:] == 0.0)


def test_unforced_cwh_matches_closed_form():
    plant = CwhPlant()
    grid = SimGrid()
    x0 = np.array([10.0, 0, 0, 0, 0, 0])
    trace = simulate(plant, zero_plan(plant), x0.tolist(), grid)
    expected = np.array([cwh_state_transition(N, t) @ x0 for t in grid.times])
    assert trace.states.values() == pytest.approx(expected, abs=1e-3)


def test_unforced_cwh_matches_fine_integration():
    plant = CwhPlant()
    grid = SimGrid()
    x0 = [13.0, 13.0, 3.0, 1.0, 1.0, 1.0]
    trace = simulate(plant, zero_plan(plant), x0, grid)
    sol = solve_ivp(
        lambda t, x: cwh_derivative(x, [0.0, 0.0, 0.0], PARAMS),
        (0.0, grid.horizon),
        x0,
        t_eval=grid.times,
        rtol=1e-11,
        atol=1e-11,
        max_step=1.0,
    )
    assert sol.success
    assert trace.states.values() == pytest.approx(sol.y.T, abs=1e-3)


def test_rk4_is_fourth_order():
    x0 = [10.0, 0.0, 1.0, 0.1, 0.2, 0.0]
    exact = cwh_state_transition(N, 4.0) @ np.array(x0)
    f = lambda x, u: cwh_derivative(x, u, PARAMS)
    coarse = np.abs(np.array(rk4_step(f, x0, [0.0] * 3, 4.0, 1)) - exact).max()
    fine = np.abs(np.array(rk4_step(f, x0, [0.0] * 3, 4.0, 2)) - exact).max()
    assert coarse / fine >= 8.0


def test_dubins_straight_line_is_exact():
    plant = DubinsPlant(DubinsParams(v_max=2.0))
    times = waypoint_schedule(10.0, 2)
    plan = Plan(times, [[0.0, 0.0, 0.0]] * 2, [[1.0, 0.0]] * 2, [[0.0] * 3, [0.0] * 3])
    grid = SimGrid(dt=0.5, horizon=10.0, substeps=4)
    trace = simulate(plant, plan, [0.0, 0.0, 0.0], grid)
    assert trace.states.column(0) == pytest.approx(grid.times.tolist(), abs=1e-12)
    assert trace.states.column(1) == pytest.approx([0.0] * len(grid.times), abs=1e-12)


def test_dubins_speed_is_clamped_in_rollout():
    plant = DubinsPlant()
    times = waypoint_schedule(10.0, 2)
    plan = Plan(times, [[0.0, 0.0, 0.0]] * 2, [[2.0, 0.0]] * 2, [[0.0] * 3, [0.0] * 3])
    trace = simulate(plant, plan, [0.0, 0.0, 0.0], SimGrid(dt=1.0, horizon=10.0))
    assert trace.states.column(0)[-1] == pytest.approx(2.2)
    assert set(trace.controls.column(0)) == {0.22}


def test_exogenous_initial_state():
    plant = CwhPlant()
    box = Box([0.0] * 6, [1.0] * 6)
    trace = simulate(plant, zero_plan(plant), Exogenous([2.0, 0.5, 0, 0, 0, 0], box), SimGrid(dt=2, horizon=4))
    assert trace.states.values()[0].tolist() == [1.0, 0.5, 0, 0, 0, 0]


def test_rollout_is_differentiable_in_the_initial_state():
    plant = CwhPlant()
    layout = PlanLayout(plant, waypoint_schedule(20.0, 3))
    plan = initial_plan(plant, layout.waypoint_times, [10.0, 10.0, 0, 0, 0, 0])
    grid = SimGrid(dt=2.0, horizon=20.0, substeps=2)

    def final_radius(chi):
        return channel_map(simulate(plant, plan, chi, grid)).column(0)[-1]

    report = check_gradient(final_radius, [10.0, 11.0, 0.5, 0.1, -0.1, 0.0], tol=1e-4)
    assert report.passed, report.summary()


class _Exploding(Plant):
    kind = "exploding"
    state_names = ("x",)
    control_names = ("u",)

    def derivative(self, state, control):
        return [state[0] * state[0]]


def test_divergence_names_the_step():
    plant = _Exploding()
    with pytest.raises(SimulationDivergedError) as info:
        simulate(plant, Plan.zeros(plant, np.array([0.0, 1.0])), [1e200], SimGrid(dt=1.0, horizon=4.0))
    assert info.value.step == 1
    assert isinstance(info.value, NumericError)


def test_divergence_on_a_tape_is_wrapped():
    plant = _Exploding()
    plan = Plan.zeros(plant, np.array([0.0, 1.0]))
    with pytest.raises(SimulationDivergedError):
        grad(lambda x: simulate(plant, plan, x, SimGrid(dt=1.0, horizon=4.0)).states.column(0)[-1], [1e200])


def test_grid_validation():
    assert SimGrid(dt=0.5, horizon=60.0).steps == 120
    assert SimGrid().times[-1] == 200.0
    with pytest.raises(DomainError):
        SimGrid(dt=3.0, horizon=200.0)
    with pytest.raises(DomainError):
        SimGrid(dt=2.0, horizon=200.0, substeps=0)


def test_wrong_initial_state_dimension():
    plant = CwhPlant()
    with pytest.raises(DomainError):
        simulate(plant, zero_plan(plant), [0.0] * 3)


def test_trace_csv(tmp_path):
    plant = DubinsPlant()
    trace = constant_controls_trace(plant, [0.1, 0.0], steps=3, dt=0.5)
    path = trace.to_csv(tmp_path / "trace.csv")
    lines = path.read_text().splitlines()
    assert lines[0] == "t,x,y,heading,speed,turn_rate"
    assert len(lines) == 5


# --- channels and impulse --------------------------------------------------


def test_channel_map_three_four_five():
    plant = CwhPlant()
    trace = Trace(Signal([0.0], [[3.0, 4.0, 0, 0, 0, 0]]), Signal([0.0], [[0.0] * 3]), plant, 2.0)
    r, v = channel_map(trace).values()[0]
    assert r == pytest.approx(5.0, abs=1e-6)
    assert v <= 1.1e-6


def test_channel_gradient_is_finite_at_origin():
    plant = CwhPlant()
    value, g = grad(lambda x: plant.channels(x, [0.0] * 3)[0], [0.0] * 6)
    assert value <= 1.1e-6
    assert np.all(np.isfinite(g))


def test_channels_match_direct_norms(rng):
    plant = CwhPlant()
    states = rng.uniform(-20, 20, size=(30, 6))
    times = np.arange(30) * 2.0
    trace = Trace(Signal(times, states), Signal(times, np.zeros((30, 3))), plant, 2.0)
    channels = channel_map(trace).values()
    direct = np.column_stack([np.linalg.norm(states[:, :3], axis=1), np.linalg.norm(states[:, 3:], axis=1)])
    mask = direct >= 1.0
    assert channels[mask] == pytest.approx(direct[mask], abs=1e-9)


def test_dubins_channels_are_distance_and_speed():
    plant = DubinsPlant()
    assert plant.channels([0.6, 0.8, 1.0], [0.15, 0.3]) == pytest.approx([1.0, 0.15])


def test_impulse_of_zero_controls_is_tiny():
    trace = constant_controls_trace(CwhPlant(), [0.0, 0.0, 0.0])
    assert 0.0 < total_impulse(trace) < 1e-3


def test_impulse_of_constant_thrust():
    trace = constant_controls_trace(CwhPlant(), [1.0, 0.0, 0.0])
    assert total_impulse(trace) == pytest.approx(200.0, abs=1e-3)
    assert total_impulse(trace, norm="l2") == pytest.approx(200.0, abs=1e-3)


def test_impulse_matches_quadrature(rng):
    plant = CwhPlant()
    controls = rng.normal(0.0, 5.0, size=(101, 3))
    times = np.arange(101) * 2.0
    trace = Trace(Signal(times, np.zeros((101, 6))), Signal(times, controls), plant, 2.0)
    l1 = np.abs(controls[:-1]).sum() * 2.0
    l2 = np.linalg.norm(controls[:-1], axis=1).sum() * 2.0
    assert total_impulse(trace) == pytest.approx(l1, rel=1e-3)
    assert total_impulse(trace, norm="l2") == pytest.approx(l2, rel=1e-3)
    with pytest.raises(ConfigError):
        total_impulse(trace, norm="linf")


# --- plans -----------------------------------------------------------------


def test_layout_size_for_default_schedule():
    layout = PlanLayout(CwhPlant(), waypoint_schedule(200.0, 11))
    assert layout.size == 117
    assert [b.stop - b.start for b in layout.blocks().values()] == [66, 33, 18]
    assert PlanLayout(DubinsPlant(), waypoint_schedule(60.0, 11)).size == 33 + 22 + 6


def test_layout_flatten_unflatten(rng):
    plant = CwhPlant()
    layout = PlanLayout(plant, waypoint_schedule(200.0, 11))
    theta = rng.normal(size=layout.size)
    again = layout.flatten(layout.unflatten(theta.tolist()))
    assert again == pytest.approx(theta, rel=1e-12)
    with pytest.raises(ConfigError):
        layout.unflatten(theta[:-1].tolist())


def test_layout_scales_to_unit_coordinates():
    plant = CwhPlant()
    layout = PlanLayout(plant, waypoint_schedule(200.0, 11))
    plan = initial_plan(plant, layout.waypoint_times, [11.5, 11.5, 0, 0, 0, 0])
    theta = layout.flatten(plan)
    assert np.abs(theta).max() < 20.0
    assert theta[layout.blocks()["gains"]][0] == pytest.approx(CwhPlant.KP)


def test_plan_reference_interpolates_and_holds():
    plant = DubinsPlant()
    plan = Plan(np.array([0.0, 10.0]), [[0.0, 0.0, 0.0], [1.0, 2.0, 0.5]], [[0.1, 0.0], [0.2, 0.0]], [[0.0] * 3] * 2)
    x_ref, u_ff = plan.reference(5.0)
    assert x_ref == pytest.approx([0.5, 1.0, 0.25])
    assert u_ff == pytest.approx([0.15, 0.0])
    assert plan.reference(20.0)[0] == [1.0, 2.0, 0.5]


def test_tracking_control():
    plant = CwhPlant()
    gains = np.arange(18, dtype=float).reshape(3, 6).tolist()
    ref = [1.0, 2.0, 3.0, 0.0, 0.0, 0.0]
    plan = Plan(np.array([0.0, 10.0]), [ref, ref], [[5.0, 6.0, 7.0]] * 2, gains)
    assert tracking_control(plan, ref, 3.0) == [5.0, 6.0, 7.0]

    offset = list(ref)
    offset[1] -= 1.0
    u = tracking_control(plan, offset, 3.0)
    assert u == pytest.approx([5.0 + gains[0][1], 6.0 + gains[1][1], 7.0 + gains[2][1]])

    open_loop = Plan(np.array([0.0, 10.0]), [ref, ref], [[5.0, 6.0, 7.0]] * 2, [[0.0] * 6] * 3)
    assert tracking_control(open_loop, [0.0] * 6, 3.0) == [5.0, 6.0, 7.0]


def test_tracking_control_differentiates_through_gains():
    plant = CwhPlant()
    layout = PlanLayout(plant, np.array([0.0, 10.0]))
    plan = initial_plan(plant, layout.waypoint_times, [10.0, 0, 0, 0, 0, 0])
    theta = layout.flatten(plan)

    value, g = grad(lambda th: tracking_control(layout.unflatten(th), [11.0, 0, 0, 0, 0, 0], 0.0)[0], theta)
    assert isinstance(value, float)
    kp_x = layout.blocks()["gains"].start
    # du_x / d(theta of K[0][0]) = (x_ref - x) * gain unit
    assert g[kp_x] == pytest.approx(-1.0 * plant.gain_scale())


def test_initial_plan_goes_straight_to_the_origin():
    plant = CwhPlant()
    times = waypoint_schedule(200.0, 11)
    plan = initial_plan(plant, times, [12.0, 9.0, 0.0, 0.5, 0.5, 0.5])
    assert plan.states[0][:3] == [12.0, 9.0, 0.0]
    assert plan.states[-1] == pytest.approx([0.0] * 6, abs=1e-12)
    cruise = -np.array([12.0, 9.0, 0.0]) / 180.0
    assert plan.states[1][3:] == pytest.approx(cruise.tolist())


def test_dubins_initial_plan_heads_along_the_approach():
    plant = DubinsPlant()
    plan = initial_plan(plant, waypoint_schedule(60.0, 11), [-1.5, -1.5, 0.0])
    assert plan.states[0][2] == pytest.approx(math.pi / 4)
    assert plan.feedforward[0][0] == pytest.approx(math.hypot(1.5, 1.5) / 54.0)
    assert plan.feedforward[-1] == [0.0, 0.0]


# --- exogenous box ---------------------------------------------------------


def test_box_projection_and_sampling(rng):
    box = Box([0.0, -1.0], [1.0, 1.0])
    assert box.project([2.0, -3.0]).tolist() == [1.0, -1.0]
    samples = box.sample(rng, 500)
    assert samples.shape == (500, 2)
    assert all(box.contains(s) for s in samples)
    assert box.center.tolist() == [0.5, 0.0]


def test_box_validation():
    with pytest.raises(ConfigError):
        Box([1.0], [0.0])
    with pytest.raises(ConfigError):
        Box([0.0, 0.0], [1.0])
    with pytest.raises(ConfigError):
        Exogenous([0.0], Box([0.0, 0.0], [1.0, 1.0]))


def test_impulse_is_differentiable_in_the_initial_state():
    plant = CwhPlant()
    _, g = grad(
        lambda x: total_impulse(simulate(plant, initial_plan(plant, waypoint_schedule(8.0, 2), [5.0, 0, 0, 0, 0, 0]), x, SimGrid(2.0, 8.0, 1))),
        [5.0, 1.0, 0.0, 0.0, 0.0, 0.0],
    )
    assert np.all(np.isfinite(g))
