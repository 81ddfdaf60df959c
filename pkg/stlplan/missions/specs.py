"""Mission specifications over the channels (r, v).

r is the distance to the target and v the speed; see `stlplan.dynamics.channel_map`.
"""
from stlplan.stl.formula import Always, And, Eventually, Formula, Predicate, Until
from stlplan.stl.signal import Interval

CHANNELS = ("r", "v")
R, V = 0, 1


def reach(goal_radius: float = 0.1) -> Formula:
    """F (r <= goal_radius)."""
    return Eventually(Predicate(R, goal_radius, "<=", name="r"))


def speed_limit(keep_out_radius: float = 2.0, speed: float = 0.1) -> Formula:
    """Stay at least `keep_out_radius` away until the speed stays below `speed` for good."""
    return Until(
        Interval(),
        Predicate(R, keep_out_radius, ">=", name="r"),
        Always(Predicate(V, speed, "<=", name="v")),
    )


def loiter(band: tuple[float, float] = (2.0, 3.0), t_obs: float = 10.0) -> Formula:
    """F G[0, t_obs] (band[0] <= r <= band[1])."""
    lo, hi = band
    in_band = And(Predicate(R, lo, ">=", name="r"), Predicate(R, hi, "<=", name="r"))
    return Eventually(Always(in_band, Interval(0.0, t_obs)))


def spec_mission1(goal_radius: float = 0.1, keep_out_radius: float = 2.0, speed: float = 0.1) -> Formula:
    return And(reach(goal_radius), speed_limit(keep_out_radius, speed))


def spec_mission2(
    goal_radius: float = 0.1,
    keep_out_radius: float = 2.0,
    speed: float = 0.1,
    band: tuple[float, float] = (2.0, 3.0),
    t_obs: float = 10.0,
) -> Formula:
    return And(spec_mission1(goal_radius, keep_out_radius, speed), loiter(band, t_obs))


def spec_dubins(goal_radius: float = 0.1, band: tuple[float, float] = (0.5, 1.0), t_obs: float = 10.0) -> Formula:
    """Reach and loiter, without the speed limit."""
    return And(reach(goal_radius), loiter(band, t_obs))
