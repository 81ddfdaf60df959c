"""Mission definitions."""
from stlplan.missions.mission import Mission, MissionReport, build_formula, load_config, sample_chi
from stlplan.missions.specs import (
    CHANNELS,
    loiter,
    reach,
    spec_dubins,
    spec_mission1,
    spec_mission2,
    speed_limit,
)

__all__ = [
    "Mission",
    "MissionReport",
    "build_formula",
    "load_config",
    "sample_chi",
    "CHANNELS",
    "reach",
    "speed_limit",
    "loiter",
    "spec_mission1",
    "spec_mission2",
    "spec_dubins",
]
