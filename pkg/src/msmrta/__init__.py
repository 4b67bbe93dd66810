"""Multi-stage multi-robot task assignment on 4-connected grids."""
from .baseline import BaselineReport, mrga_assign, run_mrga
from .capability import CapabilityMatrices, missing_cap, reqment_analysis
from .clustering import kmeans, obstacle_filter
from .generate import gen_map, gen_scenario
from .grid import Coord, GridMap, load_map, parse_map
from .pathplan import astar, plan_bundle
from .pipeline import MissionReport, Scenario, load_scenario, plan_mission, run_mission
from .records import Robot, VictimRecord
from .scouting import Scout, scout_mission

__version__ = "0.1.0"

__all__ = [
    "BaselineReport", "CapabilityMatrices", "Coord", "GridMap", "MissionReport", "Robot",
    "Scenario", "Scout", "VictimRecord", "astar", "gen_map", "gen_scenario", "kmeans",
    "load_map", "load_scenario", "missing_cap", "mrga_assign", "obstacle_filter", "parse_map",
    "plan_bundle", "plan_mission", "reqment_analysis", "run_mission", "run_mrga", "scout_mission",
]
