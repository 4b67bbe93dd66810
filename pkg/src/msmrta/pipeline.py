"""End-to-end mission: scouting, requirement analysis, staged assignment, A* paths."""
from __future__ import annotations

import gc
import json
import statistics
import time
from dataclasses import dataclass, field
from pathlib import Path

from .assignment import (
    AssignmentBundle,
    cluster_weights,
    clstr_asgn,
    perf_analysis,
    residual_requirements,
    robot_assign,
    victim_assign,
)
from .capability import CapabilityMatrices, ReqAnalysisResult, missing_cap, reqment_analysis
from .clustering import ClusterPlan, Clustering, kmeans, obstacle_filter
from .grid import GridMap, load_map, parse_map
from .pathplan import AStarCounter, RobotPlan, plan_bundle
from .records import Robot, VictimRecord
from .scouting import Scout, ScoutResult, scout_mission


class ScenarioError(ValueError):
    pass


@dataclass
class ScoutConfig:
    count: int = 2
    starts: list = field(default_factory=list)
    vfd: int = 3
    step_limit: int = 10_000

    def scouts(self) -> list[Scout]:
        return [Scout(i, self.starts[i], self.vfd) for i in range(self.count)]


@dataclass
class Scenario:
    grid: GridMap
    robots: list[Robot]
    victims: list[VictimRecord]
    scouts: ScoutConfig
    psi: float = 0.5
    beta: float = 0.5
    seed: int = 0
    t_serve: float = 1.0
    t_attempt: float = 1.0
    map_path: str | None = None

    def __post_init__(self):
        self.validate()

    @property
    def n_req(self) -> int:
        vecs = [r.capabilities for r in self.robots] + [v.requirements for v in self.victims]
        return len(vecs[0]) if vecs else 0

    def validate(self) -> None:
        if [r.id for r in self.robots] != list(range(len(self.robots))):
            raise ScenarioError("robot ids must be 0..N-1 in order")
        if [v.id for v in self.victims] != list(range(len(self.victims))):
            raise ScenarioError("victim ids must be 0..M-1 in order")
        if not self.robots:
            raise ScenarioError("scenario needs at least one robot")
        lengths = {len(r.capabilities) for r in self.robots} | {len(v.requirements) for v in self.victims}
        if len(lengths) != 1:
            raise ScenarioError(f"capability/requirement vectors differ in length: {sorted(lengths)}")
        cells = [("robot", r.id, r.start) for r in self.robots]
        cells += [("victim", v.id, v.location) for v in self.victims]
        cells += [("scout", i, s) for i, s in enumerate(self.scouts.starts)]
        for kind, i, cell in cells:
            if not self.grid.is_free(cell):
                raise ScenarioError(f"{kind} {i} is placed on a blocked cell {tuple(cell)}")
        if len(self.scouts.starts) != self.scouts.count or self.scouts.count < 1:
            raise ScenarioError("scouts.starts must list one start per scout")
        for name in ("psi", "beta"):
            if not 0.0 <= getattr(self, name) <= 1.0:
                raise ScenarioError(f"{name} must lie in [0, 1]")

    def to_dict(self) -> dict:
        d = {
            "robots": [{"id": r.id, "start": list(r.start), "p": list(r.capabilities)} for r in self.robots],
            "victims": [{"id": v.id, "location": list(v.location), "q": list(v.requirements)}
                        for v in self.victims],
            "scouts": {"count": self.scouts.count, "starts": [list(s) for s in self.scouts.starts],
                       "vfd": self.scouts.vfd, "step_limit": self.scouts.step_limit},
            "psi": self.psi,
            "beta": self.beta,
            "seed": self.seed,
            "t_serve": self.t_serve,
            "t_attempt": self.t_attempt,
        }
        if self.map_path is not None:
            d["map_path"] = self.map_path
        else:
            d["map"] = self.grid.to_text().splitlines()
        return d


def scenario_from_dict(data: dict, base_dir=None) -> Scenario:
    """Build a Scenario from its JSON form. ``map_path`` resolves against ``base_dir``."""
    if "map_path" in data:
        path = Path(data["map_path"])
        if base_dir is not None and not path.is_absolute():
            path = Path(base_dir) / path
        grid = load_map(path)
    elif "map" in data:
        grid = parse_map("\n".join(data["map"]) + "\n")
    else:
        raise ScenarioError("scenario needs map_path or map")
    sc = data.get("scouts", {})
    try:
        robots = [Robot(r["id"], tuple(r["start"]), tuple(r["p"])) for r in data["robots"]]
        victims = [VictimRecord(v["id"], tuple(v["location"]), tuple(v["q"])) for v in data["victims"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise ScenarioError(f"malformed robot/victim entry: {exc}") from exc
    starts = [tuple(s) for s in sc.get("starts", [r.start for r in robots[:sc.get("count", 1)]])]
    scouts = ScoutConfig(sc.get("count", len(starts)), starts, sc.get("vfd", 3), sc.get("step_limit", 10_000))
    return Scenario(
        grid=grid, robots=robots, victims=victims, scouts=scouts,
        psi=float(data.get("psi", 0.5)), beta=float(data.get("beta", 0.5)),
        seed=int(data.get("seed", 0)),
        t_serve=float(data.get("t_serve", 1.0)), t_attempt=float(data.get("t_attempt", 1.0)),
        map_path=data.get("map_path"),
    )


def load_scenario(path) -> Scenario:
    path = Path(path)
    return scenario_from_dict(json.loads(path.read_text()), base_dir=path.parent)


def save_scenario(scenario: Scenario, path) -> None:
    Path(path).write_text(json.dumps(scenario.to_dict(), indent=2, sort_keys=True) + "\n")


@dataclass
class PlanningResult:
    """Everything produced by the assignment and path-planning stages."""

    victims: list[VictimRecord]
    mats: CapabilityMatrices | None = None
    req: ReqAnalysisResult | None = None
    unavailable: list[tuple[int, int]] = field(default_factory=list)
    clustering: Clustering | None = None
    plan: ClusterPlan | None = None
    bundle: AssignmentBundle = field(default_factory=AssignmentBundle)
    unserved: list[tuple[int, int]] = field(default_factory=list)
    paths: list[RobotPlan] = field(default_factory=list)
    astar_calls: int = 0

    @property
    def total_travel_cost(self) -> int:
        return sum(p.cost for p in self.paths)

    def victim_status(self) -> dict[int, str]:
        """Which stage took each victim: b2, b3, b4 or unavailable."""
        status = {}
        b4_victims = {v for _, v, _ in self.bundle.b4}
        for v in self.victims:
            server = self.bundle.server_of(v.id)
            if server is not None:
                status[v.id] = "b2" if server in self.bundle.b2 and v.id in self.bundle.b2[server].victim_ids else "b3"
            elif v.id in b4_victims:
                status[v.id] = "b4"
            else:
                status[v.id] = "unavailable"
        return status

    def coverage_audit(self, robots) -> list[tuple[int, int, str]]:
        """Every (victim, requirement) pair with the way it is handled.

        Labels are ``b2``/``b3``/``b4`` or ``unavailable``. A pair handled
        twice or not at all shows up as ``duplicate``/``missing``.
        """
        out = []
        unavailable = set(self.unavailable)
        b4 = {}
        for r, v, j in self.bundle.b4:
            b4.setdefault((v, j), []).append(r)
        status = self.victim_status()
        for v in self.victims:
            server = self.bundle.server_of(v.id)
            for j, need in enumerate(v.requirements):
                if not need:
                    continue
                labels = []
                if server is not None and robots[server].capabilities[j]:
                    labels.append(status[v.id])
                for r in b4.get((v.id, j), []):
                    if robots[r].capabilities[j]:
                        labels.append("b4")
                if (v.id, j) in unavailable:
                    labels.append("unavailable")
                label = labels[0] if len(labels) == 1 else ("missing" if not labels else "duplicate")
                out.append((v.id, j, label))
        return out


def plan_mission(scenario: Scenario, found: list[VictimRecord],
                 counter: AStarCounter | None = None) -> PlanningResult:
    """Assignment and path-planning stages on the victims the scouts found."""
    counter = counter if counter is not None else AStarCounter()
    grid, robots = scenario.grid, scenario.robots
    result = PlanningResult(victims=list(found))
    if not found:
        return result
    mats = CapabilityMatrices.from_vectors([v.requirements for v in found],
                                           [r.capabilities for r in robots])
    req, _ = reqment_analysis(mats)
    unavailable = [(found[i].id, j) for i, j in missing_cap(mats, req)]
    k = min(len(robots), len(found))
    clustering = kmeans(found, k, seed=scenario.seed, grid=grid)
    plan = obstacle_filter(grid, clustering, found)
    weights = cluster_weights(plan, req, mats, found, psi=scenario.psi)
    b2, v_bar2 = clstr_asgn(weights, plan, robots, clustering, mats, found)
    costs = perf_analysis(robots, b2, v_bar2, mats, found, grid, beta=scenario.beta,
                          t_serve=scenario.t_serve, t_attempt=scenario.t_attempt, counter=counter)
    b3, v_bar3 = victim_assign(costs, mats, found, robots)
    bundle = AssignmentBundle(b2=b2, b3=b3, v_bar_b2=v_bar2, v_bar_b3=v_bar3,
                              locations={v.id: v.location for v in found})
    residual = residual_requirements(mats, found, robots, bundle)
    bundle.b4, unserved = robot_assign(residual, req, robots, found, bundle)
    paths = plan_bundle(grid, bundle, robots, counter)
    result.mats, result.req, result.unavailable = mats, req, unavailable
    result.clustering, result.plan, result.bundle = clustering, plan, bundle
    result.unserved, result.paths = unserved, paths
    result.astar_calls = counter.calls
    return result


@dataclass
class MissionReport:
    scouting: ScoutResult
    planning: PlanningResult
    planning_time_us: int

    @property
    def partial(self) -> bool:
        return self.scouting.incomplete

    @property
    def total_travel_cost(self) -> int:
        return self.planning.total_travel_cost

    def to_dict(self) -> dict:
        p = self.planning
        ids = [v.id for v in p.victims]

        def to_ids(rows):
            return [ids[i] for i in rows]

        d = {
            "partial": self.partial,
            "scouting": {"steps_taken": self.scouting.steps_taken, "complete": self.scouting.complete,
                         "found": ids},
            "planning_time_us": self.planning_time_us,
            "total_travel_cost": self.total_travel_cost,
            "astar_calls": p.astar_calls,
            "l_unavailable": [list(x) for x in p.unavailable],
            "unserved": [list(x) for x in p.unserved],
        }
        if p.req is not None:
            d["l_full"] = [to_ids(x) for x in p.req.l_full]
            d["l_partial"] = [to_ids(x) for x in p.req.l_partial]
            d["l_potential"] = {str(ids[i]): [list(x) for x in row] for i, row in enumerate(p.req.l_potential)}
        if p.clustering is not None:
            d["clusters"] = [
                {"members": p.clustering.members(c), "mean": list(p.clustering.means[c]),
                 "center": list(p.clustering.centers[c]), "route": list(p.plan.routes[c])}
                for c in range(p.clustering.k)
            ]
            d["excluded"] = sorted(p.plan.excluded)
        b = p.bundle
        d["b2"] = {str(r): {"cluster": e.cluster, "center": list(e.center), "route": list(e.victim_ids)}
                   for r, e in sorted(b.b2.items())}
        d["b3"] = [list(x) for x in b.b3]
        d["b4"] = [list(x) for x in b.b4]
        d["v_bar_b2"] = sorted(b.v_bar_b2)
        d["v_bar_b3"] = sorted(b.v_bar_b3)
        d["victim_status"] = {str(k): v for k, v in sorted(p.victim_status().items())}
        d["paths"] = [
            {"robot": plan.robot, "cost": plan.cost, "gaps": plan.gaps,
             "legs": [{"kind": leg.kind, "victim": leg.victim, "start": list(leg.start), "goal": list(leg.goal),
                       "waypoints": None if leg.path is None else [list(c) for c in leg.path.waypoints]}
                      for leg in plan.legs]}
            for plan in p.paths
        ]
        return d

    def to_json(self, include_timing: bool = True) -> str:
        d = self.to_dict()
        if not include_timing:
            d.pop("planning_time_us")
        return json.dumps(d, indent=1, sort_keys=True) + "\n"


def run_scouting(scenario: Scenario) -> ScoutResult:
    return scout_mission(scenario.grid, scenario.scouts.scouts(), scenario.victims,
                         seed=scenario.seed, step_limit=scenario.scouts.step_limit)


def run_mission(scenario: Scenario) -> MissionReport:
    scouting = run_scouting(scenario)
    t0 = time.perf_counter_ns()
    planning = plan_mission(scenario, scouting.found)
    elapsed = (time.perf_counter_ns() - t0) // 1000
    return MissionReport(scouting, planning, int(elapsed))


@dataclass
class TimingStats:
    samples_us: list[int]

    @property
    def min(self) -> int:
        return min(self.samples_us)

    @property
    def median(self) -> float:
        return statistics.median(self.samples_us)

    @property
    def mean(self) -> float:
        return statistics.fmean(self.samples_us)


def time_call(fn, repetitions: int):
    """Run ``fn`` repeatedly; returns (TimingStats in microseconds, last result)."""
    if repetitions < 1:
        raise ValueError("repetitions must be >= 1")
    samples, out = [], None
    gc_was_enabled = gc.isenabled()
    gc.disable()
    try:
        for _ in range(repetitions):
            t0 = time.perf_counter_ns()
            out = fn()
            samples.append(max(1, (time.perf_counter_ns() - t0) // 1000))
    finally:
        if gc_was_enabled:
            gc.enable()
    return TimingStats(samples), out


def measure_planning_time(scenario: Scenario, repetitions: int = 5,
                          found: list[VictimRecord] | None = None) -> tuple[TimingStats, PlanningResult]:
    """Time the assignment + path-planning stages only (scouting runs once, untimed)."""
    if found is None:
        found = run_scouting(scenario).found
    return time_call(lambda: plan_mission(scenario, found), repetitions)
