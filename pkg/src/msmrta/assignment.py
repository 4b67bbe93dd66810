"""Staged task assignment.

B2: robots to victim clusters (weighted max matching, ``psi`` trades fully
satisfied victims against raw requirement coverage).
B3: remaining victims to robots by time cost (``beta`` trades success time
against failure time).
B4: leftover (victim, requirement) pairs auctioned to the nearest capable robot.

Victims are addressed by id; matrix rows follow the order of the ``victims``
sequence handed to each stage. Robot ids equal their column in ``P``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .capability import CapabilityMatrices, ReqAnalysisResult
from .clustering import ClusterPlan, Clustering
from .grid import Coord, GridMap, manhattan
from .lsa import solve_linear_assignment
from .pathplan import AStarCounter, astar_cost

INF = math.inf


@dataclass(frozen=True, eq=False)
class ClusterWeights:
    w: np.ndarray        # robots x clusters, requirements coverable
    w_full: np.ndarray   # robots x clusters, victims fully satisfiable
    psi: float = 0.5

    def combined(self) -> np.ndarray:
        return (1.0 - self.psi) * self.w + self.psi * self.w_full


@dataclass(frozen=True, eq=False)
class TimeCostMatrices:
    t_success: np.ndarray   # robots x remaining victims
    t_failure: np.ndarray
    victim_ids: tuple[int, ...]
    beta: float = 0.5


@dataclass(frozen=True)
class ClusterRoute:
    cluster: int
    center: Coord
    route: tuple[tuple[int, Coord], ...]  # (victim id, location) in visiting order

    @property
    def victim_ids(self) -> tuple[int, ...]:
        return tuple(v for v, _ in self.route)


@dataclass
class AssignmentBundle:
    b2: dict[int, ClusterRoute] = field(default_factory=dict)
    b3: list[tuple[int, int]] = field(default_factory=list)
    b4: list[tuple[int, int, int]] = field(default_factory=list)
    v_bar_b2: frozenset[int] = frozenset()
    v_bar_b3: frozenset[int] = frozenset()
    locations: dict[int, Coord] = field(default_factory=dict)

    def b3_targets(self, robot: int) -> list[tuple[int, Coord]]:
        return [(v, self.locations[v]) for r, v in self.b3 if r == robot]

    def b4_targets(self, robot: int) -> list[tuple[int, Coord]]:
        out = []
        for r, v, _ in self.b4:
            if r == robot and v not in {t for t, _ in out}:
                out.append((v, self.locations[v]))
        return out

    def server_of(self, victim: int) -> int | None:
        """Robot holding the victim in B2 or B3."""
        for r, entry in self.b2.items():
            if victim in entry.victim_ids:
                return r
        for r, v in self.b3:
            if v == victim:
                return r
        return None


def _rows(victims) -> dict[int, int]:
    return {v.id: i for i, v in enumerate(victims)}


def coverage_matrix(mats: CapabilityMatrices) -> tuple[np.ndarray, np.ndarray]:
    """``U`` (victim x robot covered counts) and ``S`` (requirements per victim)."""
    return mats.Q @ mats.P, mats.Q.sum(axis=1)


def cluster_weights(plan: ClusterPlan, req: ReqAnalysisResult, mats: CapabilityMatrices,
                    victims, psi: float = 0.5) -> ClusterWeights:
    if not 0.0 <= psi <= 1.0:
        raise ValueError("psi must lie in [0, 1]")
    U, _ = coverage_matrix(mats)
    rows = _rows(victims)
    n, k = mats.n_robots, len(plan.routes)
    w = np.zeros((n, k))
    w_full = np.zeros((n, k))
    for c, route in enumerate(plan.routes):
        for vid in route:
            i = rows[vid]
            for r in range(n):
                w[r, c] += U[i, r]
                if i in req.l_full[r]:
                    w_full[r, c] += 1
    return ClusterWeights(w, w_full, psi)


def clstr_asgn(weights: ClusterWeights, plan: ClusterPlan, robots, clustering: Clustering,
               mats: CapabilityMatrices, victims) -> tuple[dict[int, ClusterRoute], frozenset[int]]:
    """Match robots to clusters maximizing the combined weight.

    Zero-weight pairs never end up matched. With non-negative weights a
    full max-weight matching minus its zero pairs is a max-weight matching
    over the positive pairs, so the solver runs unrestricted and the zeros
    are dropped afterwards.
    """
    combined = weights.combined()
    U, _ = coverage_matrix(mats)
    rows = _rows(victims)
    locations = {v.id: v.location for v in victims}
    pairs = [(r, c) for r, c in solve_linear_assignment(combined, maximize=True)
             if combined[r, c] > 0]
    b2 = {}
    served = set()
    for r, c in pairs:
        route = tuple((v, locations[v]) for v in plan.routes[c] if U[rows[v], r] > 0)
        b2[robots[r].id] = ClusterRoute(c, clustering.centers[c], route)
        served.update(v for v, _ in route)
    v_bar = frozenset(v.id for v in victims) - served
    return b2, v_bar


def _route_history(grid: GridMap, start, col: int, entry: ClusterRoute | None, U, S, rows,
                   t_serve: float, t_attempt: float, counter=None) -> tuple[float, float, Coord]:
    """Success time, failure time and end position after a robot runs its B2 route."""
    pos = start
    success = failure = 0.0
    if entry is None:
        return success, failure, pos
    for goal, vid in [(entry.center, None)] + [(loc, v) for v, loc in entry.route]:
        d = astar_cost(grid, pos, goal, counter)
        if d is not None:
            success += d
            pos = goal
        if vid is not None:
            covered = U[rows[vid], col]
            success += t_serve * covered
            failure += t_attempt * (S[rows[vid]] - covered)
    return success, failure, pos


def perf_analysis(robots, b2: dict[int, ClusterRoute], v_bar, mats: CapabilityMatrices,
                  victims, grid: GridMap, beta: float = 0.5, t_serve: float = 1.0,
                  t_attempt: float = 1.0, counter: AStarCounter | None = None) -> TimeCostMatrices:
    U, S = coverage_matrix(mats)
    rows = _rows(victims)
    by_id = {v.id: v for v in victims}
    remaining = tuple(sorted(v_bar))
    n = len(robots)
    t_success = np.zeros((n, len(remaining)))
    t_failure = np.zeros((n, len(remaining)))
    for ri, robot in enumerate(robots):
        success, failure, end = _route_history(
            grid, robot.start, ri, b2.get(robot.id), U, S, rows, t_serve, t_attempt, counter)
        for j, vid in enumerate(remaining):
            i = rows[vid]
            covered = U[i, ri]
            d = astar_cost(grid, end, by_id[vid].location, counter)
            t_success[ri, j] = INF if d is None else success + d + t_serve * covered
            t_failure[ri, j] = failure + t_attempt * (S[i] - covered)
    return TimeCostMatrices(t_success, t_failure, remaining, beta)


def victim_assign(costs: TimeCostMatrices, mats: CapabilityMatrices, victims,
                  robots) -> tuple[list[tuple[int, int]], frozenset[int]]:
    """Send each remaining victim to the robot with the least blended time cost."""
    beta = costs.beta
    if not 0.0 <= beta <= 1.0:
        raise ValueError("beta must lie in [0, 1]")
    U, _ = coverage_matrix(mats)
    rows = _rows(victims)
    b3, left = [], set()
    for j, vid in enumerate(costs.victim_ids):
        best, best_r = INF, None
        for ri, robot in enumerate(robots):
            ts = costs.t_success[ri, j]
            if U[rows[vid], ri] == 0 or not math.isfinite(ts):
                continue
            cost = (1.0 - beta) * ts + beta * costs.t_failure[ri, j]
            if cost < best:
                best, best_r = cost, robot.id
        if best_r is None:
            left.add(vid)
        else:
            b3.append((best_r, vid))
    return b3, frozenset(left)


def residual_requirements(mats: CapabilityMatrices, victims, robots,
                          bundle: AssignmentBundle) -> list[tuple[int, int]]:
    """(victim id, requirement) pairs not covered by the victim's B2/B3 robot."""
    out = []
    for i, v in enumerate(victims):
        server = bundle.server_of(v.id)
        for j in np.flatnonzero(mats.Q[i]):
            if server is None or not mats.P[j, server]:
                out.append((v.id, int(j)))
    return out


def robot_assign(residual, req: ReqAnalysisResult, robots, victims,
                 bundle: AssignmentBundle) -> tuple[list[tuple[int, int, int]], list[tuple[int, int]]]:
    """Sealed-bid auction: each open requirement goes to the closest capable robot.

    Returns the B4 list and the pairs nobody could bid on.
    """
    rows = _rows(victims)
    by_id = {v.id: v for v in victims}
    b4, unserved = [], []
    for vid, j in residual:
        server = bundle.server_of(vid)
        if server is not None and rows[vid] in req.l_full[server]:
            continue
        bidders = req.l_potential[rows[vid]][j]
        if not bidders:
            unserved.append((vid, j))
            continue
        loc = by_id[vid].location
        # a bid is the negated distance; highest bid = closest robot, lowest index on ties
        winner = min(bidders, key=lambda ri: (manhattan(robots[ri].start, loc), ri))
        b4.append((robots[winner].id, vid, j))
    return b4, unserved
