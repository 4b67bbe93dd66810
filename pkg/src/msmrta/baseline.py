"""Repeated-planning greedy baseline (MRGA style).

Every round recomputes an A* path from each robot's current position to
every unassigned victim it can help, commits the single cheapest
(robot, victim) pair and moves that robot there. Nothing is cached between
rounds, so the A* call count grows as N * M^2 on fully compatible fleets.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from .pathplan import AStarCounter, astar_distance


@dataclass
class BaselineReport:
    assignments: list[tuple[int, int]]
    planning_time_us: int
    astar_calls: int
    total_travel_cost: int = 0
    skipped: list[int] = field(default_factory=list)       # no capable robot
    unreachable: list[int] = field(default_factory=list)   # capable robots cannot reach


def mrga_assign(grid, robots, found, counter: AStarCounter | None = None) -> BaselineReport:
    counter = counter if counter is not None else AStarCounter()
    if not found:
        return BaselineReport([], 0, 0)
    Q = np.array([v.requirements for v in found], dtype=np.int64)
    P = np.array([r.capabilities for r in robots], dtype=np.int64).T
    U = (Q @ P).tolist()
    pos = [r.start for r in robots]
    open_victims = [i for i in range(len(found)) if any(U[i])]
    skipped = [found[i].id for i in range(len(found)) if not any(U[i])]
    assignments, travel = [], 0
    while open_victims:
        best = None
        for ri in range(len(robots)):
            for i in open_victims:
                if not U[i][ri]:
                    continue
                counter.calls += 1
                cost = astar_distance(grid, pos[ri], found[i].location)
                if cost is None:
                    continue
                key = (cost, robots[ri].id, found[i].id)
                if best is None or key < best[0]:
                    best = (key, ri, i)
        if best is None:
            break
        (cost, _, _), ri, i = best
        assignments.append((robots[ri].id, found[i].id))
        travel += cost
        pos[ri] = found[i].location
        open_victims.remove(i)
    return BaselineReport(
        assignments=assignments,
        planning_time_us=0,
        astar_calls=counter.calls,
        total_travel_cost=travel,
        skipped=skipped,
        unreachable=sorted(found[i].id for i in open_victims),
    )


def run_mrga(scenario, found) -> BaselineReport:
    """Timed baseline run on the scenario's map and robots."""
    t0 = time.perf_counter_ns()
    report = mrga_assign(scenario.grid, scenario.robots, found)
    report.planning_time_us = max(1, (time.perf_counter_ns() - t0) // 1000)
    return report
