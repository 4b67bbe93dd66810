"""A* on the 4-connected grid and per-robot leg chaining."""
from __future__ import annotations

import heapq
from dataclasses import dataclass, field

from .grid import Coord, GridMap, _require_free


@dataclass(frozen=True)
class Path:
    waypoints: tuple[Coord, ...]

    @property
    def cost(self) -> int:
        return len(self.waypoints) - 1

    @property
    def start(self) -> Coord:
        return self.waypoints[0]

    @property
    def goal(self) -> Coord:
        return self.waypoints[-1]


class AStarCounter:
    """Counts A* invocations; used to instrument the baseline."""

    def __init__(self):
        self.calls = 0


def _goal_keys(grid: GridMap, g_idx: int) -> tuple[int, list[int]]:
    """Packed heap-key parts for one goal, memoized on the grid.

    key = ((f * span + h) * scale) + tick + node with f = g + h, which splits
    into g * step + goal_keys[node] + tick. Ticks are multiples of n and
    stay below scale, so the node index is the key modulo n.
    """
    memo = grid.__dict__.setdefault("_key_memo", {})
    hit = memo.get(g_idx)
    if hit is None:
        n = len(grid.adjacency)
        span = 2 * n + 1
        scale = (4 * n + 1) * n
        h = grid.manhattan_row(g_idx)
        hit = memo[g_idx] = (span * scale, [h[v] * (span + 1) * scale + v for v in range(n)])
    return hit


def astar_search(grid: GridMap, start, goal, trace: list | None = None) -> list[int] | None:
    """Flat-index A* core. Returns the node sequence or None.

    Open-list order is (f, h, insertion order): among equal f the node closer
    to the goal is expanded first. Heap entries are single packed integers
    so comparisons stay cheap. If ``trace`` is given, ``(node, g)`` is
    appended for every expansion.
    """
    w = grid.width
    adj = grid.adjacency
    n = len(adj)
    s = start[0] * w + start[1]
    g_idx = goal[0] * w + goal[1]
    if s == g_idx:
        if trace is not None:
            trace.append((s, 0))
        return [s]
    step, goal_keys = _goal_keys(grid, g_idx)
    best_g = [n] * n  # n exceeds every path length
    parent = [-1] * n
    closed = [False] * n
    best_g[s] = 0
    heap = [goal_keys[s]]
    tick = n
    push, pop = heapq.heappush, heapq.heappop
    while heap:
        u = pop(heap) % n
        if closed[u]:
            continue
        if trace is not None:
            trace.append((u, best_g[u]))
        if u == g_idx:
            nodes = [u]
            while parent[u] >= 0:
                u = parent[u]
                nodes.append(u)
            nodes.reverse()
            return nodes
        closed[u] = True
        ng = best_g[u] + 1
        base = ng * step
        for v in adj[u]:
            # consistent heuristic: a closed node never improves, no closed check needed
            if ng < best_g[v]:
                best_g[v] = ng
                parent[v] = u
                push(heap, base + goal_keys[v] + tick)
                tick += n
    return None


def astar_distance(grid: GridMap, start, goal) -> int | None:
    """Same search as :func:`astar_search` without path bookkeeping; cost only."""
    w = grid.width
    adj = grid.adjacency
    n = len(adj)
    s = start[0] * w + start[1]
    g_idx = goal[0] * w + goal[1]
    if s == g_idx:
        return 0
    step, goal_keys = _goal_keys(grid, g_idx)
    best_g = [n] * n
    closed = [False] * n
    best_g[s] = 0
    heap = [goal_keys[s]]
    tick = n
    push, pop = heapq.heappush, heapq.heappop
    while heap:
        u = pop(heap) % n
        if closed[u]:
            continue
        if u == g_idx:
            return best_g[u]
        closed[u] = True
        ng = best_g[u] + 1
        base = ng * step
        for v in adj[u]:
            if ng < best_g[v]:
                best_g[v] = ng
                push(heap, base + goal_keys[v] + tick)
                tick += n
    return None


def astar(grid: GridMap, start, goal, counter: AStarCounter | None = None) -> Path | None:
    """Minimum-cost path with the Manhattan heuristic, or None when unreachable."""
    _require_free(grid, start, goal)
    if counter is not None:
        counter.calls += 1
    nodes = astar_search(grid, start, goal)
    if nodes is None:
        return None
    w = grid.width
    return Path(tuple(Coord(*divmod(n, w)) for n in nodes))


def astar_cost(grid: GridMap, start, goal, counter: AStarCounter | None = None) -> int | None:
    """Length of the A* path, or None when unreachable."""
    _require_free(grid, start, goal)
    if counter is not None:
        counter.calls += 1
    return astar_distance(grid, start, goal)


def is_valid_path(grid: GridMap, path: Path) -> bool:
    pts = path.waypoints
    if not pts or not all(grid.is_free(p) for p in pts):
        return False
    return all(abs(a[0] - b[0]) + abs(a[1] - b[1]) == 1 for a, b in zip(pts, pts[1:]))


@dataclass
class Leg:
    start: Coord
    goal: Coord
    path: Path | None
    kind: str  # "center", "route", "b3" or "b4"
    victim: int | None = None

    @property
    def reachable(self) -> bool:
        return self.path is not None


@dataclass
class RobotPlan:
    robot: int
    legs: list[Leg] = field(default_factory=list)

    @property
    def cost(self) -> int:
        return sum(leg.path.cost for leg in self.legs if leg.path is not None)

    @property
    def gaps(self) -> list[int]:
        return [i for i, leg in enumerate(self.legs) if leg.path is None]


def plan_bundle(grid: GridMap, bundle, robots, counter: AStarCounter | None = None) -> list[RobotPlan]:
    """Chain A* legs per robot: start, cluster center, B2 route, B3 victims, B4 targets.

    An unreachable leg is kept with ``path=None`` and the next leg starts from
    the last reachable position.
    """
    plans = []
    for robot in robots:
        plan = RobotPlan(robot.id)
        pos = Coord(*robot.start)
        stops = []
        entry = bundle.b2.get(robot.id)
        if entry is not None:
            stops.append((Coord(*entry.center), "center", None))
            stops.extend((Coord(*loc), "route", v) for v, loc in entry.route)
        stops.extend((Coord(*loc), "b3", v) for v, loc in bundle.b3_targets(robot.id))
        stops.extend((Coord(*loc), "b4", v) for v, loc in bundle.b4_targets(robot.id))
        for goal, kind, victim in stops:
            path = astar(grid, pos, goal, counter)
            plan.legs.append(Leg(pos, goal, path, kind, victim))
            if path is not None:
                pos = goal
        plans.append(plan)
    return plans
