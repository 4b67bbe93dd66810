"""Scout team coverage with a shared visit-count search table.

Scouts move one cell per round, in ascending id order, to the least-visited
free neighbour (random tie-break). Every scout sees free cells inside a
Chebyshev square of radius ``vfd`` that are in line of sight. The mission
ends when every free cell has been seen or the step budget runs out.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .grid import Coord, GridMap, chebyshev, line_of_sight


@dataclass
class Scout:
    id: int
    position: Coord
    vfd: int = 3

    def __post_init__(self):
        self.position = Coord(*self.position)
        if self.vfd < 1:
            raise ValueError("vfd must be >= 1")


@dataclass
class SearchTable:
    visit_counts: np.ndarray

    @classmethod
    def for_map(cls, grid: GridMap) -> SearchTable:
        return cls(np.zeros(grid.shape, dtype=np.int64))

    def visit(self, cell) -> None:
        self.visit_counts[cell[0], cell[1]] += 1


@dataclass
class ScoutResult:
    found: list
    steps_taken: int
    complete: bool
    coverage: list[int] = field(default_factory=list)  # observed free cells after each round
    trajectories: dict[int, list[Coord]] = field(default_factory=dict)

    @property
    def incomplete(self) -> bool:
        return not self.complete


def step_policy(scout: Scout, table: SearchTable, grid: GridMap, rng: np.random.Generator) -> Coord:
    options = grid.neighbors(scout.position)
    if not options:
        return scout.position
    counts = [table.visit_counts[r, c] for r, c in options]
    low = min(counts)
    ties = [cell for cell, n in zip(options, counts) if n == low]
    if len(ties) == 1:
        return ties[0]
    return ties[int(rng.integers(len(ties)))]


def visible_cells(grid: GridMap, cell, vfd: int) -> list[Coord]:
    r0, c0 = cell
    out = []
    for r in range(max(0, r0 - vfd), min(grid.height, r0 + vfd + 1)):
        for c in range(max(0, c0 - vfd), min(grid.width, c0 + vfd + 1)):
            if not grid.blocked[r, c] and line_of_sight(grid, cell, (r, c)):
                out.append(Coord(r, c))
    return out


def detect(scout: Scout, grid: GridMap, victims) -> list:
    return [
        v for v in victims
        if chebyshev(scout.position, v.location) <= scout.vfd
        and line_of_sight(grid, scout.position, v.location)
    ]


def scout_mission(grid: GridMap, scouts: list[Scout], ground_truth, seed: int = 0,
                  step_limit: int = 10_000) -> ScoutResult:
    if not scouts:
        raise ValueError("at least one scout is required")
    for s in scouts:
        if not grid.is_free(s.position):
            raise ValueError(f"scout {s.id} starts on a blocked cell {s.position}")
    rng = np.random.default_rng(seed)
    scouts = [Scout(s.id, s.position, s.vfd) for s in sorted(scouts, key=lambda s: s.id)]
    table = SearchTable.for_map(grid)
    victims_at: dict[Coord, list] = {}
    for v in ground_truth:
        victims_at.setdefault(Coord(*v.location), []).append(v)

    seen = np.zeros(grid.shape, dtype=bool)
    n_free = int((~grid.blocked).sum())
    n_seen = 0
    found = {}
    fov_cache: dict[tuple[Coord, int], list[Coord]] = {}
    trajectories = {s.id: [s.position] for s in scouts}

    def observe(s: Scout) -> None:
        nonlocal n_seen
        key = (s.position, s.vfd)
        cells = fov_cache.get(key)
        if cells is None:
            cells = fov_cache[key] = visible_cells(grid, s.position, s.vfd)
        for cell in cells:
            if not seen[cell]:
                seen[cell] = True
                n_seen += 1
                for v in victims_at.get(cell, ()):
                    found[v.id] = v

    for s in scouts:
        table.visit(s.position)
        observe(s)
    coverage = [n_seen]
    steps = 0
    while n_seen < n_free and steps < step_limit:
        for s in scouts:
            s.position = step_policy(s, table, grid, rng)
            table.visit(s.position)
            trajectories[s.id].append(s.position)
            observe(s)
        steps += 1
        coverage.append(n_seen)
    return ScoutResult(
        found=[found[k] for k in sorted(found)],
        steps_taken=steps,
        complete=n_seen == n_free,
        coverage=coverage,
        trajectories=trajectories,
    )
