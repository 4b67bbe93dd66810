"""Procedural maps and random scenarios."""
from __future__ import annotations

import numpy as np

from .grid import Coord, GridMap, is_connected
from .pipeline import Scenario, ScoutConfig
from .records import Robot, VictimRecord

MAX_TRIES = 200


class GenerationError(RuntimeError):
    pass


def _rooms(h: int, w: int, rng: np.random.Generator, min_room: int = 3) -> np.ndarray:
    """Recursive division into rooms joined by doorways, plus some debris."""
    blocked = np.zeros((h, w), dtype=bool)

    def divide(r0, c0, r1, c1):
        rh, cw = r1 - r0 + 1, c1 - c0 + 1
        can_h = rh >= 2 * min_room + 1
        can_v = cw >= 2 * min_room + 1
        if not (can_h or can_v):
            return
        horizontal = can_h and (not can_v or rh > cw or (rh == cw and rng.random() < 0.5))
        if horizontal:
            wr = int(rng.integers(r0 + min_room, r1 - min_room + 1))
            blocked[wr, c0:c1 + 1] = True
            door = int(rng.integers(c0, c1 + 1))
            blocked[wr, door:door + 2] = False
            divide(r0, c0, wr - 1, c1)
            divide(wr + 1, c0, r1, c1)
        else:
            wc = int(rng.integers(c0 + min_room, c1 - min_room + 1))
            blocked[r0:r1 + 1, wc] = True
            door = int(rng.integers(r0, r1 + 1))
            blocked[door:door + 2, wc] = False
            divide(r0, c0, r1, wc - 1)
            divide(r0, wc + 1, r1, c1)

    divide(0, 0, h - 1, w - 1)
    n_debris = int(rng.integers(0, (h * w) // 40 + 1))
    for _ in range(n_debris):
        blocked[rng.integers(h), rng.integers(w)] = True
    return blocked


def _random_walls(h: int, w: int, rng: np.random.Generator, density: float = 0.2) -> np.ndarray:
    blocked = np.zeros((h, w), dtype=bool)
    while blocked.mean() < density:
        length = int(rng.integers(3, max(4, min(h, w) // 2)))
        r, c = int(rng.integers(h)), int(rng.integers(w))
        if rng.random() < 0.5:
            blocked[r, c:c + length] = True
        else:
            blocked[r:r + length, c] = True
    return blocked


def gen_map(width: int = 20, height: int = 20, style: str = "rooms", seed: int = 0) -> GridMap:
    """Connected procedural map, deterministic in ``seed``."""
    if width < 5 or height < 5:
        raise ValueError("map dimensions must be at least 5")
    builders = {"rooms": _rooms, "walls": _random_walls}
    if style not in builders:
        raise ValueError(f"unknown obstacle style {style!r}; choose from {sorted(builders)}")
    rng = np.random.default_rng(seed)
    for _ in range(MAX_TRIES):
        grid = GridMap(builders[style](height, width, rng))
        if is_connected(grid):
            return grid
    raise GenerationError(f"no connected {style} map after {MAX_TRIES} attempts (seed {seed})")


def _capabilities(rng, n_robots: int, nr: int) -> np.ndarray:
    while True:
        P = rng.integers(0, 2, size=(n_robots, nr))
        if n_robots < 2 or P.any(axis=0).all():
            return P


def _requirement(rng, nr: int) -> np.ndarray:
    while True:
        q = rng.integers(0, 2, size=nr)
        if q.any():
            return q


def gen_scenario(grid: GridMap, n_robots: int, m_victims: int, nr: int = 6, seed: int = 0,
                 n_scouts: int = 2, vfd: int = 3, psi: float = 0.5, beta: float = 0.5,
                 map_path: str | None = None) -> Scenario:
    """Random placements on distinct free cells and Bernoulli(0.5) capability bits."""
    free = grid.free_cells()
    if n_robots + m_victims > len(free):
        raise GenerationError(
            f"{n_robots} robots + {m_victims} victims do not fit in {len(free)} free cells")
    rng = np.random.default_rng(seed)
    cells = [free[i] for i in rng.choice(len(free), size=n_robots + m_victims, replace=False)]
    P = _capabilities(rng, n_robots, nr)
    robots = [Robot(i, cells[i], tuple(int(x) for x in P[i])) for i in range(n_robots)]
    victims = [
        VictimRecord(i, cells[n_robots + i], tuple(int(x) for x in _requirement(rng, nr)))
        for i in range(m_victims)
    ]
    starts = [Coord(*free[i]) for i in rng.choice(len(free), size=n_scouts)]
    return Scenario(
        grid=grid, robots=robots, victims=victims,
        scouts=ScoutConfig(n_scouts, starts, vfd), psi=psi, beta=beta, seed=seed,
        map_path=map_path,
    )
