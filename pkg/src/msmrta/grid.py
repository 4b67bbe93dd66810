"""Occupancy grid, coordinates and distance primitives.

Cells are addressed as ``(row, col)``. Movement is 4-connected.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import NamedTuple

import numpy as np

FREE_CHAR = "."
OBSTACLE_CHAR = "#"

# up, down, left, right
MOVES = ((-1, 0), (1, 0), (0, -1), (0, 1))


class MapFormatError(ValueError):
    pass


class InvalidCellError(ValueError):
    """A query referenced an obstacle or out-of-bounds cell."""


class Coord(NamedTuple):
    row: int
    col: int


@dataclass(frozen=True, eq=False)
class GridMap:
    """Immutable occupancy grid. ``blocked[r, c]`` is True for obstacles."""

    blocked: np.ndarray = field(repr=False)

    def __post_init__(self):
        arr = np.asarray(self.blocked, dtype=bool)
        if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
            raise MapFormatError(f"grid must be 2D and non-empty, got shape {arr.shape}")
        arr = arr.copy()
        arr.setflags(write=False)
        object.__setattr__(self, "blocked", arr)

    @property
    def height(self) -> int:
        return self.blocked.shape[0]

    @property
    def width(self) -> int:
        return self.blocked.shape[1]

    @classmethod
    def empty(cls, height: int, width: int) -> GridMap:
        return cls(np.zeros((height, width), dtype=bool))

    def __eq__(self, other):
        if not isinstance(other, GridMap):
            return NotImplemented
        return np.array_equal(self.blocked, other.blocked)

    __hash__ = None

    def in_bounds(self, cell) -> bool:
        r, c = cell
        return 0 <= r < self.height and 0 <= c < self.width

    def is_free(self, cell) -> bool:
        return self.in_bounds(cell) and not self.blocked[cell[0], cell[1]]

    def free_cells(self) -> list[Coord]:
        rows, cols = np.nonzero(~self.blocked)
        return [Coord(int(r), int(c)) for r, c in zip(rows, cols)]

    def neighbors(self, cell) -> list[Coord]:
        r, c = cell
        return [Coord(r + dr, c + dc) for dr, dc in MOVES if self.is_free((r + dr, c + dc))]

    @cached_property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        """Free 4-neighbours of every cell as flat indices ``r * width + c``."""
        h, w = self.shape
        adj = []
        for r in range(h):
            for c in range(w):
                if self.blocked[r, c]:
                    adj.append(())
                    continue
                adj.append(tuple((r + dr) * w + (c + dc) for dr, dc in MOVES
                                 if 0 <= r + dr < h and 0 <= c + dc < w
                                 and not self.blocked[r + dr, c + dc]))
        return tuple(adj)

    @cached_property
    def flat_rows(self) -> tuple[int, ...]:
        return tuple(i // self.width for i in range(self.height * self.width))

    @cached_property
    def flat_cols(self) -> tuple[int, ...]:
        return tuple(i % self.width for i in range(self.height * self.width))

    def manhattan_row(self, goal_index: int) -> tuple[int, ...]:
        """Manhattan distance from every flat cell index to ``goal_index`` (memoized)."""
        memo = self.__dict__.setdefault("_h_memo", {})
        row = memo.get(goal_index)
        if row is None:
            if len(memo) >= 4096:
                memo.clear()
            gr, gc = divmod(goal_index, self.width)
            row = memo[goal_index] = tuple(
                abs(r - gr) + abs(c - gc) for r, c in zip(self.flat_rows, self.flat_cols))
        return row

    @property
    def shape(self) -> tuple[int, int]:
        return self.blocked.shape

    def to_text(self) -> str:
        return "".join(
            "".join(OBSTACLE_CHAR if b else FREE_CHAR for b in row) + "\n"
            for row in self.blocked
        )

    def obstacle_density(self) -> float:
        return float(self.blocked.mean())


def parse_map(text: str) -> GridMap:
    """Parse the ``.``/``#`` map text format. Dimensions are inferred."""
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    lines = [ln.rstrip("\r") for ln in lines]
    if not lines or not lines[0]:
        raise MapFormatError("map has zero dimensions")
    width = len(lines[0])
    rows = []
    for i, line in enumerate(lines):
        if len(line) != width:
            raise MapFormatError(f"row {i} has length {len(line)}, expected {width}")
        bad = set(line) - {FREE_CHAR, OBSTACLE_CHAR}
        if bad:
            raise MapFormatError(f"row {i}: unknown character(s) {sorted(bad)!r}")
        rows.append([ch == OBSTACLE_CHAR for ch in line])
    return GridMap(np.array(rows, dtype=bool))


def load_map(path) -> GridMap:
    return parse_map(Path(path).read_text())


def save_map(grid: GridMap, path) -> None:
    Path(path).write_text(grid.to_text())


def manhattan(a, b) -> int:
    return abs(a[0] - b[0]) + abs(a[1] - b[1])


def chebyshev(a, b) -> int:
    return max(abs(a[0] - b[0]), abs(a[1] - b[1]))


def _require_free(grid: GridMap, *cells) -> None:
    for cell in cells:
        if not grid.is_free(cell):
            raise InvalidCellError(f"cell {tuple(cell)} is not a free cell of the map")


def bfs_distances(grid: GridMap, start) -> np.ndarray:
    """Shortest-path step counts from ``start`` to every cell; -1 where unreachable."""
    _require_free(grid, start)
    h, w = grid.shape
    adj = grid.adjacency
    dist = [-1] * (h * w)
    s = start[0] * w + start[1]
    dist[s] = 0
    queue = deque([s])
    while queue:
        u = queue.popleft()
        du = dist[u] + 1
        for v in adj[u]:
            if dist[v] < 0:
                dist[v] = du
                queue.append(v)
    return np.array(dist, dtype=int).reshape(h, w)


def bfs_shortest_path(grid: GridMap, start, goal) -> int | None:
    """Length of the shortest obstacle-avoiding path, or None when unreachable."""
    _require_free(grid, start, goal)
    w = grid.width
    adj = grid.adjacency
    s, g = start[0] * w + start[1], goal[0] * w + goal[1]
    if s == g:
        return 0
    dist = {s: 0}
    queue = deque([s])
    while queue:
        u = queue.popleft()
        du = dist[u] + 1
        for v in adj[u]:
            if v not in dist:
                if v == g:
                    return du
                dist[v] = du
                queue.append(v)
    return None


def line_cells(a, b) -> list[Coord]:
    """Cells visited by Bresenham's line from ``a`` to ``b``, endpoints included."""
    r0, c0 = a
    r1, c1 = b
    dr, dc = abs(r1 - r0), abs(c1 - c0)
    sr = 1 if r1 > r0 else -1
    sc = 1 if c1 > c0 else -1
    err = dc - dr
    cells = [Coord(r0, c0)]
    r, c = r0, c0
    while (r, c) != (r1, c1):
        e2 = 2 * err
        if e2 > -dr:
            err -= dr
            c += sc
        if e2 < dc:
            err += dc
            r += sr
        cells.append(Coord(r, c))
    return cells


def line_of_sight(grid: GridMap, src, dst) -> bool:
    """True iff no obstacle lies on the discretized segment between the two cells."""
    if not grid.in_bounds(dst):
        return False
    blocked = grid.blocked
    return not any(blocked[r, c] for r, c in line_cells(src, dst))


def is_connected(grid: GridMap) -> bool:
    """Whether all free cells form one 4-connected component."""
    free = grid.free_cells()
    if not free:
        return False
    return int((bfs_distances(grid, free[0]) >= 0).sum()) == len(free)
