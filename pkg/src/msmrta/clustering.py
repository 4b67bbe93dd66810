"""K-means grouping of victims, cluster centers and obstacle-aware filtering."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .capability import InvalidInputError
from .grid import Coord, GridMap, bfs_distances, manhattan


@dataclass(frozen=True)
class Clustering:
    victim_ids: tuple[int, ...]
    labels: tuple[int, ...]          # cluster index per entry of victim_ids
    means: tuple[tuple[float, float], ...]
    centers: tuple[Coord, ...]       # means snapped to free cells
    k: int

    def members(self, c: int) -> list[int]:
        return [v for v, lab in zip(self.victim_ids, self.labels) if lab == c]

    def cluster_of(self, victim_id: int) -> int:
        return self.labels[self.victim_ids.index(victim_id)]

    def partition(self) -> frozenset[frozenset[int]]:
        """Cluster contents without labels, for comparisons up to relabeling."""
        return frozenset(frozenset(self.members(c)) for c in range(self.k) if self.members(c))


@dataclass(frozen=True)
class ClusterPlan:
    routes: tuple[tuple[int, ...], ...]  # per cluster, victims in priority order
    excluded: frozenset[int]


def sse(points: np.ndarray, labels) -> float:
    """Within-cluster sum of squared distances to cluster means."""
    points = np.asarray(points, dtype=float)
    labels = np.asarray(labels)
    total = 0.0
    for c in np.unique(labels):
        p = points[labels == c]
        total += float(((p - p.mean(axis=0)) ** 2).sum())
    return total


def _kmeanspp_init(X: np.ndarray, k: int, rng: np.random.Generator) -> np.ndarray:
    n = len(X)
    centers = [X[rng.integers(n)]]
    d2 = ((X - centers[0]) ** 2).sum(axis=1)
    for _ in range(1, k):
        total = d2.sum()
        if total > 0:
            idx = rng.choice(n, p=d2 / total)
        else:
            idx = rng.integers(n)
        centers.append(X[idx])
        d2 = np.minimum(d2, ((X - X[idx]) ** 2).sum(axis=1))
    return np.array(centers, dtype=float)


def lloyd(X: np.ndarray, centers: np.ndarray, max_iter: int = 300) -> tuple[np.ndarray, np.ndarray]:
    """Lloyd iterations until assignments stop changing."""
    k = len(centers)
    labels = None
    for _ in range(max_iter):
        d2 = ((X[:, None, :] - centers[None, :, :]) ** 2).sum(axis=2)
        new = d2.argmin(axis=1)
        # empty cluster: steal the point farthest from its own center
        for c in range(k):
            if not (new == c).any():
                own = d2[np.arange(len(X)), new]
                counts = np.bincount(new, minlength=k)
                own[counts[new] <= 1] = -1.0
                far = int(own.argmax())
                new[far] = c
        if labels is not None and np.array_equal(new, labels):
            break
        labels = new
        centers = np.array([X[labels == c].mean(axis=0) for c in range(k)])
    return labels, centers


def snap_to_free(grid: GridMap, point) -> Coord:
    """Nearest free cell to a real-valued point by Manhattan distance; ties by (row, col)."""
    free = np.argwhere(~grid.blocked)
    d = np.abs(free[:, 0] - point[0]) + np.abs(free[:, 1] - point[1])
    # argwhere is row-major, so argmin picks the lexicographically smallest tie
    r, c = free[int(np.argmin(d))]
    return Coord(int(r), int(c))


def kmeans(victims, k: int, seed: int = 0, grid: GridMap | None = None,
           n_init: int = 10) -> Clustering:
    """K-means with k-means++ seeding; keeps the lowest-SSE of ``n_init`` restarts.

    Centers are snapped onto ``grid`` (all-free if omitted).
    """
    if not victims:
        raise InvalidInputError("cannot cluster an empty victim list")
    if not 1 <= k <= len(victims):
        raise InvalidInputError(f"k={k} must be between 1 and the victim count {len(victims)}")
    X = np.array([v.location for v in victims], dtype=float)
    rng = np.random.default_rng(seed)
    best = None
    for _ in range(n_init):
        labels, centers = lloyd(X, _kmeanspp_init(X, k, rng))
        score = sse(X, labels)
        if best is None or score < best[0] - 1e-9:
            best = (score, labels, centers)
    _, labels, centers = best
    if grid is None:
        top = X.max(axis=0).astype(int) + 1
        grid = GridMap.empty(int(top[0]), int(top[1]))
    return Clustering(
        victim_ids=tuple(v.id for v in victims),
        labels=tuple(int(x) for x in labels),
        means=tuple((float(r), float(c)) for r, c in centers),
        centers=tuple(snap_to_free(grid, m) for m in centers),
        k=k,
    )


def priority_order(center, victims) -> list[int]:
    return [v.id for v in sorted(victims, key=lambda v: (manhattan(center, v.location), v.id))]


def obstacle_filter(grid: GridMap, clustering: Clustering, victims) -> ClusterPlan:
    """Drop victims whose shortest path from their center exceeds the Manhattan distance."""
    by_id = {v.id: v for v in victims}
    routes, excluded = [], set()
    for c in range(clustering.k):
        center = clustering.centers[c]
        members = [by_id[v] for v in clustering.members(c)]
        dist = bfs_distances(grid, center) if members else None
        kept = []
        for v in members:
            d = dist[v.location[0], v.location[1]]
            if d < 0 or d > manhattan(center, v.location):
                excluded.add(v.id)
            else:
                kept.append(v)
        routes.append(tuple(priority_order(center, kept)))
    return ClusterPlan(tuple(routes), frozenset(excluded))
