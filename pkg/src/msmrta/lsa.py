"""Rectangular linear assignment (Hungarian method with potentials).

Among all matchings of maximum cardinality that avoid skipped pairs, returns
one with optimal total cost. Ties resolve to the lexicographically smallest
sorted pair list.
"""
from __future__ import annotations

import math

import numpy as np


def _hungarian(cost: list[list[float]]) -> list[int]:
    """Min-cost assignment for an ``n x m`` matrix with ``n <= m``; column per row."""
    n, m = len(cost), len(cost[0])
    inf = math.inf
    u = [0.0] * (n + 1)
    v = [0.0] * (m + 1)
    p = [0] * (m + 1)      # p[j]: row (1-based) matched to column j
    way = [0] * (m + 1)
    for i in range(1, n + 1):
        p[0] = i
        j0 = 0
        minv = [inf] * (m + 1)
        used = [False] * (m + 1)
        while True:
            used[j0] = True
            i0 = p[j0]
            row = cost[i0 - 1]
            ui0 = u[i0]
            delta = inf
            j1 = 0
            for j in range(1, m + 1):
                if not used[j]:
                    cur = row[j - 1] - ui0 - v[j]
                    if cur < minv[j]:
                        minv[j] = cur
                        way[j] = j0
                    if minv[j] < delta:
                        delta = minv[j]
                        j1 = j
            for j in range(m + 1):
                if used[j]:
                    u[p[j]] += delta
                    v[j] -= delta
                else:
                    minv[j] -= delta
            j0 = j1
            if p[j0] == 0:
                break
        while True:
            j1 = way[j0]
            p[j0] = p[j1]
            j0 = j1
            if j0 == 0:
                break
    col_of = [0] * n
    for j in range(1, m + 1):
        if p[j]:
            col_of[p[j] - 1] = j - 1
    return col_of


def _solve_min(cost: np.ndarray, allowed: np.ndarray) -> tuple[list[tuple[int, int]], float]:
    """Max-cardinality, min-cost matching restricted to ``allowed`` pairs."""
    n, m = cost.shape
    if n == 0 or m == 0 or not allowed.any():
        return [], 0.0
    transposed = n > m
    if transposed:
        cost, allowed = cost.T, allowed.T
    finite = np.abs(cost[allowed]).sum()
    # a forbidden pair must cost more than any set of allowed pairs
    big = (finite + 1.0) * (min(cost.shape) + 1)
    work = np.where(allowed, cost, big).tolist()
    pairs = [(i, j) for i, j in enumerate(_hungarian(work)) if allowed[i, j]]
    if transposed:
        pairs = [(j, i) for i, j in pairs]
        cost = cost.T
    pairs.sort()
    return pairs, float(sum(cost[r, c] for r, c in pairs))


def _close(a: float, b: float) -> bool:
    return math.isclose(a, b, rel_tol=1e-9, abs_tol=1e-9)


def solve_linear_assignment(cost, maximize: bool = False, skip=None) -> list[tuple[int, int]]:
    """Optimal one-to-one matching of rows to columns.

    ``skip`` is either a boolean mask or a predicate ``skip(r, c)``; skipped
    pairs are never matched.
    """
    cost = np.asarray(cost, dtype=float)
    if cost.size == 0:
        return []
    n, m = cost.shape
    if skip is None:
        allowed = np.ones((n, m), dtype=bool)
    elif callable(skip):
        allowed = np.array([[not skip(r, c) for c in range(m)] for r in range(n)], dtype=bool)
    else:
        allowed = ~np.asarray(skip, dtype=bool)
    work = -cost if maximize else cost
    best, best_val = _solve_min(work, allowed)
    card = len(best)
    if card == 0:
        return []

    # Greedy lexicographic refinement: fix the smallest pair that keeps an
    # optimal matching attainable. Rows passed over must stay unmatched.
    fixed: list[tuple[int, int]] = []
    fixed_val = 0.0
    mask = allowed.copy()
    next_row = 0
    while len(fixed) < card:
        chosen = None
        for r in range(next_row, n):
            for c in range(m):
                if not mask[r, c]:
                    continue
                trial = mask.copy()
                trial[r, :] = False
                trial[:, c] = False
                rest, rest_val = _solve_min(work, trial)
                if len(rest) + len(fixed) + 1 == card and _close(fixed_val + work[r, c] + rest_val, best_val):
                    chosen = (r, c)
                    break
            if chosen is not None:
                break
            mask[r, :] = False  # row r left unmatched
        assert chosen is not None
        r, c = chosen
        fixed.append(chosen)
        fixed_val += work[r, c]
        mask[r, :] = False
        mask[:, c] = False
        next_row = r + 1
    return fixed


def matching_value(cost, pairs) -> float:
    cost = np.asarray(cost, dtype=float)
    return float(sum(cost[r, c] for r, c in sorted(pairs)))
