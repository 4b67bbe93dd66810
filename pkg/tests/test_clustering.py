import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import EXAMPLE_VICTIMS
from msmrta.capability import InvalidInputError
from msmrta.clustering import kmeans, obstacle_filter, priority_order, snap_to_free, sse
from msmrta.grid import GridMap
from msmrta.records import VictimRecord


def victims_at(points):
    return [VictimRecord(i, p, (1,)) for i, p in enumerate(points)]


def partitions(n, max_parts):
    """Restricted-growth enumeration of set partitions of range(n)."""
    labels = [0] * n

    def rec(i, used):
        if i == n:
            yield list(labels)
            return
        for lab in range(min(used + 1, max_parts)):
            labels[i] = lab
            yield from rec(i + 1, max(used, lab + 1))

    yield from rec(1, 1) if n else iter([[]])


def best_sse(points, k):
    X = np.array(points, dtype=float)
    return min(sse(X, labs) for labs in partitions(len(X), k))


def test_partition_enumeration_counts():
    # Bell numbers and S(5,1)+S(5,2)
    assert sum(1 for _ in partitions(5, 5)) == 52
    assert sum(1 for _ in partitions(5, 2)) == 16


def test_sse_hand_value():
    assert sse(np.array([[0, 0], [0, 2], [5, 5]]), [0, 0, 1]) == pytest.approx(2.0)


def test_two_obvious_blobs():
    pts = [(0, 0), (0, 1), (1, 0), (15, 15), (15, 16), (16, 15)]
    c = kmeans(victims_at(pts), 2)
    assert c.partition() == frozenset({frozenset({0, 1, 2}), frozenset({3, 4, 5})})


def test_example_locations_reach_exhaustive_optimum():
    pts = [loc for loc, _ in EXAMPLE_VICTIMS]
    c = kmeans(victims_at(pts), 4, seed=0)
    got = sse(np.array(pts, float), c.labels)
    assert got == pytest.approx(best_sse(pts, 4))
    assert got == pytest.approx(77.0)


def test_small_random_sets_near_optimum():
    rng = np.random.default_rng(5)
    for _ in range(20):
        pts = [tuple(p) for p in rng.integers(0, 20, (7, 2))]
        k = int(rng.integers(1, 4))
        c = kmeans(victims_at(pts), k, seed=1)
        assert sse(np.array(pts, float), c.labels) <= 1.05 * best_sse(pts, k) + 1e-9


def test_kmeans_rejects_bad_k():
    with pytest.raises(InvalidInputError):
        kmeans(victims_at([(0, 0)]), 2)
    with pytest.raises(InvalidInputError):
        kmeans([], 1)


def test_snap_prefers_lowest_row_col_on_tie():
    blocked = np.zeros((20, 20), bool)
    blocked[0:18, 10] = True
    assert snap_to_free(GridMap(blocked), (5.0, 10.0)) == (5, 9)
    assert snap_to_free(GridMap.empty(4, 4), (1.5, 1.5)) == (1, 1)


def test_obstacle_filter_excludes_detour():
    blocked = np.zeros((20, 20), bool)
    blocked[0:18, 10] = True
    grid = GridMap(blocked)
    victims = victims_at([(5, 8), (5, 12)])
    c = kmeans(victims, 1, grid=grid)
    assert c.centers == ((5, 9),)
    plan = obstacle_filter(grid, c, victims)
    # detour from (5, 9) to (5, 12) is 13 + 2 + 13 + 1 = 29 > 3
    assert plan.excluded == frozenset({1})
    assert plan.routes == ((0,),)


def test_obstacle_filter_keeps_everything_on_open_map():
    victims = victims_at([(1, 1), (8, 8), (2, 7), (9, 0)])
    grid = GridMap.empty(10, 10)
    c = kmeans(victims, 2, grid=grid)
    plan = obstacle_filter(grid, c, victims)
    assert plan.excluded == frozenset()
    assert sorted(v for r in plan.routes for v in r) == [0, 1, 2, 3]


def test_priority_order_by_distance_then_id():
    victims = victims_at([(0, 3), (3, 0), (1, 1)])
    assert priority_order((0, 0), victims) == [2, 0, 1]


@settings(max_examples=40, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 19), st.integers(0, 19)), min_size=1, max_size=25),
       st.integers(1, 6), st.integers(0, 1000))
def test_labels_partition_victims(points, k, seed):
    k = min(k, len(points))
    victims = victims_at(points)
    c = kmeans(victims, k, seed=seed)
    members = [v for i in range(k) for v in c.members(i)]
    assert sorted(members) == list(range(len(points)))
    assert all(0 <= lab < k for lab in c.labels)
    if len(set(points)) >= k:
        assert len(c.partition()) == k
