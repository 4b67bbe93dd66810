import numpy as np
import pytest
from scipy.stats import chisquare

from conftest import random_connected_grid
from msmrta.grid import Coord, GridMap, parse_map
from msmrta.records import VictimRecord
from msmrta.scouting import Scout, SearchTable, detect, scout_mission, step_policy, visible_cells


def test_step_policy_prefers_least_visited():
    grid = GridMap.empty(3, 3)
    table = SearchTable.for_map(grid)
    table.visit_counts[:] = 5
    table.visit_counts[2, 1] = 1
    scout = Scout(0, (1, 1))
    assert step_policy(scout, table, grid, np.random.default_rng(0)) == (2, 1)


def test_step_policy_ties_are_uniform():
    grid = GridMap.empty(3, 3)
    table = SearchTable.for_map(grid)
    scout = Scout(0, (1, 1))
    rng = np.random.default_rng(2024)
    cells = [(0, 1), (2, 1), (1, 0), (1, 2)]
    picks = [step_policy(scout, table, grid, rng) for _ in range(10_000)]
    counts = [sum(p == c for p in picks) for c in cells]
    assert sum(counts) == 10_000
    assert chisquare(counts).pvalue > 0.001


def test_visible_cells_blocked_by_wall():
    grid = parse_map(".......\n...#...\n.......\n")
    cells = visible_cells(grid, (1, 1), 5)
    assert (1, 2) in cells and (1, 3) not in cells and (1, 5) not in cells
    assert all(not grid.blocked[c] for c in cells)


def test_detect_uses_chebyshev_and_line_of_sight():
    grid = parse_map(".......\n...#...\n.......\n")
    victims = [VictimRecord(0, (1, 5), (1,)), VictimRecord(1, (0, 4), (1,)), VictimRecord(2, (2, 5), (1,))]
    # the wall at (1, 3) hides victims 0 and 2 from (1, 1)
    assert [v.id for v in detect(Scout(0, (1, 1), vfd=5), grid, victims)] == [1]
    # from the bottom row the lines pass under the wall; only the radius matters
    assert [v.id for v in detect(Scout(0, (2, 1), vfd=4), grid, victims)] == [0, 2]
    assert [v.id for v in detect(Scout(0, (2, 1), vfd=3), grid, victims)] == []


def test_mission_finds_everything_on_open_map():
    grid = GridMap.empty(10, 10)
    victims = [VictimRecord(i, (i, 9 - i), (1,)) for i in range(10)]
    res = scout_mission(grid, [Scout(0, (0, 0)), Scout(1, (9, 9))], victims, seed=1)
    assert res.complete and not res.incomplete
    assert [v.id for v in res.found] == list(range(10))
    assert res.coverage[-1] == 100 and len(res.coverage) == res.steps_taken + 1


def test_step_limit_marks_incomplete():
    res = scout_mission(GridMap.empty(20, 20), [Scout(0, (0, 0))], [], step_limit=3)
    assert res.steps_taken == 3 and res.incomplete


def test_rejects_blocked_start():
    grid = parse_map(".#\n..\n")
    with pytest.raises(ValueError):
        scout_mission(grid, [Scout(0, (0, 1))], [])


def test_mission_is_seed_deterministic():
    grid = random_connected_grid(np.random.default_rng(4), 12, 12)
    scouts = [Scout(0, (0, 0)), Scout(1, (0, 0))]
    a = scout_mission(grid, scouts, [], seed=42)
    b = scout_mission(grid, scouts, [], seed=42)
    assert a.trajectories == b.trajectories and a.steps_taken == b.steps_taken
    assert scouts[0].position == (0, 0)  # inputs untouched


def test_coverage_terminates_on_random_maps():
    rng = np.random.default_rng(8)
    for seed in range(100):
        grid = random_connected_grid(rng, 10, 10, 0.25)
        free = grid.free_cells()
        res = scout_mission(grid, [Scout(0, free[0]), Scout(1, free[-1], vfd=2)], [], seed=seed)
        assert res.complete, seed
        assert res.coverage[-1] == len(free)
        assert all(a <= b for a, b in zip(res.coverage, res.coverage[1:]))
        for path in res.trajectories.values():
            assert all(abs(p[0] - q[0]) + abs(p[1] - q[1]) == 1 for p, q in zip(path, path[1:]))


def test_positions_are_coords():
    res = scout_mission(GridMap.empty(4, 4), [Scout(0, (0, 0))], [])
    assert all(isinstance(c, Coord) for c in res.trajectories[0])


def test_frozen_mission_on_example_map(example_scenario):
    # regression values recorded from this implementation
    sc = example_scenario
    res = scout_mission(sc.grid, sc.scouts.scouts(), sc.victims, seed=42)
    assert res.steps_taken == 161 and res.complete and len(res.found) == 10
    assert res.trajectories[0][:4] == [(0, 0), (1, 0), (1, 1), (2, 1)]
    assert scout_mission(sc.grid, sc.scouts.scouts(), sc.victims, seed=0).steps_taken == 155
