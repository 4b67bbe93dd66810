import pytest

from msmrta.generate import GenerationError, gen_map, gen_scenario
from msmrta.grid import GridMap, is_connected


@pytest.mark.parametrize("style", ["rooms", "walls"])
def test_maps_deterministic_connected_and_dense(style):
    for seed in range(15):
        g = gen_map(20, 20, style, seed)
        assert g == gen_map(20, 20, style, seed)
        assert is_connected(g)
        assert 0.10 <= g.obstacle_density() <= 0.40


def test_different_seeds_differ():
    assert gen_map(seed=1) != gen_map(seed=2)


def test_bad_map_arguments():
    with pytest.raises(ValueError):
        gen_map(3, 20)
    with pytest.raises(ValueError):
        gen_map(style="caves")


def test_scenario_rules():
    grid = gen_map(20, 20, "rooms", 1)
    sc = gen_scenario(grid, 5, 40, nr=6, seed=3)
    cells = [r.start for r in sc.robots] + [v.location for v in sc.victims]
    assert len(set(cells)) == len(cells)
    assert all(grid.is_free(c) for c in cells)
    assert all(any(v.requirements) for v in sc.victims)
    for j in range(6):
        assert any(r.capabilities[j] for r in sc.robots)
    assert sc == gen_scenario(grid, 5, 40, nr=6, seed=3)


def test_scenario_too_crowded():
    with pytest.raises(GenerationError):
        gen_scenario(GridMap.empty(5, 5), 5, 21)
