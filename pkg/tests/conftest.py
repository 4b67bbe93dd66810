import sys
from pathlib import Path

import numpy as np
import pytest
from hypothesis import strategies as st

from msmrta.capability import CapabilityMatrices
from msmrta.grid import GridMap, is_connected
from msmrta.pipeline import load_scenario

ROOT = Path(__file__).resolve().parent.parent
SCENARIOS = ROOT / "scenarios"

# Ten victims / four robots, transcribed by hand.
EXAMPLE_VICTIMS = [
    ((16, 7), [0, 1, 1, 0, 0, 0]),
    ((15, 12), [0, 0, 0, 1, 1, 0]),
    ((6, 5), [0, 1, 0, 0, 0, 1]),
    ((11, 4), [0, 0, 1, 0, 1, 0]),
    ((0, 1), [1, 1, 0, 0, 0, 0]),
    ((14, 14), [0, 0, 0, 0, 1, 1]),
    ((14, 12), [1, 0, 0, 0, 1, 0]),
    ((3, 16), [1, 0, 0, 1, 0, 0]),
    ((10, 15), [0, 1, 0, 1, 0, 0]),
    ((0, 12), [1, 0, 0, 0, 1, 0]),
]
EXAMPLE_ROBOTS = [
    ((0, 9), [0, 1, 0, 1, 0, 0]),
    ((0, 10), [1, 0, 1, 0, 1, 0]),
    ((19, 9), [0, 0, 0, 0, 1, 0]),
    ((19, 10), [1, 0, 0, 1, 0, 0]),
]
EXAMPLE_L_FULL = [[8], [3, 6, 9], [], [7]]
EXAMPLE_L_PARTIAL = [[0, 1, 2, 4, 7], [0, 1, 4, 5, 7], [1, 3, 5, 6, 9], [1, 4, 6, 8, 9]]
E = []
EXAMPLE_L_POTENTIAL = [
    [E, [0], [1], E, E, E],
    [E, E, E, [0, 3], [1, 2], E],
    [E, [0], E, E, E, E],
    [E, E, [1], E, [1, 2], E],
    [[1, 3], [0], E, E, E, E],
    [E, E, E, E, [1, 2], E],
    [[1, 3], E, E, E, [1, 2], E],
    [[1, 3], E, E, [0, 3], E, E],
    [E, [0], E, [0, 3], E, E],
    [[1, 3], E, E, E, [1, 2], E],
]
EXAMPLE_PARTITION = frozenset(map(frozenset, ([0, 1, 5, 6, 8], [4], [2, 3], [7, 9])))


@pytest.fixture
def example_mats():
    return CapabilityMatrices.from_vectors([q for _, q in EXAMPLE_VICTIMS], [p for _, p in EXAMPLE_ROBOTS])


@pytest.fixture
def example_scenario():
    return load_scenario(SCENARIOS / "ten_victims.json")


@pytest.fixture
def walled_scenario():
    return load_scenario(SCENARIOS / "ten_victims_walled.json")


def random_grid(rng: np.random.Generator, h: int, w: int, density: float = 0.25) -> GridMap:
    """Random obstacle map; may be disconnected."""
    blocked = rng.random((h, w)) < density
    blocked[0, 0] = False
    return GridMap(blocked)


def random_connected_grid(rng: np.random.Generator, h: int, w: int, density: float = 0.2) -> GridMap:
    while True:
        g = random_grid(rng, h, w, density)
        if is_connected(g):
            return g


coords = st.tuples(st.integers(0, 40), st.integers(0, 40))


def pytest_terminal_summary(terminalreporter):
    results = getattr(sys.modules.get("test_acceptance"), "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for line in results:
            terminalreporter.write_line(line)
