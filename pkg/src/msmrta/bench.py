"""Planning-time sweep: MSMRTA vs the MRGA baseline over maps x robots x victims."""
from __future__ import annotations

import csv
import dataclasses
import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .baseline import mrga_assign
from .generate import gen_map, gen_scenario
from .grid import load_map
from .pathplan import AStarCounter
from .pipeline import Scenario, TimingStats, plan_mission, run_scouting, time_call

log = logging.getLogger(__name__)

COLUMNS = ["map_id", "N", "M", "algorithm", "median_time_us", "mean_time_us",
           "total_travel_cost", "astar_calls", "reduction_pct", "status"]

DEFAULT_MAPS = ({"style": "rooms", "seed": 1}, {"style": "rooms", "seed": 2},
                {"style": "walls", "seed": 3}, {"style": "walls", "seed": 4})


@dataclass
class SweepConfig:
    robot_counts: list[int] = field(default_factory=lambda: [2, 4, 6, 8, 10])
    victim_counts: list[int] = field(default_factory=lambda: list(range(10, 101, 10)))
    maps: list = field(default_factory=lambda: list(DEFAULT_MAPS))
    repetitions: int = 5
    seed: int = 0
    nr: int = 6
    psi: float = 0.5
    beta: float = 0.5
    width: int = 20
    height: int = 20
    parallel: int = 1
    out: str | None = None

    def __post_init__(self):
        counts = list(self.robot_counts) + list(self.victim_counts)
        if not counts or min(counts) < 1 or self.repetitions < 1:
            raise ValueError("robot/victim counts and repetitions must be >= 1")
        if min(self.victim_counts) < max(self.robot_counts):
            raise ValueError("every cell needs at least as many victims as robots")

    @classmethod
    def from_dict(cls, data: dict) -> SweepConfig:
        names = {f.name for f in dataclasses.fields(cls)}
        unknown = set(data) - names
        if unknown:
            raise ValueError(f"unknown sweep keys: {sorted(unknown)}")
        return cls(**data)

    def map_label(self, i: int) -> str:
        spec = self.maps[i]
        if isinstance(spec, dict):
            return f"map{i}-{spec.get('style', 'rooms')}-s{spec.get('seed', 0)}"
        return f"map{i}-{Path(spec).stem}"

    def build_map(self, i: int):
        spec = self.maps[i]
        if isinstance(spec, dict):
            return gen_map(self.width, self.height, spec.get("style", "rooms"), spec.get("seed", 0))
        return load_map(spec)


def cell_seed(base: int, map_index: int, n_robots: int) -> int:
    return int(np.random.SeedSequence([base, map_index, n_robots]).generate_state(1)[0])


def with_victim_prefix(scenario: Scenario, m: int) -> Scenario:
    return dataclasses.replace(scenario, victims=scenario.victims[:m])


def _sweep_robot_count(config: SweepConfig, map_index: int, n: int) -> list[dict]:
    """All victim counts for one (map, N); victims of smaller M are a prefix of larger M.

    Repetitions are interleaved round-robin over the M values, so a burst of
    machine noise lands on one sample per cell and the median absorbs it.
    """
    grid = config.build_map(map_index)
    label = config.map_label(map_index)
    base = gen_scenario(grid, n, max(config.victim_counts), nr=config.nr,
                        seed=cell_seed(config.seed, map_index, n), psi=config.psi, beta=config.beta)
    # scout motion ignores victims, so one mission serves every prefix
    all_found = run_scouting(base).found
    cells = {}
    for m in sorted(config.victim_counts):
        cells[m] = {"scenario": with_victim_prefix(base, m), "found": [v for v in all_found if v.id < m],
                    "ours": [], "theirs": [], "error": None}
    for _ in range(config.repetitions):
        for m, cell in cells.items():
            if cell["error"] is not None:
                continue
            scenario, found = cell["scenario"], cell["found"]
            try:
                ours, cell["planned"] = time_call(lambda: plan_mission(scenario, found), 1)
                theirs, cell["baseline"] = time_call(
                    lambda: mrga_assign(grid, scenario.robots, found, AStarCounter()), 1)
            except Exception as exc:  # flag the cell, keep sweeping
                log.exception("cell %s N=%d M=%d failed", label, n, m)
                cell["error"] = exc
                continue
            cell["ours"] += ours.samples_us
            cell["theirs"] += theirs.samples_us
    rows = []
    for m, cell in cells.items():
        common = {"map_id": label, "N": n, "M": m}
        if cell["error"] is not None:
            rows.append({**common, "algorithm": "error", "status": f"error: {cell['error']}"})
            continue
        ours, theirs = TimingStats(cell["ours"]), TimingStats(cell["theirs"])
        planned, baseline = cell["planned"], cell["baseline"]
        rows.append({**common, "algorithm": "MSMRTA", "median_time_us": ours.median,
                     "mean_time_us": round(ours.mean, 1), "total_travel_cost": planned.total_travel_cost,
                     "astar_calls": planned.astar_calls, "status": "ok"})
        rows.append({**common, "algorithm": "MRGA", "median_time_us": theirs.median,
                     "mean_time_us": round(theirs.mean, 1), "total_travel_cost": baseline.total_travel_cost,
                     "astar_calls": baseline.astar_calls, "status": "ok"})
        rows.append({**common, "algorithm": "reduction",
                     "reduction_pct": round(100.0 * (1.0 - ours.median / theirs.median), 2), "status": "ok"})
        log.info("%s N=%d M=%d msmrta=%.0fus mrga=%.0fus", label, n, m, ours.median, theirs.median)
    return rows


def run_sweep(config: SweepConfig, writer=None) -> list[dict]:
    """Run every cell; rows are passed to ``writer`` (if any) as each (map, N) block finishes."""
    jobs = [(i, n) for i in range(len(config.maps)) for n in config.robot_counts]
    rows = []

    def emit(block):
        rows.extend(block)
        if writer is not None:
            writer(block)

    if config.parallel > 1:
        with ProcessPoolExecutor(max_workers=config.parallel) as pool:
            futures = [pool.submit(_sweep_robot_count, config, i, n) for i, n in jobs]
            for fut in futures:
                emit(fut.result())
    else:
        for i, n in jobs:
            emit(_sweep_robot_count(config, i, n))
    return rows


class CsvSink:
    """Single writer for sweep rows; header written once."""

    def __init__(self, path):
        self.path = Path(path)
        self._fh = self.path.open("w", newline="")
        self._w = csv.DictWriter(self._fh, fieldnames=COLUMNS, restval="")
        self._w.writeheader()

    def __call__(self, block):
        self._w.writerows(block)
        self._fh.flush()

    def close(self):
        self._fh.close()


def write_csv(rows, path) -> None:
    sink = CsvSink(path)
    sink(rows)
    sink.close()


def read_csv(path) -> list[dict]:
    with open(path, newline="") as fh:
        return list(csv.DictReader(fh))


def sweep_to_csv(config: SweepConfig, path) -> tuple[list[dict], float]:
    sink = CsvSink(path)
    t0 = time.perf_counter()
    try:
        rows = run_sweep(config, sink)
    finally:
        sink.close()
    return rows, time.perf_counter() - t0
