import json
import xml.etree.ElementTree as ET

import pytest

from conftest import SCENARIOS
from msmrta import bench
from msmrta.cli import main
from msmrta.plot import _nice_max, render_svg

SMALL = {"robot_counts": [2], "victim_counts": [4, 6], "maps": [{"style": "walls", "seed": 3}],
         "repetitions": 1, "width": 12, "height": 12}


def test_single_cell_sweep_rows():
    config = bench.SweepConfig.from_dict({**SMALL, "victim_counts": [4]})
    rows = bench.run_sweep(config)
    assert [r["algorithm"] for r in rows] == ["MSMRTA", "MRGA", "reduction"]
    assert all(r["status"] == "ok" for r in rows)
    red = rows[2]["reduction_pct"]
    assert red == pytest.approx(100 * (1 - rows[0]["median_time_us"] / rows[1]["median_time_us"]), abs=0.01)


def test_victim_prefixes_share_a_base():
    config = bench.SweepConfig.from_dict(SMALL)
    grid = config.build_map(0)
    base = bench.gen_scenario(grid, 2, 6, seed=bench.cell_seed(0, 0, 2))
    small = bench.with_victim_prefix(base, 4)
    assert small.victims == base.victims[:4] and small.robots == base.robots


def test_sweep_config_validation():
    with pytest.raises(ValueError):
        bench.SweepConfig.from_dict({"bogus": 1})
    with pytest.raises(ValueError):
        bench.SweepConfig(robot_counts=[5], victim_counts=[3])
    assert bench.SweepConfig().repetitions == 5


def test_csv_roundtrip_and_plot(tmp_path):
    config = bench.SweepConfig.from_dict(SMALL)
    rows, elapsed = bench.sweep_to_csv(config, tmp_path / "out.csv")
    back = bench.read_csv(tmp_path / "out.csv")
    assert len(back) == len(rows) == 6 and elapsed > 0
    assert list(back[0]) == bench.COLUMNS
    svg = render_svg(back)
    root = ET.fromstring(svg)
    series = [e for e in root.iter() if e.get("class") == "series"]
    assert len(series) == 2  # one robot count, two algorithm panels


def test_nice_max():
    assert _nice_max(0) == 1.0
    assert _nice_max(7.3) == 10
    assert _nice_max(130) == 200
    assert all(_nice_max(v) >= v for v in (0.2, 1, 9.99, 250, 12345))


def test_plot_rejects_empty():
    with pytest.raises(ValueError):
        render_svg([])


def test_cli_run_is_byte_deterministic(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    scen = str(SCENARIOS / "ten_victims.json")
    assert main(["run", scen, "--out", str(a), "--no-timing"]) == 0
    assert main(["run", scen, "--out", str(b), "--no-timing"]) == 0
    assert a.read_bytes() == b.read_bytes()
    assert "planning_time_us" not in json.loads(a.read_text())


def test_cli_generate_then_run(tmp_path):
    mp, sp = tmp_path / "m.txt", tmp_path / "s.json"
    assert main(["genmap", "--style", "walls", "--seed", "5", "--width", "12", "--height", "12",
                 "--out", str(mp)]) == 0
    assert main(["genscenario", "--map", str(mp), "--robots", "3", "--victims", "6", "--seed", "1",
                 "--out", str(sp)]) == 0
    assert json.loads(sp.read_text())["map_path"] == "m.txt"
    assert main(["run", str(sp), "--out", str(tmp_path / "r.json")]) == 0
    assert "planning_time_us" in json.loads((tmp_path / "r.json").read_text())


def test_cli_bench_and_plot(tmp_path):
    sweep = tmp_path / "sweep.json"
    sweep.write_text(json.dumps(SMALL))
    out = tmp_path / "b.csv"
    assert main(["bench", str(sweep), "--out", str(out), "--plot", str(tmp_path / "b.svg")]) == 0
    assert main(["plot", str(out), "--out", str(tmp_path / "c.svg")]) == 0
    assert (tmp_path / "b.svg").read_text() == (tmp_path / "c.svg").read_text()
