"""Command line: ``msmrta run|bench|genmap|genscenario|plot``."""
from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import bench, plot
from .generate import gen_map, gen_scenario
from .grid import load_map, save_map
from .pipeline import load_scenario, run_mission, save_scenario


def _write(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def cmd_run(args) -> int:
    scenario = load_scenario(args.scenario)
    if args.psi is not None:
        scenario.psi = args.psi
    if args.beta is not None:
        scenario.beta = args.beta
    if args.seed is not None:
        scenario.seed = args.seed
    scenario.validate()
    report = run_mission(scenario)
    _write(report.to_json(include_timing=not args.no_timing), args.out)
    if report.partial:
        print("warning: scouting did not cover the whole map; report is partial", file=sys.stderr)
    return 0


def cmd_bench(args) -> int:
    data = json.loads(Path(args.sweep).read_text()) if args.sweep else {}
    for key, value in (("repetitions", args.reps), ("seed", args.seed), ("psi", args.psi),
                       ("beta", args.beta), ("parallel", args.parallel)):
        if value is not None:
            data[key] = value
    config = bench.SweepConfig.from_dict(data)
    out = args.out or config.out
    if out is None:
        raise SystemExit("bench needs --out (or 'out' in the sweep file)")
    rows, elapsed = bench.sweep_to_csv(config, out)
    reductions = [r for r in rows if r["algorithm"] == "reduction"]
    print(f"{len(rows)} rows written to {out} in {elapsed:.1f}s", file=sys.stderr)
    if reductions:
        top = [r for r in reductions if r["N"] == max(config.robot_counts) and r["M"] == max(config.victim_counts)]
        for r in top:
            print(f"{r['map_id']} N={r['N']} M={r['M']}: reduction {r['reduction_pct']:.2f}%", file=sys.stderr)
    if args.plot:
        plot.render_plot(rows, args.plot)
    return 0


def cmd_genmap(args) -> int:
    grid = gen_map(args.width, args.height, args.style, args.seed or 0)
    if args.out:
        save_map(grid, args.out)
    else:
        sys.stdout.write(grid.to_text())
    return 0


def cmd_genscenario(args) -> int:
    grid = load_map(args.map)
    map_path = args.map
    if args.out:
        try:
            map_path = str(Path(args.map).resolve().relative_to(Path(args.out).resolve().parent))
        except ValueError:
            map_path = str(Path(args.map).resolve())
    scenario = gen_scenario(grid, args.robots, args.victims, nr=args.nr, seed=args.seed or 0,
                            n_scouts=args.scouts, vfd=args.vfd,
                            psi=0.5 if args.psi is None else args.psi,
                            beta=0.5 if args.beta is None else args.beta, map_path=map_path)
    if args.out:
        save_scenario(scenario, args.out)
    else:
        sys.stdout.write(json.dumps(scenario.to_dict(), indent=2, sort_keys=True) + "\n")
    return 0


def cmd_plot(args) -> int:
    rows = bench.read_csv(args.csv)
    if not rows:
        raise SystemExit(f"{args.csv}: no rows")
    plot.render_plot(rows, args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="msmrta", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="run one mission and write the JSON report")
    p.add_argument("scenario")
    p.add_argument("--out")
    p.add_argument("--seed", type=int)
    p.add_argument("--psi", type=float)
    p.add_argument("--beta", type=float)
    p.add_argument("--no-timing", action="store_true", help="omit planning_time_us from the report")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("bench", help="planning-time sweep, MSMRTA vs MRGA, to CSV")
    p.add_argument("sweep", nargs="?", help="sweep JSON (defaults to the full default sweep)")
    p.add_argument("--out")
    p.add_argument("--seed", type=int)
    p.add_argument("--reps", type=int)
    p.add_argument("--psi", type=float)
    p.add_argument("--beta", type=float)
    p.add_argument("--parallel", type=int)
    p.add_argument("--plot", help="also render an SVG chart here")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("genmap", help="generate a connected procedural map")
    p.add_argument("--width", type=int, default=20)
    p.add_argument("--height", type=int, default=20)
    p.add_argument("--style", choices=["rooms", "walls"], default="rooms")
    p.add_argument("--seed", type=int)
    p.add_argument("--out")
    p.set_defaults(func=cmd_genmap)

    p = sub.add_parser("genscenario", help="random scenario on a map file")
    p.add_argument("--map", required=True)
    p.add_argument("--robots", type=int, required=True)
    p.add_argument("--victims", type=int, required=True)
    p.add_argument("--nr", type=int, default=6)
    p.add_argument("--scouts", type=int, default=2)
    p.add_argument("--vfd", type=int, default=3)
    p.add_argument("--seed", type=int)
    p.add_argument("--psi", type=float)
    p.add_argument("--beta", type=float)
    p.add_argument("--out")
    p.set_defaults(func=cmd_genscenario)

    p = sub.add_parser("plot", help="render sweep CSV to SVG")
    p.add_argument("csv")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_plot)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(asctime)s %(name)s %(message)s")
    return args.func(args)


if __name__ == "__main__":
    raise SystemExit(main())
