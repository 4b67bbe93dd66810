"""Full planning-time sweep (4 maps x N in 2..10 x M in 10..100, 5 reps) to CSV + SVG.

Prints the reduction at the largest cell and any cell where the MSMRTA
median drops as M grows.
"""
import argparse
import logging
import os
from collections import defaultdict
from pathlib import Path

from msmrta import bench
from msmrta.plot import render_plot


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="results/sweep.csv")
    ap.add_argument("--reps", type=int, default=5)
    ap.add_argument("--parallel", type=int, default=os.cpu_count() or 1)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    logging.basicConfig(level=logging.INFO, format="%(asctime)s %(message)s")

    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    config = bench.SweepConfig(repetitions=args.reps, parallel=args.parallel, seed=args.seed)
    rows, elapsed = bench.sweep_to_csv(config, out)
    render_plot(rows, out.with_suffix(".svg"))
    print(f"{len(rows)} rows in {elapsed:.1f}s ({config.parallel} workers)")

    n_max, m_max = max(config.robot_counts), max(config.victim_counts)
    for r in rows:
        if r["algorithm"] == "reduction" and r["N"] == n_max and r["M"] == m_max:
            print(f"{r['map_id']}: reduction {r['reduction_pct']:.2f}%")
    series = defaultdict(list)
    for r in rows:
        if r["algorithm"] == "MSMRTA":
            series[(r["map_id"], r["N"])].append((r["M"], r["median_time_us"]))
    for key, pts in sorted(series.items()):
        pts.sort()
        drops = [m2 for (_, t1), (m2, t2) in zip(pts, pts[1:]) if t2 < t1]
        if drops:
            print(f"{key}: median drops at M={drops}")


if __name__ == "__main__":
    main()
