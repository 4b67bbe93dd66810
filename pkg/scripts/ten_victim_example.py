"""Ten-victim / four-robot worked example: requirement lists, clusters, stage outputs."""
import argparse
import json
from pathlib import Path

from msmrta.pipeline import load_scenario, run_mission

HERE = Path(__file__).resolve().parent.parent


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--scenario", default=str(HERE / "scenarios" / "ten_victims.json"))
    args = ap.parse_args()

    scenario = load_scenario(args.scenario)
    report = run_mission(scenario)
    d = report.to_dict()
    print(f"scouting: {d['scouting']['steps_taken']} steps, complete={d['scouting']['complete']}")
    for r, (full, part) in enumerate(zip(d["l_full"], d["l_partial"])):
        print(f"robot {r}: full={full} partial={part}")
    print("unavailable:", d["l_unavailable"])
    for c, cl in enumerate(d["clusters"]):
        print(f"cluster {c}: members={cl['members']} center={cl['center']} route={cl['route']}")
    print("B2:", json.dumps(d["b2"]))
    print("B3:", d["b3"])
    print("B4:", d["b4"])
    print("status:", d["victim_status"])
    print(f"travel={d['total_travel_cost']} astar_calls={d['astar_calls']} "
          f"planning={d['planning_time_us']}us")


if __name__ == "__main__":
    main()
