"""A* call counts of the greedy baseline vs MSMRTA as the victim count grows."""
import numpy as np

from msmrta.baseline import mrga_assign
from msmrta.generate import gen_map, gen_scenario
from msmrta.pathplan import AStarCounter
from msmrta.pipeline import plan_mission

grid = gen_map(20, 20, "rooms", seed=1)
ms = list(range(10, 101, 10))
for n in (2, 6, 10):
    ours, theirs = [], []
    for m in ms:
        sc = gen_scenario(grid, n, m, seed=m)
        ours.append(plan_mission(sc, sc.victims).astar_calls)
        theirs.append(mrga_assign(grid, sc.robots, sc.victims, AStarCounter()).astar_calls)
    slope = np.polyfit(np.log(ms), np.log(theirs), 1)[0]
    print(f"N={n:2d} msmrta={ours}")
    print(f"     mrga  ={theirs}  log-log slope {slope:.2f}")
