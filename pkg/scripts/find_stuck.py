"""Hill-climb for configurations that draining alone cannot finish.

Random growth almost never produces them, so the bridging tests replay
the ones found here (tests/data/stuck.txt, one JSON cell list per line).
"""
import argparse
import json
import random
from dataclasses import dataclass

from pivotgrid.fuzz import random_config
from pivotgrid.grid import articulation_modules, neighbors4
from pivotgrid.musketeer import PlannerState, drain_outer_free


@dataclass
class ClimbConfig:
    seed: int = 0
    n: int = 16
    iterations: int = 3000


def left_after_drain(cells) -> int:
    st = PlannerState(set(cells), min(cells))
    drain_outer_free(st)
    return len(st.config) - 1


def climb(cfg: ClimbConfig):
    rng = random.Random(cfg.seed)
    cur = set(random_config(cfg.n, rng))
    score = left_after_drain(cur)
    for _ in range(cfg.iterations):
        cand = set(cur)
        for _ in range(rng.randint(1, 2)):
            gone = rng.choice(sorted(cand - articulation_modules(cand)))
            cand.discard(gone)
            cand.add(rng.choice(sorted({n for c in cand for n in neighbors4(c)} - cand - {gone})))
        s = left_after_drain(cand)
        if s >= score:
            cur, score = cand, s
            if score > 0:
                return sorted(cur)
    return None


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--n", type=int, default=16)
    p.add_argument("--iterations", type=int, default=3000)
    a = p.parse_args()
    found = climb(ClimbConfig(a.seed, a.n, a.iterations))
    if found:
        print(json.dumps(found))
