"""Aggregate fuzz runs: bridging distances, reconfiguration cases, extras, failures."""
import argparse
from collections import Counter
from dataclasses import dataclass

from pivotgrid.fuzz import fuzz


@dataclass
class FuzzConfig:
    seed: int = 0
    runs: int = 200
    n_min: int = 2
    n_max: int = 60


def main(cfg: FuzzConfig):
    d_hist, cases, extras = Counter(), Counter(), Counter()
    failed = []
    relaxed = 0
    for rep, _, _ in fuzz(cfg.seed, cfg.n_min, cfg.n_max, cfg.runs):
        if not rep.ok:
            failed.append((rep.seed, rep.error))
            continue
        d_hist.update({int(k): v for k, v in rep.d_histogram.items()})
        cases.update(rep.cases)
        extras[rep.extras_used] += 1
        relaxed += rep.relaxed_floors
    print(f"runs={cfg.runs} failed={len(failed)} extras={dict(sorted(extras.items()))}")
    print(f"bridges d={dict(sorted(d_hist.items()))} relaxed_floor={relaxed}")
    print(f"cases={dict(sorted(cases.items()))}")
    for seed, err in failed:
        print(f"seed {seed}: {err}")


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--runs", type=int, default=200)
    p.add_argument("--n-min", type=int, default=2)
    p.add_argument("--n-max", type=int, default=60)
    a = p.parse_args()
    main(FuzzConfig(a.seed, a.runs, a.n_min, a.n_max))
