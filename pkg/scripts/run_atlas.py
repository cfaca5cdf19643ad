"""Build and save the reconfiguration graphs G_n for small n under all three move sets."""
import argparse
import time
from dataclasses import dataclass
from pathlib import Path

from pivotgrid.atlas import build_graph, reverse_violations, save, summary


@dataclass
class AtlasConfig:
    n_max: int = 8
    out: str = "results/atlas"
    check_reverse: bool = True


def main(cfg: AtlasConfig):
    prev = None
    for n in range(1, cfg.n_max + 1):
        for tag in (1, 2, 3):
            t0 = time.perf_counter()
            g = build_graph(n, tag)
            save(g, Path(cfg.out) / f"n{n}_set{tag}")
            s = summary(g)
            if cfg.check_reverse:
                s["reverse_violations"] = len(reverse_violations(g))
            nested = prev is None or prev[0] != n or prev[1] <= g.edges
            print(" ".join(f"{k}={v}" for k, v in s.items()),
                  f"nested={str(nested).lower()} time={time.perf_counter() - t0:.2f}s")
            prev = (n, g.edges)


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--n-max", type=int, default=8)
    p.add_argument("--out", default="results/atlas")
    p.add_argument("--skip-reverse", action="store_true")
    a = p.parse_args()
    main(AtlasConfig(a.n_max, a.out, not a.skip_reverse))
