"""Reconfigure every configuration with n <= N to the strip and replay each trace."""
import argparse
import time
from collections import Counter
from dataclasses import dataclass

from pivotgrid.atlas import enumerate_configs
from pivotgrid.musketeer import to_strip
from pivotgrid.trace import replay


@dataclass
class SweepConfig:
    n_max: int = 8
    diagonal: bool = True


def main(cfg: SweepConfig):
    t_all = time.perf_counter()
    for n in range(1, cfg.n_max + 1):
        t0 = time.perf_counter()
        extras, cases = Counter(), Counter()
        moves = bridges = 0
        for c in enumerate_configs(n):
            st = to_strip(c, cfg.diagonal)
            replay(c, st.trace, cfg.diagonal)
            extras[st.extras_added] += 1
            cases.update(st.steps)
            moves += len(st.trace.moves)
            bridges += len(st.bridges)
        print(f"n={n} configs={sum(extras.values())} moves={moves} bridges={bridges} "
              f"extras={dict(extras)} cases={dict(cases)} time={time.perf_counter() - t0:.1f}s")
    print(f"total {time.perf_counter() - t_all:.1f}s")


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--n-max", type=int, default=8)
    p.add_argument("--no-diagonal-jumps", action="store_true")
    a = p.parse_args()
    main(SweepConfig(a.n_max, not a.no_diagonal_jumps))
