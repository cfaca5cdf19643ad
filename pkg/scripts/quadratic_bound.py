"""Move counts for turning a vertical strip into a horizontal one, n = 8, 16, 32, 64."""
import argparse
from dataclasses import dataclass, field

from pivotgrid.musketeer import plan, to_strip
from pivotgrid.trace import replay


@dataclass
class BoundConfig:
    sizes: list = field(default_factory=lambda: [8, 16, 32, 64])


def main(cfg: BoundConfig):
    rows = []
    for n in cfg.sizes:
        vertical = {(0, y) for y in range(n)}
        horizontal = {(x, 0) for x in range(n)}
        half = len(to_strip(vertical).trace.moves)
        t, info = plan(vertical, horizontal)
        assert replay(vertical, t) == info["final"]
        rows.append((n, half, len(t.moves)))
    print("n to_strip_moves plan_moves plan/n^2")
    for n, half, full in rows:
        print(n, half, full, round(full / n ** 2, 4))
    for (n, _, a), (m, _, b) in zip(rows, rows[1:]):
        print(f"moves({m})/moves({n}) = {b / a:.3f}")
    print(f"C = {max(full / n ** 2 for n, _, full in rows):.4f}")


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--sizes", type=int, nargs="+", default=[8, 16, 32, 64])
    main(BoundConfig(p.parse_args().sizes))
