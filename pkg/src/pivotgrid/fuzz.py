"""Seeded random configurations and a batch harness for the planner."""
from __future__ import annotations

import random
import time
from collections import Counter
from dataclasses import asdict, dataclass, field

from .grid import Cell, Configuration, neighbors4


def random_config(n: int, rng: random.Random) -> Configuration:
    """Grow from the origin, adding a uniformly chosen empty neighbour each time.

    Not uniform over polyominoes, which property tests do not need.
    """
    cells: set[Cell] = {(0, 0)}
    boundary = set(neighbors4((0, 0)))
    while len(cells) < n:
        c = rng.choice(sorted(boundary))
        cells.add(c)
        boundary.discard(c)
        boundary.update(x for x in neighbors4(c) if x not in cells)
    return Configuration(cells)


@dataclass
class RunReport:
    seed: int
    n: int
    extras_used: int
    total_moves: int
    bridge_invocations: int
    d_histogram: dict = field(default_factory=dict)
    cases: dict = field(default_factory=dict)
    relaxed_floors: int = 0
    wall_time: float = 0.0
    ok: bool = True
    error: str = ""

    def as_dict(self) -> dict:
        return asdict(self)


def run_one(seed: int, n_lo: int, n_hi: int, diagonal: bool = True) -> tuple[RunReport, Configuration, object]:
    """Plan one random configuration to the strip and replay the trace."""
    from .musketeer import to_strip
    from .trace import replay

    rng = random.Random(seed)
    n = rng.randint(n_lo, n_hi)
    cfg = random_config(n, rng)
    t0 = time.perf_counter()
    try:
        state = to_strip(cfg, diagonal)
        final = replay(cfg, state.trace)
        if len(final) != n + state.extras_added:
            raise AssertionError("strip has the wrong length")
    except Exception as exc:  # reported, not raised: the harness dumps and moves on
        rep = RunReport(seed, n, 0, 0, 0, wall_time=time.perf_counter() - t0, ok=False,
                        error=f"{type(exc).__name__}: {exc}")
        return rep, cfg, getattr(exc, "state", None)
    moves = sum(1 for s in state.trace.steps if s.op == "MOVE")
    rep = RunReport(
        seed, n, state.extras_added, moves, len(state.bridges),
        dict(sorted(Counter(state.bridges).items())), dict(sorted(Counter(state.steps).items())),
        sum(p.relaxed_floor for p in state.bridge_plans), time.perf_counter() - t0,
    )
    return rep, cfg, state


def fuzz(seed: int, n_lo: int, n_hi: int, runs: int, diagonal: bool = True):
    """Yield ``(report, config, state)`` for ``runs`` consecutive seeds."""
    for k in range(runs):
        yield run_one(seed + k, n_lo, n_hi, diagonal)
