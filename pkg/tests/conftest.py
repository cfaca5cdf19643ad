import json
import random
from functools import lru_cache
from pathlib import Path

from hypothesis import strategies as st

from pivotgrid.atlas import enumerate_configs
from pivotgrid.fuzz import random_config

DATA = Path(__file__).parent / "data"


@lru_cache(maxsize=None)
def configs(n):
    return tuple(enumerate_configs(n))


def all_configs(max_n=8):
    for n in range(1, max_n + 1):
        yield from configs(n)


@lru_cache(maxsize=None)
def random_corpus(count=500, n_max=60, seed=0):
    """``count`` seeded random configurations with 1 <= n <= n_max."""
    out = []
    for k in range(count):
        rng = random.Random(seed + k)
        out.append(random_config(rng.randint(1, n_max), rng))
    return tuple(out)


def stuck_corpus():
    """Configurations with no outer-free module after draining (found by hill climbing)."""
    out = []
    for line in (DATA / "stuck.txt").read_text().splitlines():
        if line.strip():
            out.append(frozenset(tuple(c) for c in json.loads(line)))
    return out


@st.composite
def shapes(draw, min_n=1, max_n=25):
    """Random facet-connected configurations via seeded growth."""
    n = draw(st.integers(min_n, max_n))
    seed = draw(st.integers(0, 2**32 - 1))
    return random_config(n, random.Random(seed))


@lru_cache(maxsize=None)
def stuck_runs():
    """``(config, PlannerState)`` for every stuck-corpus configuration."""
    from pivotgrid.musketeer import to_strip

    return tuple((cfg, to_strip(cfg)) for cfg in stuck_corpus())


# one line per acceptance criterion, repeated at the end of the run
ACCEPTANCE: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE:
            terminalreporter.write_line(line)
