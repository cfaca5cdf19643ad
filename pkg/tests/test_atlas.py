from collections import deque

import pytest

from conftest import configs
from pivotgrid.atlas import build_graph, classify, enumerate_configs, load, save, summary
from pivotgrid.grid import DomainError, canonical_key, neighbors4
from pivotgrid.moves import RESTRICTIVE, LEAPFROG, MONKEY, apply, legal_moves

# fixed polyominoes, OEIS A001168
COUNTS = [1, 2, 6, 19, 63, 216, 760, 2725]


def grown(n):
    """Canonical growth with deduplication, an independent enumeration."""
    level = {((0, 0),)}
    for _ in range(n - 1):
        nxt = set()
        for key in level:
            cells = set(key)
            for c in key:
                for nb in neighbors4(c):
                    if nb not in cells:
                        nxt.add(canonical_key(cells | {nb}))
        level = nxt
    return level


@pytest.mark.parametrize("n", range(1, 9))
def test_counts(n):
    assert len(configs(n)) == COUNTS[n - 1]


@pytest.mark.parametrize("n", range(1, 8))
def test_matches_growth_oracle(n):
    keys = [canonical_key(c) for c in configs(n)]
    assert len(set(keys)) == len(keys)
    assert set(keys) == grown(n)


def test_domain():
    with pytest.raises(DomainError):
        list(enumerate_configs(0))
    with pytest.raises(DomainError):
        list(enumerate_configs(13))


def bfs_components(n, tag):
    nodes = {canonical_key(c) for c in configs(n)}
    seen = set()
    comps = 0
    for k in sorted(nodes):
        if k in seen:
            continue
        comps += 1
        seen.add(k)
        q = deque([k])
        while q:
            cur = q.popleft()
            for m in legal_moves(cur, tag):
                nk = canonical_key(apply(cur, m, tag))
                if nk not in seen:
                    seen.add(nk)
                    q.append(nk)
    return comps


@pytest.mark.parametrize("n", range(2, 7))
@pytest.mark.parametrize("tag", [RESTRICTIVE, LEAPFROG, MONKEY])
def test_components_match_bfs(n, tag):
    assert build_graph(n, tag).n_components == bfs_components(n, tag)


def test_singleton_is_rigid_but_free():
    g = build_graph(1)
    cls = classify(g)
    assert len(cls["rigid"]) == 1 and len(cls["free"]) == 1 and not cls["locked"]


def test_save_load_roundtrip(tmp_path):
    g = build_graph(5, LEAPFROG)
    save(g, tmp_path)
    h = load(tmp_path)
    assert h.nodes == g.nodes
    assert h.edges == g.edges
    assert summary(h) == summary(g)
    lines = (tmp_path / "summary.txt").read_text().splitlines()
    assert "nodes=63" in lines and "set=2" in lines


def test_parallel_matches_serial():
    assert build_graph(6, MONKEY, workers=2).edges == build_graph(6, MONKEY, workers=1).edges
