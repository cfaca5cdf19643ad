from collections import deque

import pytest
from hypothesis import given, settings

from conftest import all_configs, shapes
from pivotgrid.grid import Configuration, DomainError, is_strip
from pivotgrid.moves import MONKEY, apply, legal_moves
from pivotgrid.musketeer import classify_step, plan, to_strip
from pivotgrid.trace import replay


def strip_at(anchor, length):
    ax, ay = anchor
    return Configuration((ax - k, ay) for k in range(length))


def check_run(cfg, diagonal=True):
    st = to_strip(cfg, diagonal=diagonal)
    final = replay(cfg, st.trace, diagonal=diagonal)
    assert final == strip_at(min(cfg), len(cfg) + st.extras_added)
    assert st.extras_added <= 5
    return st


def test_single_module():
    st = check_run({(3, 4)})
    assert st.trace.moves == []


def test_small_exhaustive():
    for cfg in all_configs(6):
        check_run(cfg)


def test_small_without_diagonal_jumps():
    for cfg in all_configs(5):
        check_run(cfg, diagonal=False)


@given(shapes(max_n=30))
@settings(max_examples=30, deadline=None)
def test_random(cfg):
    check_run(cfg)


def test_rejects_bad_input():
    with pytest.raises(DomainError):
        to_strip(set())
    with pytest.raises(DomainError):
        to_strip({(0, 0), (2, 0)})
    with pytest.raises(DomainError):
        plan({(0, 0)}, {(0, 0), (1, 0)})


def bfs_distance(src, tgt):
    src, tgt = Configuration(src), Configuration(tgt)
    dist = {src: 0}
    q = deque([src])
    while q:
        cur = q.popleft()
        if cur == tgt:
            return dist[cur]
        for m in legal_moves(cur, MONKEY):
            nxt = apply(cur, m)
            if nxt not in dist:
                dist[nxt] = dist[cur] + 1
                q.append(nxt)
    return None


def test_l_tromino_plan_vs_bfs():
    src = {(0, 0), (1, 0), (0, 1)}
    tgt = {(0, 0), (1, 0), (2, 0)}
    t, info = plan(src, tgt)
    assert replay(src, t) == info["final"] == Configuration(tgt)
    assert info["offset"] == (0, 0)
    assert len(t.moves) >= bfs_distance(src, tgt) == 2
    assert to_strip(src).trace.moves  # needs at least one move


def test_plan_ends_at_translated_target():
    src = {(0, 0), (1, 0), (1, 1), (1, 2)}
    tgt = {(5, 5), (5, 6), (6, 6), (7, 6)}
    t, info = plan(src, tgt)
    assert info["offset"] == (-5, -5)
    assert replay(src, t) == Configuration(tgt).translate(-5, -5)
    assert not any(is_strip(c) for c in (src, tgt))


def test_classify_step_cases():
    # m = (2, 2); b1 = (1, 2) is a leaf
    case, names = classify_step({(2, 2), (1, 2), (2, 1), (2, 0)})
    assert case == "r1" and names["b1"] == (1, 2)
    with pytest.raises(DomainError):
        classify_step({(0, 0), (1, 0)})
