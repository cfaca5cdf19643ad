import pytest
from hypothesis import given, settings, strategies as st

from conftest import all_configs, shapes
from pivotgrid.grid import DomainError, articulation_modules, exterior_and_holes, neighbors4
from pivotgrid.moves import check_move
from pivotgrid.traversal import (
    TraversalError, WalkerState, invariant_holds, is_outer_free, rhr_step, start_state, tour,
    traverse_outer_shell, walk_from,
)


def check_tour(static):
    ext, _ = exterior_and_holes(static)
    steps = tour(static)
    assert steps[0][0] == start_state(static) or steps[0][0].position == start_state(static).position
    for k, (w, move) in enumerate(steps):
        assert invariant_holds(static, w)
        assert w.position in ext
        assert move.mover == w.position
        assert check_move(static | {w.position}, move) is None
        nxt = steps[(k + 1) % len(steps)][0].position
        assert move.end == nxt


def test_tours_small_exhaustive():
    for cfg in all_configs(6):
        check_tour(set(cfg))


@given(shapes(max_n=40))
@settings(max_examples=100, deadline=None)
def test_tours_random(cfg):
    check_tour(set(cfg))


@given(st.integers(1, 7), st.integers(1, 7))
def test_rectangle_shell_is_facet_ring(w, h):
    rect = {(x, y) for x in range(w) for y in range(h)}
    ring = {n for c in rect for n in neighbors4(c)} - rect
    shell = traverse_outer_shell(rect)
    assert len(shell) == len(set(shell))
    assert set(shell) == ring


def test_shell_skips_holes():
    ring = {(x, y) for x in range(3) for y in range(3)} - {(1, 1)}
    assert (1, 1) not in traverse_outer_shell(ring)


def test_start_state():
    assert start_state({(0, 0), (2, 0), (1, 0), (2, 1)}) == WalkerState((2, 2), (0, -1))
    with pytest.raises(DomainError):
        start_state(set())


def test_walk_from_reaches_target():
    static = {(x, 0) for x in range(4)}
    moves = walk_from(static, WalkerState((3, 1), (0, -1)), (0, 1))
    pos = (3, 1)
    for m in moves:
        assert m.mover == pos
        pos = m.end
    assert pos == (0, 1)


def test_outer_free_small():
    line = {(0, 0), (1, 0), (2, 0)}
    assert is_outer_free(line, (0, 0)) and is_outer_free(line, (2, 0))
    assert not is_outer_free(line, (1, 0))
    plus = {(1, 1), (0, 1), (2, 1), (1, 0), (1, 2)}
    assert not is_outer_free(plus, (1, 1))


def test_outer_free_modules_can_leave():
    # the first move of an outer-free module is legal in the full configuration
    for cfg in all_configs(6):
        cut = articulation_modules(cfg)
        for c in cfg:
            if is_outer_free(cfg, c, cut):
                static = set(cfg) - {c}
                down = next(n for n in neighbors4(c) if n in static)
                w = WalkerState(c, (down[0] - c[0], down[1] - c[1]))
                if invariant_holds(static, w):
                    move, _ = rhr_step(static, w)
                    assert check_move(cfg, move) is None


# smallest configuration whose clockwise walk needs a diagonal monkey jump:
#   ..##
#   ...#
#   #.##
#   ###.
DIAGONAL_WITNESS = {(0, 0), (0, 1), (1, 0), (2, 0), (2, 1), (2, 3), (3, 1), (3, 2), (3, 3)}


def test_diagonal_jump_witness():
    kinds = [m.kind for _, m in tour(DIAGONAL_WITNESS)]
    assert kinds.count("monkey_diagonal") == 1
    with pytest.raises(TraversalError):
        tour(DIAGONAL_WITNESS, allow_diagonal=False)


def test_no_diagonal_jump_up_to_eight():
    for cfg in all_configs(8):
        tour(set(cfg), allow_diagonal=False)
