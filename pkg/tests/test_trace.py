import pytest
from hypothesis import given, settings, strategies as st

from conftest import all_configs, shapes
from pivotgrid.moves import CCW, CW, LEAPFROG, MONKEY, Move, Rotation, check_move, legal_moves, rotation_footprint
from pivotgrid.musketeer import to_strip
from pivotgrid.shapes import ShapeError, emit_shape, parse_shape
from pivotgrid.trace import (
    ReplayError, Step, Trace, TraceFormatError, config_hash, emit_trace, parse_trace,
    quarter_image, replay, replay_move_level, swept_cells,
)


def test_hash_order_independent():
    assert config_hash([(1, 0), (0, 0)]) == config_hash({(0, 0), (1, 0)})
    assert len(config_hash({(0, 0)})) == 16
    assert config_hash({(0, 0)}) != config_hash({(1, 0)})


@pytest.mark.parametrize("direction", [CW, CCW])
def test_independent_geometry_agrees(direction):
    for pivot in ((0, 0), (1, 0), (0, 1), (1, 1)):
        r = Rotation(pivot, direction)
        assert swept_cells((0, 0), pivot, direction) == rotation_footprint((0, 0), r)
        assert quarter_image((0, 0), pivot, direction) == Move((0, 0), (r,)).end


def test_independent_levels_agree():
    for cfg in all_configs(5):
        for m in legal_moves(cfg, MONKEY):
            static = set(cfg) - {m.mover}
            lvl = replay_move_level(static, m)
            assert lvl is not None
            for tag in (1, 2, 3):
                assert (check_move(cfg, m, tag) is None) == (lvl <= tag)


def test_roundtrip_text():
    st_ = to_strip({(0, 0), (1, 0), (1, 1), (2, 1)})
    text = emit_trace(st_.trace)
    again = parse_trace(text)
    assert emit_trace(again) == text
    assert [str(s) for s in again.steps] == [str(s) for s in st_.trace.steps]
    assert text.startswith("# ANCHOR 0 0\n")


def test_parse_errors_carry_line_numbers():
    good = "MOVE 0 1 PIVOT 1 1 DIR cw SET 1\n"
    with pytest.raises(TraceFormatError) as err:
        parse_trace("# c\n" + good + "MOVE 0 0 PIVOT 1 1 DIR up SET 1\n")
    assert err.value.lineno == 3
    for bad in ("JUMP 1 2", "MOVE 0 0 SET 1", "MOVE 0 0 PIVOT 1 1 DIR cw", "ADD 1",
                "MOVE 0 0 PIVOT 1 1 DIR cw SET 4", "ADD 1 2 HASH", "ADD 1 2 x y"):
        with pytest.raises(TraceFormatError):
            parse_trace(bad)


def test_replay_rejects_wrong_set():
    # a leapfrog quarter-turn tagged restrictive
    cfg, m = next((c, m) for c in all_configs(7) for m in legal_moves(c, LEAPFROG)
                  if check_move(c, m, 1) is not None)
    t = Trace([Step("MOVE", m, set_tag=1)])
    with pytest.raises(ReplayError) as err:
        replay(cfg, t)
    assert err.value.index == 0 and err.value.reason == "adjacency-rule"
    t.steps[0].set_tag = 2
    replay(cfg, t)


def test_add_remove_rules():
    with pytest.raises(ReplayError):
        replay({(0, 0)}, Trace([Step("ADD", cell=(0, 0))]))
    with pytest.raises(ReplayError):
        replay({(0, 0)}, Trace([Step("ADD", cell=(5, 5))]))
    assert replay({(0, 0)}, Trace([Step("ADD", cell=(1, 0)), Step("REMOVE", cell=(0, 0))])) == {(1, 0)}


@given(shapes(min_n=3, max_n=25), st.data())
@settings(max_examples=40, deadline=None)
def test_corruption_detected_at_index(cfg, data):
    st_ = to_strip(cfg)
    moves = [i for i, s in enumerate(st_.trace.steps) if s.op == "MOVE"]
    if not moves:
        return
    k = data.draw(st.sampled_from(moves))
    text = emit_trace(st_.trace).splitlines()
    steps = [i for i, line in enumerate(text) if not line.startswith("#")]
    line = text[steps[k]].split()
    line[1] = str(int(line[1]) + 1)  # shift the mover one cell East
    text[steps[k]] = " ".join(line)
    with pytest.raises(ReplayError) as err:
        replay(cfg, parse_trace("\n".join(text)))
    assert err.value.index == k


def test_shape_formats():
    grid = "#..\n###\n"
    cfg = parse_shape(grid)
    assert cfg == {(0, 1), (0, 0), (1, 0), (2, 0)}
    assert parse_shape("; comment\n0 1\n0 0\n\n1 0\n2 0\n") == cfg
    assert parse_shape(emit_shape(cfg)) == cfg
    assert parse_shape(emit_shape(cfg, "grid")) == cfg
    with pytest.raises(ShapeError) as err:
        parse_shape("0 0\n0 0\n")
    assert err.value.lineno == 2
    with pytest.raises(ShapeError):
        parse_shape("0 x\n")


@given(shapes(max_n=30))
@settings(max_examples=50)
def test_shape_roundtrip(cfg):
    assert parse_shape(emit_shape(cfg)) == cfg
