import re

from pivotgrid.musketeer import to_strip
from pivotgrid.render import render_frames, render_svg
from pivotgrid.traversal import traverse_outer_shell

L = {(0, 0), (1, 0), (0, 1)}


def test_deterministic():
    assert render_svg(L) == render_svg(set(reversed(sorted(L))))


def test_classes_and_coordinates():
    svg = render_svg(L, highlight=(0, 1), shell=traverse_outer_shell(L))
    mods = re.findall(r'class="(?:module|mover)" data-x="(-?\d+)" data-y="(-?\d+)"', svg)
    assert {(int(x), int(y)) for x, y in mods} == L
    assert svg.count('class="shell"') == len(traverse_outer_shell(L))
    assert 'class="mover" data-x="0" data-y="1"' in svg


def test_frame_count(tmp_path):
    st = to_strip(L)
    paths = render_frames(L, st.trace, tmp_path)
    assert len(paths) == len(st.trace.steps) + 1
    assert sorted(p.name for p in tmp_path.iterdir())[0] == "frame_0000.svg"
