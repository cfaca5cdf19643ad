import pytest
from hypothesis import given, settings

from conftest import all_configs, shapes
from pivotgrid.grid import (
    Configuration,
    DomainError,
    articulation_modules,
    biconnected_blocks,
    canonical_key,
    components,
    corners,
    exterior_and_holes,
    is_facet_connected,
    is_strip,
    potential,
    potential_extremes,
    potential_gap,
)


def brute_cut(cells):
    return {c for c in cells if len(components(set(cells) - {c})) > 1}


def euler_holes(cells):
    """Holes of the closed union of squares: 1 - (V - E + F)."""
    verts, edges = set(), set()
    for x, y in cells:
        corners_ = [(x, y), (x + 1, y), (x + 1, y + 1), (x, y + 1)]
        verts.update(corners_)
        for k in range(4):
            edges.add(frozenset((corners_[k], corners_[(k + 1) % 4])))
    return 1 - (len(verts) - len(edges) + len(cells))


def test_articulation_matches_bruteforce_small():
    for cfg in all_configs(7):
        assert articulation_modules(cfg) == brute_cut(cfg)


@given(shapes(max_n=40))
@settings(max_examples=150, deadline=None)
def test_articulation_matches_bruteforce_random(cfg):
    assert articulation_modules(cfg) == brute_cut(cfg)


@given(shapes(max_n=40))
@settings(max_examples=150, deadline=None)
def test_holes_match_euler(cfg):
    _, holes = exterior_and_holes(cfg)
    assert len(holes) == euler_holes(cfg)


def test_holes_ring():
    ring = Configuration((x, y) for x in range(3) for y in range(3) if (x, y) != (1, 1))
    ext, holes = exterior_and_holes(ring)
    assert holes == [{(1, 1)}]
    assert (1, 1) not in ext


def test_blocks_cover_edges():
    for cfg in all_configs(6):
        edges = {frozenset((c, (c[0] + dx, c[1] + dy)))
                 for c in cfg for dx, dy in ((1, 0), (0, 1)) if (c[0] + dx, c[1] + dy) in cfg}
        blocks = biconnected_blocks(cfg)
        assert set().union(*blocks) == edges if blocks else not edges
        assert sum(len(b) for b in blocks) == len(edges)


def test_disconnected_rejected():
    with pytest.raises(DomainError):
        articulation_modules({(0, 0), (2, 0)})
    assert not is_facet_connected({(0, 0), (1, 1)})


def test_corners_of_square():
    sq = {(0, 0), (1, 0), (0, 1), (1, 1)}
    assert corners(sq) == sq
    assert corners({(0, 0), (1, 0), (2, 0)}) == {(0, 0), (2, 0)}


def test_potential_order():
    assert potential((2, 0)) > potential((1, 1)) > potential((0, 1))
    hi, lo, top = potential_extremes({(0, 0), (1, 1), (2, 0)})
    assert top == (2, 0) and lo == (0, 0) and hi == (2, 2)
    assert potential_gap({(0, 0), (2, 0)}) == (2, 2)


@given(shapes(max_n=20))
def test_canonical_key_translation_invariant(cfg):
    assert canonical_key(cfg) == canonical_key(Configuration(cfg).translate(7, -3))


def test_is_strip():
    assert is_strip({(0, 0), (1, 0), (2, 0)})
    assert is_strip({(4, 1), (4, 2)})
    assert not is_strip({(0, 0), (2, 0)})
    assert not is_strip({(0, 0), (1, 0), (1, 1)})
    assert not is_strip(set())
