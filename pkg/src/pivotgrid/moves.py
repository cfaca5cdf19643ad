"""Pivot moves: geometry, clearance footprints and the three move sets.

Set 1 (restrictive), Set 2 (leapfrog) and Set 3 (monkey) are nested.  A
move is a sequence of one or two quarter-turns of the mover about lattice
vertices of its current cell.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

from .grid import (
    Cell,
    Configuration,
    DomainError,
    articulation_modules,
    is_facet_connected,
    neighbors4,
)

RESTRICTIVE, LEAPFROG, MONKEY = 1, 2, 3
SET_NAMES = {RESTRICTIVE: "restrictive", LEAPFROG: "leapfrog", MONKEY: "monkey"}

CW, CCW = "cw", "ccw"

# rejection reasons reported by ``check_move`` / ``IllegalMove``
DISCONNECTS = "disconnects"
COLLISION = "collision"
ADJACENCY = "adjacency-rule"


class IllegalMove(Exception):
    def __init__(self, reason: str, move: "Move | None" = None):
        super().__init__(f"{reason}: {move}" if move is not None else reason)
        self.reason = reason
        self.move = move


@dataclass(frozen=True)
class Rotation:
    pivot: Cell
    direction: str  # CW or CCW

    def inverse(self) -> "Rotation":
        return Rotation(self.pivot, CCW if self.direction == CW else CW)


def _quadrants(pivot: Cell) -> tuple[Cell, Cell, Cell, Cell]:
    """The four cells around a vertex in counterclockwise order UR, UL, LL, LR."""
    px, py = pivot
    return ((px, py), (px - 1, py), (px - 1, py - 1), (px, py - 1))


def cell_corners(c: Cell) -> tuple[Cell, Cell, Cell, Cell]:
    x, y = c
    return ((x, y), (x + 1, y), (x + 1, y + 1), (x, y + 1))


def _quadrant_sequence(cell: Cell, r: Rotation) -> tuple[Cell, Cell, Cell, Cell]:
    """Cells around the pivot starting at ``cell`` in the rotation order."""
    quads = _quadrants(r.pivot)
    try:
        i = quads.index(cell)
    except ValueError:
        raise DomainError(f"pivot {r.pivot} is not a corner of cell {cell}") from None
    step = 1 if r.direction == CCW else -1
    return tuple(quads[(i + k * step) % 4] for k in range(4))


def rotation_image(cell: Cell, r: Rotation) -> Cell:
    """Cell occupied after a quarter-turn of ``cell`` about ``r.pivot``."""
    return _quadrant_sequence(cell, r)[1]


def rotation_footprint(cell: Cell, r: Rotation) -> set[Cell]:
    """Cells other than ``cell`` swept with positive area by a quarter-turn.

    The corner opposite the pivot travels on an arc of radius sqrt(2), so the
    sweep covers the destination plus the two cells just beyond the edge the
    start and destination share.
    """
    dest = rotation_image(cell, r)
    # endpoints of the shared edge are the pivot and ``q``
    if dest[0] != cell[0]:
        ex = max(dest[0], cell[0])
        ends = ((ex, cell[1]), (ex, cell[1] + 1))
    else:
        ey = max(dest[1], cell[1])
        ends = ((cell[0], ey), (cell[0] + 1, ey))
    q = ends[1] if ends[0] == r.pivot else ends[0]
    out = (q[0] - r.pivot[0], q[1] - r.pivot[1])
    return {dest, (cell[0] + out[0], cell[1] + out[1]), (dest[0] + out[0], dest[1] + out[1])}


@dataclass(frozen=True)
class Move:
    mover: Cell
    rotations: tuple[Rotation, ...]

    def __post_init__(self):
        if not 1 <= len(self.rotations) <= 2:
            raise DomainError("a move has one or two rotations")
        if len(self.rotations) == 2:
            a, b = self.rotations
            if a.pivot == b.pivot and a.direction != b.direction:
                raise DomainError("rotation followed by its inverse is not a move")

    @property
    def path(self) -> tuple[Cell, ...]:
        cells = [self.mover]
        for r in self.rotations:
            cells.append(rotation_image(cells[-1], r))
        return tuple(cells)

    @property
    def end(self) -> Cell:
        return self.path[-1]

    @property
    def intermediates(self) -> tuple[Cell, ...]:
        return self.path[1:-1]

    @property
    def signature(self) -> tuple[Cell, Cell, tuple[Cell, ...]]:
        p = self.path
        return (p[0], p[-1], p[1:-1])

    @property
    def kind(self) -> str:
        if len(self.rotations) == 1:
            return "quarter"
        a, b = self.rotations
        if a.pivot == b.pivot:
            return "half"
        dx = self.end[0] - self.mover[0]
        dy = self.end[1] - self.mover[1]
        return "monkey_straight" if dx == 0 or dy == 0 else "monkey_diagonal"

    def footprint(self) -> set[Cell]:
        cells = set()
        cur = self.mover
        for r in self.rotations:
            cells |= rotation_footprint(cur, r)
            cur = rotation_image(cur, r)
        cells.discard(self.mover)
        return cells

    def reversed(self) -> "Move":
        return Move(self.end, tuple(r.inverse() for r in reversed(self.rotations)))

    def translated(self, dx: int, dy: int) -> "Move":
        return Move(
            (self.mover[0] + dx, self.mover[1] + dy),
            tuple(Rotation((r.pivot[0] + dx, r.pivot[1] + dy), r.direction) for r in self.rotations),
        )

    def __str__(self) -> str:
        rots = " ".join(f"PIVOT {r.pivot[0]} {r.pivot[1]} DIR {r.direction}" for r in self.rotations)
        return f"MOVE {self.mover[0]} {self.mover[1]} {rots}"


def _shares_vertex(static, cell: Cell, pivot: Cell) -> bool:
    return any(q != cell and q in static for q in _quadrants(pivot))


def _has_static_neighbor(static, cell: Cell) -> bool:
    return any(n in static for n in neighbors4(cell))


def minimal_set(static, move: Move) -> int | None:
    """Smallest move set containing ``move`` given the static modules.

    Clearance is not checked here; see ``check_move``.
    """
    rots = move.rotations
    start = move.mover
    if len(rots) == 1:
        seq = _quadrant_sequence(start, rots[0])
        q2, q3 = seq[2], seq[3]
        if q3 in static and q2 in static:
            return RESTRICTIVE
        if (q2 in static or q3 in static) and _has_static_neighbor(static, seq[1]):
            return LEAPFROG
        return None
    a, b = rots
    if a.pivot == b.pivot:
        # half-turn: the module it rolls over shares an edge with the start
        seq = _quadrant_sequence(start, a)
        return RESTRICTIVE if seq[3] in static else None
    mid = rotation_image(start, a)
    end = rotation_image(mid, b)
    if end == start:
        return None
    if not _shares_vertex(static, start, a.pivot) or not _shares_vertex(static, mid, b.pivot):
        return None
    if _has_static_neighbor(static, mid) or not _has_static_neighbor(static, end):
        return None
    return MONKEY


def check_move(
    config: Iterable[Cell],
    move: Move,
    set_tag: int = MONKEY,
    diagonal: bool = True,
    static_connected: bool | None = None,
) -> str | None:
    """Return ``None`` if ``move`` is legal in ``config`` under ``set_tag``.

    Otherwise return the first failing reason: ``disconnects``,
    ``collision`` or ``adjacency-rule``.  ``static_connected`` lets callers
    that move many times against the same static set skip the
    connectivity search.
    """
    if move.mover not in config:
        raise DomainError(f"mover {move.mover} is not occupied")
    static = set(config)
    static.discard(move.mover)
    path = move.path  # validates pivots
    if static_connected is None:
        static_connected = is_facet_connected(static)
    if not static_connected:
        return DISCONNECTS
    if any(c in static for c in move.footprint()):
        return COLLISION
    if path[-1] == path[0]:
        return ADJACENCY
    level = minimal_set(static, move) if static else None
    if level is None or level > set_tag:
        return ADJACENCY
    if not diagonal and move.kind == "monkey_diagonal":
        return ADJACENCY
    return None


def is_legal(config, move: Move, set_tag: int = MONKEY, diagonal: bool = True) -> bool:
    return check_move(config, move, set_tag, diagonal) is None


def apply(config, move: Move, set_tag: int = MONKEY, diagonal: bool = True) -> Configuration:
    """Execute a legal move; raises ``IllegalMove`` with the reason code otherwise."""
    reason = check_move(config, move, set_tag, diagonal)
    if reason is not None:
        raise IllegalMove(reason, move)
    cells = set(config)
    cells.discard(move.mover)
    cells.add(move.end)
    return Configuration(cells)


# -- fast enumeration -------------------------------------------------------


@dataclass(frozen=True)
class _Template:
    rotations: tuple[Rotation, ...]
    footprint: tuple[Cell, ...]
    end: Cell
    mid: Cell | None
    kind: str
    q2: Cell | None
    q3: Cell | None
    pivot_cells: tuple[tuple[Cell, ...], ...]


@lru_cache(maxsize=None)
def _templates() -> tuple[_Template, ...]:
    """All one- and two-rotation moves of a mover at the origin."""
    origin = (0, 0)
    out = []
    singles = [Rotation(p, d) for p in cell_corners(origin) for d in (CW, CCW)]
    for r in singles:
        m = Move(origin, (r,))
        seq = _quadrant_sequence(origin, r)
        out.append(_Template((r,), tuple(sorted(m.footprint())), m.end, None, "quarter",
                             seq[2], seq[3], ()))
    for r in singles:
        m = Move(origin, (r, r))
        seq = _quadrant_sequence(origin, r)
        out.append(_Template((r, r), tuple(sorted(m.footprint())), m.end, m.path[1], "half",
                             None, seq[3], ()))
    for a in singles:
        mid = rotation_image(origin, a)
        for p in cell_corners(mid):
            if p == a.pivot:
                continue
            for d in (CW, CCW):
                b = Rotation(p, d)
                m = Move(origin, (a, b))
                if m.end == origin:
                    continue
                pcells = (
                    tuple(q for q in _quadrants(a.pivot) if q != origin),
                    tuple(q for q in _quadrants(b.pivot) if q != mid),
                )
                out.append(_Template((a, b), tuple(sorted(m.footprint())), m.end, mid, m.kind,
                                     None, None, pcells))
    return tuple(out)


def _shift(c: Cell, o: Cell) -> Cell:
    return (c[0] + o[0], c[1] + o[1])


def _template_level(static, t: _Template, o: Cell) -> int | None:
    if t.kind == "quarter":
        q2 = _shift(t.q2, o) in static
        q3 = _shift(t.q3, o) in static
        if q2 and q3:
            return RESTRICTIVE
        if (q2 or q3) and _has_static_neighbor(static, _shift(t.end, o)):
            return LEAPFROG
        return None
    if t.kind == "half":
        return RESTRICTIVE if _shift(t.q3, o) in static else None
    for group in t.pivot_cells:
        if not any(_shift(q, o) in static for q in group):
            return None
    if _has_static_neighbor(static, _shift(t.mid, o)):
        return None
    if not _has_static_neighbor(static, _shift(t.end, o)):
        return None
    return MONKEY


def module_moves(config, mover: Cell, set_tag: int = MONKEY, diagonal: bool = True) -> list[Move]:
    """Legal moves of one module, assuming its removal keeps the rest connected."""
    return [m for _, m in leveled_module_moves(config, mover, set_tag, diagonal)]


def leveled_module_moves(config, mover: Cell, set_tag: int = MONKEY,
                         diagonal: bool = True) -> list[tuple[int, Move]]:
    """Like :func:`module_moves` but paired with the least set allowing each move."""
    static = set(config)
    static.discard(mover)
    if not static:
        return []
    found: dict = {}
    for t in _templates():
        if not diagonal and t.kind == "monkey_diagonal":
            continue
        if any(_shift(c, mover) in static for c in t.footprint):
            continue
        level = _template_level(static, t, mover)
        if level is None or level > set_tag:
            continue
        m = Move(mover, tuple(Rotation(_shift(r.pivot, mover), r.direction) for r in t.rotations))
        sig = m.signature
        # same signature via another pivot: keep the least permissive set
        if sig not in found or level < found[sig][0]:
            found[sig] = (level, m)
    return list(found.values())


def legal_moves(config, set_tag: int = MONKEY, diagonal: bool = True) -> list[Move]:
    """Every legal move of a facet-connected configuration, one per signature."""
    cells = set(config)
    if len(cells) < 2:
        return []
    cut = articulation_modules(cells)
    out = []
    for mover in sorted(cells):
        if mover in cut:
            continue
        out.extend(module_moves(cells, mover, set_tag, diagonal))
    return out


def move_level(config, move: Move) -> int | None:
    """Minimal move set under which ``move`` is legal in ``config`` (clearance included)."""
    for level in (RESTRICTIVE, LEAPFROG, MONKEY):
        if check_move(config, move, level) is None:
            return level
    return None
