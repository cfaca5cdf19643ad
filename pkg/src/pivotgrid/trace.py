"""Trace files and an independent replay validator.

A trace is a sequence of lines::

    MOVE x y PIVOT px py DIR cw|ccw [PIVOT px2 py2 DIR d2] SET k HASH h
    ADD x y HASH h
    REMOVE x y HASH h
    # free-form comment

``HASH`` is the digest of the configuration after the step; ``ADD`` and
``REMOVE`` bring helper modules in and out.  Comments are kept in order
but ignored by the replayer.

The replayer deliberately does not reuse :mod:`pivotgrid.moves`: it
re-derives rotation images and swept cells from sampled continuous
rotations and re-states the move-set rules, so a bug in the planner's
move generator cannot hide itself.
"""
from __future__ import annotations

import hashlib
import math
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache

from .grid import Cell, Configuration, DomainError
from .moves import CCW, CW, MONKEY, Move, Rotation

OPS = ("MOVE", "ADD", "REMOVE")


def config_hash(cells) -> str:
    """Stable 64-bit digest of a cell set, as 16 hex digits."""
    text = ";".join(f"{x},{y}" for x, y in sorted(cells))
    return hashlib.blake2b(text.encode(), digest_size=8).hexdigest()


@dataclass
class Step:
    op: str  # MOVE, ADD or REMOVE
    move: Move | None = None
    cell: Cell | None = None
    set_tag: int = MONKEY
    hash: str | None = None

    def target(self) -> Cell:
        return self.move.mover if self.move is not None else self.cell

    def __str__(self) -> str:
        if self.op == "MOVE":
            s = f"{self.move} SET {self.set_tag}"
        else:
            s = f"{self.op} {self.cell[0]} {self.cell[1]}"
        if self.hash is not None:
            s += f" HASH {self.hash}"
        return s


@dataclass
class Trace:
    """Steps interleaved with comment lines.

    ``items`` holds ``Step`` objects and comment strings (without ``#``).
    """

    items: list = field(default_factory=list)

    @property
    def steps(self) -> list[Step]:
        return [s for s in self.items if isinstance(s, Step)]

    @property
    def moves(self) -> list[Move]:
        return [s.move for s in self.items if isinstance(s, Step) and s.op == "MOVE"]

    def __len__(self) -> int:
        return len(self.steps)

    def comment(self, text: str) -> None:
        self.items.append(text)

    def comments(self) -> list[str]:
        return [s for s in self.items if isinstance(s, str)]

    def extend(self, other: "Trace") -> None:
        self.items.extend(other.items)


class TraceFormatError(DomainError):
    def __init__(self, lineno: int, msg: str):
        super().__init__(f"line {lineno}: {msg}")
        self.lineno = lineno


def _parse_step(tokens: list[str], lineno: int) -> Step:
    op = tokens[0]
    try:
        if op == "MOVE":
            x, y = int(tokens[1]), int(tokens[2])
            i = 3
            rots = []
            while i < len(tokens) and tokens[i] == "PIVOT":
                px, py = int(tokens[i + 1]), int(tokens[i + 2])
                if tokens[i + 3] != "DIR" or tokens[i + 4] not in (CW, CCW):
                    raise TraceFormatError(lineno, "expected DIR cw|ccw")
                rots.append(Rotation((px, py), tokens[i + 4]))
                i += 5
            if not rots:
                raise TraceFormatError(lineno, "MOVE without PIVOT")
            if i >= len(tokens) or tokens[i] != "SET":
                raise TraceFormatError(lineno, "MOVE without SET")
            set_tag = int(tokens[i + 1])
            if set_tag not in (1, 2, 3):
                raise TraceFormatError(lineno, f"bad move set {set_tag}")
            i += 2
            step = Step("MOVE", Move((x, y), tuple(rots)), set_tag=set_tag)
        elif op in ("ADD", "REMOVE"):
            step = Step(op, cell=(int(tokens[1]), int(tokens[2])))
            i = 3
        else:
            raise TraceFormatError(lineno, f"unknown keyword {op!r}")
        if i < len(tokens):
            if tokens[i] != "HASH" or i + 2 != len(tokens):
                raise TraceFormatError(lineno, "trailing tokens")
            step.hash = tokens[i + 1]
    except (IndexError, ValueError) as exc:
        if isinstance(exc, TraceFormatError):
            raise
        raise TraceFormatError(lineno, f"malformed step: {exc}") from None
    return step


def parse_trace(text: str) -> Trace:
    t = Trace()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            t.items.append(line[1:].strip())
            continue
        t.items.append(_parse_step(line.split(), lineno))
    return t


def emit_trace(t: Trace) -> str:
    out = []
    for item in t.items:
        out.append(f"# {item}" if isinstance(item, str) else str(item))
    return "".join(line + "\n" for line in out)


# -- independent replay -------------------------------------------------------


class ReplayError(Exception):
    """A step failed validation; ``index`` counts steps from zero."""

    def __init__(self, index: int, reason: str, step: Step | None = None):
        super().__init__(f"step {index}: {reason}" + (f" ({step})" if step is not None else ""))
        self.index = index
        self.reason = reason
        self.step = step


def _connected(cells: set) -> bool:
    if not cells:
        return True
    start = next(iter(cells))
    seen = {start}
    q = deque([start])
    while q:
        x, y = q.popleft()
        for n in ((x + 1, y), (x - 1, y), (x, y + 1), (x, y - 1)):
            if n in cells and n not in seen:
                seen.add(n)
                q.append(n)
    return len(seen) == len(cells)


def _touches(cells: set, c: Cell) -> bool:
    x, y = c
    return any(n in cells for n in ((x + 1, y), (x - 1, y), (x, y + 1), (x, y - 1)))


def _turn(vec, direction):
    vx, vy = vec
    return (vy, -vx) if direction == CW else (-vy, vx)


def quarter_image(cell: Cell, pivot: Cell, direction: str) -> Cell:
    """Rotate the cell centre about the pivot by a right angle."""
    px, py = pivot
    cx, cy = 2 * cell[0] + 1 - 2 * px, 2 * cell[1] + 1 - 2 * py  # doubled offsets
    if abs(cx) != 1 or abs(cy) != 1:
        raise DomainError(f"{pivot} is not a corner of {cell}")
    rx, ry = _turn((cx, cy), direction)
    return ((rx + 2 * px - 1) // 2, (ry + 2 * py - 1) // 2)


@lru_cache(maxsize=None)
def _sweep_offsets(dx: int, dy: int, direction: str) -> frozenset:
    """Cells (relative to the pivot) whose interior the turning square enters.

    ``(dx, dy)`` is the doubled offset of the mover centre from the pivot.
    Sampled at interior points of the square over one-degree increments.
    """
    k = 12
    pts = [((i + 0.5) / k, (j + 0.5) / k) for i in range(k) for j in range(k)]
    x0 = 0 if dx > 0 else -1
    y0 = 0 if dy > 0 else -1
    sign = -1 if direction == CW else 1
    hit = set()
    for deg in range(0, 91):
        a = math.radians(deg) * sign
        ca, sa = math.cos(a), math.sin(a)
        for u, v in pts:
            px, py = x0 + u, y0 + v
            qx, qy = px * ca - py * sa, px * sa + py * ca
            hit.add((math.floor(qx), math.floor(qy)))
    return frozenset(hit)


def swept_cells(cell: Cell, pivot: Cell, direction: str) -> set[Cell]:
    dx, dy = 2 * cell[0] + 1 - 2 * pivot[0], 2 * cell[1] + 1 - 2 * pivot[1]
    return {(pivot[0] + a, pivot[1] + b) for a, b in _sweep_offsets(dx, dy, direction)} - {cell}


def _around(pivot: Cell, start: Cell, direction: str) -> list[Cell]:
    """The four cells at a vertex in turning order, starting with ``start``."""
    seq = [start]
    for _ in range(3):
        seq.append(quarter_image(seq[-1], pivot, direction))
    return seq


def replay_move_level(static: set, move: Move, diagonal: bool = True) -> int | None:
    """Least move set allowing ``move`` against ``static`` (clearance excluded)."""
    rots = move.rotations
    a = rots[0]
    cells = _around(a.pivot, move.mover, a.direction)
    if len(rots) == 1:
        behind, across = cells[3], cells[2]
        if behind in static and across in static:
            return 1
        if (behind in static or across in static) and _touches(static, cells[1]):
            return 2
        return None
    b = rots[1]
    if a.pivot == b.pivot:
        if a.direction != b.direction:
            return None
        return 1 if cells[3] in static else None
    mid = cells[1]
    end = quarter_image(mid, b.pivot, b.direction)
    if end == move.mover:
        return None
    if not diagonal and end[0] != move.mover[0] and end[1] != move.mover[1]:
        return None
    if not any(c in static for c in cells[2:]):
        return None
    if not any(c in static for c in _around(b.pivot, mid, b.direction)[2:]):
        return None
    if _touches(static, mid) or not _touches(static, end):
        return None
    return 3


def replay_step(cells: set, step: Step, diagonal: bool = True) -> str | None:
    """Apply ``step`` to ``cells`` in place; return a rejection reason or None."""
    if step.op == "ADD":
        if step.cell in cells:
            return "add onto occupied cell"
        if cells and not _touches(cells, step.cell):
            return "added module is not facet-adjacent"
        cells.add(step.cell)
        return None
    if step.op == "REMOVE":
        if step.cell not in cells:
            return "remove of empty cell"
        cells.discard(step.cell)
        if not _connected(cells):
            cells.add(step.cell)
            return "removal disconnects"
        return None
    m = step.move
    if m.mover not in cells:
        return "mover not occupied"
    static = cells - {m.mover}
    if not static or not _connected(static):
        return "disconnects"
    cur = m.mover
    for r in m.rotations:
        try:
            nxt = quarter_image(cur, r.pivot, r.direction)
        except DomainError as exc:
            return str(exc)
        if swept_cells(cur, r.pivot, r.direction) & static:
            return "collision"
        cur = nxt
    level = replay_move_level(static, m, diagonal)
    if level is None or level > step.set_tag:
        return "adjacency-rule"
    cells.discard(m.mover)
    cells.add(cur)
    return None


def replay(initial, trace: Trace, diagonal: bool = True, check_hashes: bool = True) -> Configuration:
    """Re-execute every step, validating legality and snapshot hashes."""
    cells = set(initial)
    for i, step in enumerate(trace.steps):
        reason = replay_step(cells, step, diagonal)
        if reason is not None:
            raise ReplayError(i, reason, step)
        if check_hashes and step.hash is not None and step.hash != config_hash(cells):
            raise ReplayError(i, "snapshot hash mismatch", step)
    return Configuration(cells)


def frames(initial, trace: Trace) -> list[Configuration]:
    """Configuration before the first step and after each step."""
    cells = set(initial)
    out = [Configuration(cells)]
    for i, step in enumerate(trace.steps):
        reason = replay_step(cells, step)
        if reason is not None:
            raise ReplayError(i, reason, step)
        out.append(Configuration(cells))
    return out
