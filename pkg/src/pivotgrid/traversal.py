"""Right-hand-rule walking of a single active module around a static body.

The walker frame is fixed by the direction ``down`` from the walker to its
supporting module.  Local coordinate ``(u, v)`` maps to
``pos + u * heading + v * up`` where ``heading`` is ``down`` turned a quarter
counterclockwise (the direction of clockwise travel) and ``up = -down``.
"""
from __future__ import annotations

from dataclasses import dataclass

from .grid import Cell, DomainError, articulation_modules, neighbors4
from .moves import CCW, CW, Move, Rotation, rotation_image


class TraversalError(RuntimeError):
    """The walker invariant failed or the walk did not close."""


@dataclass(frozen=True)
class WalkerState:
    position: Cell
    down: Cell  # unit vector towards the supporting module

    @property
    def heading(self) -> Cell:
        return (-self.down[1], self.down[0])

    def local(self, u: int, v: int) -> Cell:
        hx, hy = self.heading
        dx, dy = self.down
        return (self.position[0] + u * hx - v * dx, self.position[1] + u * hy - v * dy)


def invariant_holds(static, w: WalkerState) -> bool:
    occ = lambda u, v: w.local(u, v) in static  # noqa: E731
    if not occ(0, -1) or occ(0, 1) or w.position in static:
        return False
    if occ(-1, 0) or occ(-1, 1):
        return not occ(1, 0) and not occ(1, 1)
    return True


def _pivot_of(*cells: Cell) -> Cell:
    """The lattice vertex shared by the cells of a 2x2 block."""
    return (min(c[0] for c in cells) + 1, min(c[1] for c in cells) + 1)


def _quarter(src: Cell, dst: Cell, pivot: Cell) -> Rotation:
    for d in (CW, CCW):
        r = Rotation(pivot, d)
        if rotation_image(src, r) == dst:
            return r
    raise AssertionError(f"no quarter-turn from {src} to {dst} about {pivot}")


def settle(static, w: WalkerState) -> WalkerState:
    """Canonical frame of a walker standing in a concave corner.

    With the cell behind occupied and both cells ahead empty, the walker
    would turn its frame before moving anyway; turning it on arrival makes
    each situation have a single state, so a closed walk returns to its
    start state exactly.
    """
    occ = lambda u, v: w.local(u, v) in static  # noqa: E731
    if occ(-1, 0) and not occ(1, 0) and not occ(1, 1):
        return WalkerState(w.position, (-w.heading[0], -w.heading[1]))
    return w


def rhr_step(static, w: WalkerState, allow_diagonal: bool = True) -> tuple[Move, WalkerState]:
    """One clockwise step of the walker; ``static`` excludes the walker."""
    move, nxt = _step(static, w, allow_diagonal)
    return move, settle(static, nxt)


def _step(static, w: WalkerState, allow_diagonal: bool) -> tuple[Move, WalkerState]:
    if not invariant_holds(static, w):
        raise TraversalError(f"walker invariant violated at {w}")
    f = w
    occ = lambda u, v: f.local(u, v) in static  # noqa: E731
    if not occ(1, 0) and not occ(1, 1):
        # convex corner: turn the frame so the support becomes the wall ahead
        f = WalkerState(w.position, (-w.heading[0], -w.heading[1]))
    L = f.local
    pivot = _pivot_of(L(0, 0), L(1, 0), L(0, 1), L(1, 1))
    first = _quarter(L(0, 0), L(0, 1), pivot)
    if occ(1, 1) or occ(0, 2):
        down = f.heading if occ(1, 1) else (-f.down[0], -f.down[1])
        return Move(w.position, (first,)), WalkerState(L(0, 1), down)
    if not occ(1, 2):
        return Move(w.position, (first, first)), WalkerState(L(1, 1), f.down)
    if not occ(-1, 2):
        second = _quarter(L(0, 1), L(0, 2), _pivot_of(L(0, 1), L(1, 1), L(0, 2), L(1, 2)))
        return Move(w.position, (first, second)), WalkerState(L(0, 2), f.heading)
    if not allow_diagonal:
        raise TraversalError(f"walker at {w} needs a diagonal monkey jump")
    second = _quarter(L(0, 1), L(-1, 1), _pivot_of(L(-1, 1), L(0, 1), L(-1, 2), L(0, 2)))
    return Move(w.position, (first, second)), WalkerState(L(-1, 1), (-f.down[0], -f.down[1]))


def start_state(static) -> WalkerState:
    """North of the topmost of the rightmost modules, supported from below."""
    if not static:
        raise DomainError("cannot walk around an empty configuration")
    mx = max(c[0] for c in static)
    top = max(c[1] for c in static if c[0] == mx)
    return settle(static, WalkerState((mx, top + 1), (0, -1)))


def tour(static, start: WalkerState | None = None, allow_diagonal: bool = True,
         max_steps: int | None = None) -> list[tuple[WalkerState, Move]]:
    """Closed clockwise walk: ``(state, move leaving it)`` pairs in order."""
    w = start if start is not None else start_state(static)
    if max_steps is None:
        max_steps = 8 * (4 * len(static) + 4) + 16
    seen = {w: 0}
    steps = []
    for _ in range(max_steps):
        move, nxt = rhr_step(static, w, allow_diagonal)
        steps.append((w, move))
        if nxt in seen:
            # a cell with two supports may be re-entered in the other frame
            cycle = steps[seen[nxt]:]
            at_start = [i for i, (s, _) in enumerate(cycle) if s.position == steps[0][0].position]
            if not at_start:
                raise TraversalError(f"walk entered a cycle not through its start at {nxt}")
            i = at_start[0]
            return cycle[i:] + cycle[:i]
        seen[nxt] = len(steps)
        w = nxt
    raise TraversalError("walk did not close within the step bound")


def traverse_outer_shell(config, allow_diagonal: bool = True) -> list[Cell]:
    """Cells visited by the walker, in order, without repeats of the start."""
    out = []
    seen = set()
    for state, _ in tour(set(config), allow_diagonal=allow_diagonal):
        if state.position not in seen:
            seen.add(state.position)
            out.append(state.position)
    return out


def outer_shell(config) -> set[Cell]:
    return set(traverse_outer_shell(config))


def shell_states(static, allow_diagonal: bool = True) -> dict[Cell, int]:
    """First tour index at which the walker stands on each cell."""
    idx: dict[Cell, int] = {}
    for i, (state, _) in enumerate(tour(static, allow_diagonal=allow_diagonal)):
        idx.setdefault(state.position, i)
    return idx


def is_outer_free(config, c: Cell, cut: set | None = None) -> bool:
    """``c`` is not a cut module and lies on the walker tour of the others.

    A module on that tour can pivot clockwise along it, and the tour hugs
    the outer shell, so this is the operational form of being outer-free.
    """
    cells = set(config)
    if c not in cells:
        raise DomainError(f"cell {c} is not occupied")
    if len(cells) < 2:
        return False
    if cut is None:
        cut = articulation_modules(cells)
    if c in cut:
        return False
    if all(n in cells for n in neighbors4(c)):
        return False
    cells.discard(c)
    return c in shell_states(cells)


def walk_from(static, w: WalkerState, target: Cell, allow_diagonal: bool = True) -> list[Move]:
    """Moves taking a walker from state ``w`` clockwise until it stands on ``target``."""
    moves = []
    cur = w
    bound = 8 * (4 * len(static) + 4) + 16
    for _ in range(bound):
        if cur.position == target:
            return moves
        move, cur = rhr_step(static, cur, allow_diagonal)
        moves.append(move)
    raise TraversalError(f"target {target} not reached from {w}")
