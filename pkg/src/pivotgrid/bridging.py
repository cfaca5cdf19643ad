"""Bridging the two components hanging off a cut North-East module.

Placements are found by a bounded search (at most five cells, near the
scan rectangle) constrained by the facts the bridging lemma relies on:
the placed modules reconnect the two colours, every placement lies
strictly between the minimum and maximum potential, and each one is a
cell the clockwise walker reaches at the moment it is placed.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .grid import Cell, DomainError, articulation_modules, components, neighbors4, potential, potential_extremes
from .traversal import tour

MAX_MUSKETEERS = 5
MAX_SCAN_STEPS_FACTOR = 16


class BridgeError(RuntimeError):
    """Bridging could not satisfy its contract; ``dump`` describes the input."""

    def __init__(self, msg: str, dump: dict | None = None):
        super().__init__(msg)
        self.dump = dump or {}


@dataclass
class Bicoloring:
    m: Cell
    blue: set[Cell]
    green: set[Cell]


@dataclass
class BridgePlan:
    placements: list[Cell]
    d: int
    g: Cell
    b: Cell
    s_k: Cell
    rect: tuple[int, int, int, int]  # x0, y0, x1, y1 inclusive
    scan: list[Cell] = field(default_factory=list, repr=False)
    relaxed_floor: bool = False  # a placement went below the minimum potential of C
    before: frozenset = frozenset()  # C when the bridge was planned, filled in by the planner
    after: frozenset = frozenset()  # C once the musketeers are in place


def north_east(config) -> Cell:
    return potential_extremes(config)[2]


def bicolor(config) -> Bicoloring:
    cells = set(config)
    m = north_east(cells)
    x, y = m
    b1, g1 = (x - 1, y), (x, y - 1)
    if b1 not in cells or g1 not in cells:
        raise DomainError(f"North-East module {m} does not have both a West and a South neighbour")
    rest = cells - {m}
    comps = components(rest)
    if len(comps) != 2:
        raise DomainError(f"North-East module {m} is not a cut module of degree 2")
    blue = next(c for c in comps if b1 in c)
    green = next(c for c in comps if g1 in c)
    if blue is green:
        raise DomainError("West and South neighbours of the North-East module are connected")
    return Bicoloring(m, blue, green)


def _square(center: Cell) -> list[Cell]:
    cx, cy = center
    return [(cx + dx, cy + dy) for dx in (-1, 0, 1) for dy in (-1, 0, 1)]


def _touches(square: list[Cell], group: set[Cell]) -> bool:
    sq = set(square)
    return any(n in group and n not in sq for c in sq for n in neighbors4(c))


def scan_square(config, bic: Bicoloring) -> tuple[Cell, tuple[int, int, int, int], list[Cell]]:
    """Slide the 3x3 square clockwise around ``C`` from ``m + (2, 1)``.

    Returns ``(s_k, R, visited centres)`` where ``R`` is the bounding box
    of the squares at ``s_k`` and at the centre visited just before it.
    """
    cells = set(config)
    blocked = {(x + dx, y + dy) for x, y in cells for dx in (-1, 0, 1) for dy in (-1, 0, 1)}
    mx, my = bic.m
    s = (mx + 2, my + 1)
    if s in blocked:
        raise BridgeError("initial scan square overlaps the configuration", {"m": bic.m})
    heading = (0, -1)
    visited = [s]
    prev = None
    limit = MAX_SCAN_STEPS_FACTOR * (len(cells) + 4)
    for _ in range(limit):
        if _touches(_square(s), bic.blue):
            if prev is None:
                raise BridgeError("scan square starts next to a blue module", {"m": bic.m})
            xs = [c[0] for c in _square(s) + _square(prev)]
            ys = [c[1] for c in _square(s) + _square(prev)]
            return s, (min(xs), min(ys), max(xs), max(ys)), visited
        # right-hand wall following: try right, straight, left, back
        hx, hy = heading
        for nh in ((hy, -hx), (hx, hy), (-hy, hx), (-hx, -hy)):
            nxt = (s[0] + nh[0], s[1] + nh[1])
            if nxt not in blocked:
                heading = nh
                prev, s = s, nxt
                break
        else:
            raise BridgeError("scan square is boxed in", {"m": bic.m})
        visited.append(s)
    raise BridgeError("scan square never met the blue component", {"m": bic.m})


def rect_cells(rect) -> set[Cell]:
    x0, y0, x1, y1 = rect
    return {(x, y) for x in range(x0, x1 + 1) for y in range(y0, y1 + 1)}


def closest_pair(config, bic: Bicoloring, rect) -> tuple[Cell, Cell, int]:
    r = rect_cells(rect)
    adj = {n for c in r for n in neighbors4(c)} - r

    greens = sorted(c for c in adj if c in bic.green)
    blues = sorted(c for c in adj if c in bic.blue)
    if not greens or not blues:
        raise BridgeError("scan rectangle is not adjacent to both colours",
                          {"m": bic.m, "rect": rect})
    best = min(((abs(g[0] - b[0]) + abs(g[1] - b[1]), g, b) for g in greens for b in blues))
    d, g, b = best
    if not 2 <= d <= 6:
        raise BridgeError(f"closest green/blue pair at distance {d}, outside 2..6",
                          {"m": bic.m, "rect": rect, "g": g, "b": b})
    return g, b, d


def _joins(blue: set, green: set, placed: set) -> bool:
    """Do the placed cells facet-connect the two colours?"""
    frontier = [c for c in placed if any(n in blue for n in neighbors4(c))]
    seen = set(frontier)
    while frontier:
        c = frontier.pop()
        for n in neighbors4(c):
            if n in green:
                return True
            if n in placed and n not in seen:
                seen.add(n)
                frontier.append(n)
    return False


def _gap_bound(blue, green, placed, free) -> int:
    """Fewest free cells on any path from blue to green through ``placed``.

    A 0-1 breadth-first search where placed cells cost nothing; it is a
    lower bound on the placements still needed.
    """
    if _joins(blue, green, placed):
        return 0
    dist: dict[Cell, int] = {}
    queue: deque = deque()
    for c in blue:
        for n in neighbors4(c):
            w = 0 if n in placed else 1 if n in free else None
            if w is not None and dist.get(n, MAX_MUSKETEERS + 1) > w:
                dist[n] = w
                (queue.appendleft if w == 0 else queue.append)(n)
    while queue:
        c = queue.popleft()
        if any(n in green for n in neighbors4(c)):
            return dist[c]
        for n in neighbors4(c):
            w = 0 if n in placed else 1 if n in free else None
            if w is None:
                continue
            nd = dist[c] + w
            if nd < dist.get(n, MAX_MUSKETEERS + 1):
                dist[n] = nd
                (queue.appendleft if w == 0 else queue.append)(n)
    return MAX_MUSKETEERS + 1


def plan_bridge(config, bic: Bicoloring, rect, d: int, g: Cell, b: Cell, *,
                others=(), forbidden=(), diagonal: bool = True,
                limit: int = MAX_MUSKETEERS, floor=None) -> list[Cell]:
    """Ordered placements (at most ``limit``) reconnecting blue and green.

    ``others`` are occupied cells outside ``config`` (the strip) that the
    walker must go around; ``forbidden`` cells may not receive a placement.
    Each placement must be on the clockwise tour of everything placed so
    far, keep ``m`` the North-East module and stay above the minimum
    potential.  The search is iterative deepening over placement count,
    then lexicographic in the candidate order.
    """
    cells = set(config)
    hi, lo, _ = potential_extremes(cells)
    if floor is not None:
        lo = floor
    x0, y0, x1, y1 = rect
    area = {(x, y) for x in range(x0 - 2, x1 + 3) for y in range(y0 - 2, y1 + 3)}
    free = {c for c in area if c not in cells and c not in others and c not in forbidden
            and lo < potential(c) < hi}
    static_base = cells | set(others)

    def reachable(placed: tuple) -> set[Cell]:
        static = static_base | set(placed)
        return {s.position for s, _ in tour(static, allow_diagonal=diagonal)}

    best: list[Cell] | None = None
    seen_sets: set = set()

    def dfs(placed: tuple, depth: int) -> bool:
        nonlocal best
        pset = set(placed)
        if _joins(bic.blue, bic.green, pset):
            best = list(placed)
            return True
        if len(placed) >= depth:
            return False
        if len(placed) + _gap_bound(bic.blue, bic.green, pset, free) > depth:
            return False
        key = frozenset(placed)
        if (key, depth) in seen_sets:
            return False
        seen_sets.add((key, depth))
        reach = reachable(placed)
        for c in sorted(free & reach - pset):
            if dfs(placed + (c,), depth):
                return True
        return False

    for depth in range(1, limit + 1):
        seen_sets.clear()
        if dfs((), depth):
            return best
    raise BridgeError(f"no bridge with at most {limit} musketeers",
                      {"m": bic.m, "rect": rect, "d": d, "g": g, "b": b,
                       "config": sorted(cells)})


def make_plan(config, *, others=(), forbidden=(), diagonal: bool = True) -> tuple[Bicoloring, BridgePlan]:
    bic = bicolor(config)
    s_k, rect, visited = scan_square(config, bic)
    g, b, d = closest_pair(config, bic, rect)
    try:
        placements = plan_bridge(config, bic, rect, d, g, b, others=others,
                                 forbidden=forbidden, diagonal=diagonal)
        relaxed = False
    except BridgeError:
        if not others:
            raise
        # second attempt: the floor is the lowest potential of the whole robot
        floor = potential_extremes(set(config) | set(others))[1]
        placements = plan_bridge(config, bic, rect, d, g, b, others=others,
                                 forbidden=forbidden, diagonal=diagonal, floor=floor)
        relaxed = True
    return bic, BridgePlan(placements, d, g, b, s_k, rect, visited, relaxed)


def check_bridged(before, after, m: Cell) -> None:
    """Post-conditions of a bridging: ``m`` still NE, not a cut module, extremes kept."""
    hi0, lo0, _ = potential_extremes(before)
    hi1, lo1, m1 = potential_extremes(after)
    if (hi0, lo0) != (hi1, lo1) or m1 != m:
        raise BridgeError("bridging changed the potential extremes", {"m": m})
    if m in articulation_modules(set(after)):
        raise BridgeError("North-East module is still a cut module after bridging", {"m": m})
