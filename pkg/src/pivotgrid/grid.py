"""Integer-lattice configurations of unit-square modules.

A cell ``(x, y)`` is the unit square ``[x, x+1] x [y, y+1]``.  Lattice
points (vertices) use the same integer coordinates, so cell ``(x, y)``
has corners ``(x, y)``, ``(x+1, y)``, ``(x, y+1)`` and ``(x+1, y+1)``.
"""
from __future__ import annotations

from collections import deque
from typing import Iterable, NamedTuple

Cell = tuple[int, int]

DIRS: tuple[Cell, ...] = ((1, 0), (0, 1), (-1, 0), (0, -1))
EAST, NORTH, WEST, SOUTH = DIRS


class DomainError(ValueError):
    """Input outside the domain of an operation."""


class Configuration(frozenset):
    """An immutable set of occupied cells.

    Equality is equality of cell sets, so a ``Configuration`` compares equal
    to a plain ``frozenset`` holding the same tuples.
    """

    def __new__(cls, cells: Iterable[Cell] = ()):
        return super().__new__(cls, ((int(x), int(y)) for x, y in cells))

    def __repr__(self) -> str:
        return f"Configuration({sorted(self)!r})"

    def bbox(self) -> tuple[int, int, int, int]:
        """``(min_x, min_y, max_x, max_y)``; raises on an empty configuration."""
        if not self:
            raise DomainError("empty configuration has no bounding box")
        xs = [c[0] for c in self]
        ys = [c[1] for c in self]
        return min(xs), min(ys), max(xs), max(ys)

    def translate(self, dx: int, dy: int) -> "Configuration":
        return Configuration((x + dx, y + dy) for x, y in self)

    def sorted_cells(self) -> list[Cell]:
        return sorted(self)


def add(c: Cell, d: Cell) -> Cell:
    return (c[0] + d[0], c[1] + d[1])


def neighbors4(c: Cell) -> tuple[Cell, Cell, Cell, Cell]:
    x, y = c
    return ((x + 1, y), (x, y + 1), (x - 1, y), (x, y - 1))


def facet_neighbors(config: Iterable[Cell], c: Cell) -> set[Cell]:
    """Occupied cells sharing an edge with the occupied cell ``c``."""
    if c not in config:
        raise DomainError(f"cell {c} is not occupied")
    return {n for n in neighbors4(c) if n in config}


def components(cells: Iterable[Cell]) -> list[set[Cell]]:
    """Facet-connected components of an arbitrary cell set."""
    remaining = set(cells)
    out = []
    while remaining:
        seed = remaining.pop()
        comp = {seed}
        queue = deque([seed])
        while queue:
            for n in neighbors4(queue.popleft()):
                if n in remaining:
                    remaining.discard(n)
                    comp.add(n)
                    queue.append(n)
        out.append(comp)
    return out


def is_facet_connected(config: Iterable[Cell]) -> bool:
    cells = config if isinstance(config, (set, frozenset)) else set(config)
    if not cells:
        return True
    seed = next(iter(cells))
    seen = {seed}
    stack = [seed]
    while stack:
        for n in neighbors4(stack.pop()):
            if n in cells and n not in seen:
                seen.add(n)
                stack.append(n)
    return len(seen) == len(cells)


def _dfs_lowpoint(cells, root):
    """Iterative lowpoint DFS from ``root``.

    Returns ``(articulation points, blocks)`` where each block is the set of
    edges ``frozenset({u, v})`` of one biconnected component.
    """
    disc = {root: 0}
    low = {root: 0}
    parent = {root: None}
    cut: set[Cell] = set()
    blocks: list[set[frozenset]] = []
    edge_stack: list[frozenset] = []
    root_children = 0
    counter = 1
    stack = [(root, iter(neighbors4(root)))]
    while stack:
        u, it = stack[-1]
        advanced = False
        for v in it:
            if v not in cells:
                continue
            if v not in disc:
                parent[v] = u
                disc[v] = low[v] = counter
                counter += 1
                edge_stack.append(frozenset((u, v)))
                stack.append((v, iter(neighbors4(v))))
                advanced = True
                break
            if v != parent[u] and disc[v] < disc[u]:
                low[u] = min(low[u], disc[v])
                edge_stack.append(frozenset((u, v)))
        if advanced:
            continue
        stack.pop()
        p = parent[u]
        if p is None:
            continue
        low[p] = min(low[p], low[u])
        if low[u] >= disc[p]:
            if p == root:
                root_children += 1
            else:
                cut.add(p)
            block = set()
            edge = frozenset((p, u))
            while edge_stack:
                e = edge_stack.pop()
                block.add(e)
                if e == edge:
                    break
            blocks.append(block)
    if root_children > 1:
        cut.add(root)
    return cut, blocks


def articulation_modules(config: Iterable[Cell]) -> set[Cell]:
    """Cells whose removal disconnects the facet-adjacency graph."""
    cells = config if isinstance(config, (set, frozenset)) else set(config)
    if not cells:
        return set()
    if not is_facet_connected(cells):
        raise DomainError("articulation_modules needs a facet-connected configuration")
    cut, _ = _dfs_lowpoint(cells, min(cells))
    return cut


def biconnected_blocks(config: Iterable[Cell]) -> list[set[frozenset]]:
    """Edge sets of the biconnected components of a connected configuration."""
    cells = config if isinstance(config, (set, frozenset)) else set(config)
    if not cells:
        return []
    if not is_facet_connected(cells):
        raise DomainError("biconnected_blocks needs a facet-connected configuration")
    return _dfs_lowpoint(cells, min(cells))[1]


# consecutive empty-side pairs: N&E, S&E, N&W, S&W
_CORNER_PAIRS = ((NORTH, EAST), (SOUTH, EAST), (NORTH, WEST), (SOUTH, WEST))


def is_corner(config: Iterable[Cell], c: Cell) -> bool:
    return any(add(c, a) not in config and add(c, b) not in config for a, b in _CORNER_PAIRS)


def corners(config: Iterable[Cell]) -> set[Cell]:
    """Modules with two empty edge-neighbours through consecutive edges."""
    return {c for c in config if is_corner(config, c)}


def exterior_and_holes(config: Iterable[Cell]) -> tuple[set[Cell], list[set[Cell]]]:
    """Split the empty cells of the padded bounding box into exterior and holes.

    The box is the bounding box grown by one ring; the component of empty
    cells touching that ring is the exterior, every other one is a hole.
    """
    cells = set(config)
    if not cells:
        return set(), []
    x0, y0, x1, y1 = Configuration(cells).bbox()
    x0, y0, x1, y1 = x0 - 1, y0 - 1, x1 + 1, y1 + 1
    empty = {
        (x, y)
        for x in range(x0, x1 + 1)
        for y in range(y0, y1 + 1)
        if (x, y) not in cells
    }
    exterior: set[Cell] = set()
    holes = []
    for comp in components(empty):
        if (x0, y0) in comp:
            exterior = comp
        else:
            holes.append(comp)
    holes.sort(key=min)
    return exterior, holes


class Potential(NamedTuple):
    """Lexicographic rank ``(x + y, x)`` of a cell."""

    primary: int
    secondary: int


def potential(c: Cell) -> Potential:
    return Potential(c[0] + c[1], c[0])


def potential_extremes(config: Iterable[Cell]) -> tuple[Potential, Potential, Cell]:
    """``(max potential, min potential, cell of max)`` of a non-empty set."""
    cells = list(config)
    if not cells:
        raise DomainError("empty configuration has no potential extremes")
    top = max(cells, key=potential)
    bottom = min(cells, key=potential)
    return potential(top), potential(bottom), top


def potential_gap(config: Iterable[Cell]) -> tuple[int, int]:
    hi, lo, _ = potential_extremes(config)
    return (hi[0] - lo[0], hi[1] - lo[1])


def canonicalize(config: Iterable[Cell]) -> Configuration:
    """Translate so that the minimum x and minimum y are both zero."""
    cells = list(config)
    if not cells:
        return Configuration()
    mx = min(c[0] for c in cells)
    my = min(c[1] for c in cells)
    return Configuration((x - mx, y - my) for x, y in cells)


def canonical_key(config: Iterable[Cell]) -> tuple[Cell, ...]:
    return tuple(sorted(canonicalize(config)))


def is_strip(config: Iterable[Cell]) -> bool:
    """True for a straight horizontal or vertical line of modules."""
    cells = list(config)
    if not cells:
        return False
    xs = {c[0] for c in cells}
    ys = {c[1] for c in cells}
    if len(ys) == 1:
        return max(xs) - min(xs) + 1 == len(cells)
    if len(xs) == 1:
        return max(ys) - min(ys) + 1 == len(cells)
    return False
