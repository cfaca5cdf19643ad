"""Forbidden two-module patterns and the cactus graph of a configuration."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .grid import (
    Cell,
    Configuration,
    DomainError,
    _dfs_lowpoint,
    articulation_modules,
    corners,
    is_facet_connected,
    neighbors4,
)

# (module cells, cells that must be empty), anchored at the origin
MASKS: dict[str, tuple[tuple[Cell, ...], tuple[Cell, ...]]] = {
    "Γ": (((0, 0), (1, 1)), ((1, 0), (0, 1))),
    "I": (((0, 0), (2, 0)), ((1, 0),)),
    "Z": (((0, 0), (2, 1)), ((1, 0), (1, 1))),
}

SYMMETRIES = {
    "id": lambda x, y: (x, y),
    "r90": lambda x, y: (-y, x),
    "r180": lambda x, y: (-x, -y),
    "r270": lambda x, y: (y, -x),
    "mx": lambda x, y: (-x, y),
    "my": lambda x, y: (x, -y),
    "d": lambda x, y: (y, x),
    "ad": lambda x, y: (-y, -x),
}


@dataclass(frozen=True)
class PatternHit:
    kind: str
    anchor: Cell
    symmetry: str
    modules: tuple[Cell, Cell]
    empty: tuple[Cell, ...]

    def __str__(self) -> str:
        a, b = self.modules
        return f"{self.kind} anchor={self.anchor[0]},{self.anchor[1]} sym={self.symmetry} modules={a[0]},{a[1]};{b[0]},{b[1]}"


def _place(mask_cells, anchor, sym):
    f = SYMMETRIES[sym]
    out = []
    for c in mask_cells:
        dx, dy = f(*c)
        out.append((anchor[0] + dx, anchor[1] + dy))
    return out


def find_patterns(config, kinds=("Γ", "I", "Z")) -> list[PatternHit]:
    """Every placement of the requested masks, one per (kind, module pair)."""
    cells = set(config)
    hits = []
    seen = set()
    for anchor in sorted(cells):
        for kind in kinds:
            mods, empty = MASKS[kind]
            for sym in SYMMETRIES:
                pm = _place(mods, anchor, sym)
                if not all(c in cells for c in pm):
                    continue
                pe = _place(empty, anchor, sym)
                if any(c in cells for c in pe):
                    continue
                key = (kind, frozenset(pm))
                if key in seen:
                    continue
                seen.add(key)
                hits.append(PatternHit(kind, anchor, sym, tuple(sorted(pm)), tuple(sorted(pe))))
    return hits


def is_admissible(config) -> bool:
    return not find_patterns(config)


# -- cactus graph -------------------------------------------------------------


def _outer_flood(barrier: set[Cell], box_cells) -> set[Cell]:
    """Cells reachable from outside the bounding box of ``box_cells`` avoiding ``barrier``."""
    xs = [c[0] for c in box_cells]
    ys = [c[1] for c in box_cells]
    x0, x1, y0, y1 = min(xs) - 1, max(xs) + 1, min(ys) - 1, max(ys) + 1
    start = (x0, y0)
    seen = {start}
    q = deque([start])
    while q:
        for n in neighbors4(q.popleft()):
            if n in seen or n in barrier:
                continue
            if not (x0 <= n[0] <= x1 and y0 <= n[1] <= y1):
                continue
            seen.add(n)
            q.append(n)
    return seen


def region(cycle_cells, within) -> set[Cell]:
    """Cells of ``within``'s box lying on the cycle or enclosed by it."""
    cyc = set(cycle_cells)
    box = set(within) | cyc
    outside = _outer_flood(cyc, box)
    xs = [c[0] for c in box]
    ys = [c[1] for c in box]
    return {
        (x, y)
        for x in range(min(xs), max(xs) + 1)
        for y in range(min(ys), max(ys) + 1)
        if (x, y) not in outside
    }


@dataclass
class CactusGraph:
    """Leaves, maximal cycles and the tree joining them.

    Nodes are ``("cell", c)`` for modules outside every maximal region and
    ``("cycle", k)`` for the k-th maximal cycle.  ``edges`` join nodes of
    the contracted tree; ``links`` records the module pair realising each.
    """

    leaves: list[Cell]
    cycles: list[list[Cell]]
    cycle_edges: list[set[frozenset]]
    regions: list[set[Cell]]
    nodes: list[tuple] = field(default_factory=list)
    edges: set[frozenset] = field(default_factory=set)
    links: dict = field(default_factory=dict)

    def degree(self, node) -> int:
        return sum(1 for e in self.edges if node in e)

    def leaf_cycles(self) -> list[int]:
        return [k for k in range(len(self.cycles)) if self.degree(("cycle", k)) <= 1]


def _block_outer_cycle(block_cells: set[Cell]) -> list[Cell]:
    outside = _outer_flood(block_cells, block_cells)
    out = []
    for c in block_cells:
        x, y = c
        if any((x + dx, y + dy) in outside for dx in (-1, 0, 1) for dy in (-1, 0, 1)):
            out.append(c)
    return sorted(out)


def cactus_graph(config) -> CactusGraph:
    cells = set(config)
    if not cells:
        raise DomainError("cactus graph of an empty configuration")
    if not is_facet_connected(cells):
        raise DomainError("cactus graph needs a facet-connected configuration")
    _, blocks = _dfs_lowpoint(cells, min(cells))
    candidates = []
    for b in blocks:
        bc = set().union(*b)
        if len(bc) < 4:
            continue  # a bridge edge, no cycle
        cyc = _block_outer_cycle(bc)
        candidates.append((cyc, region(cyc, cells)))
    # keep cycles whose region is maximal by inclusion
    maximal = []
    for i, (cyc, reg) in enumerate(candidates):
        if any(j != i and reg < other for j, (_, other) in enumerate(candidates)):
            continue
        maximal.append((cyc, reg))
    cycles = [c for c, _ in maximal]
    regions = [r for _, r in maximal]
    cycle_edges = []
    for cyc, reg in maximal:
        cs = set(cyc)
        es = set()
        for u in cs:
            for v in neighbors4(u):
                if v not in cs or v < u:
                    continue
                # the two 2x2 squares having u-v as a side
                d = (v[0] - u[0], v[1] - u[1])
                side = (-d[1], d[0])
                for s in (side, (-side[0], -side[1])):
                    a = (u[0] + s[0], u[1] + s[1])
                    b = (v[0] + s[0], v[1] + s[1])
                    if a not in reg or b not in reg:
                        es.add(frozenset((u, v)))
        cycle_edges.append(es)
    owner: dict[Cell, tuple] = {}
    for k, reg in enumerate(regions):
        for c in reg:
            if c in cells:
                owner[c] = ("cycle", k)
    node_of = lambda c: owner.get(c, ("cell", c))  # noqa: E731
    edges: set[frozenset] = set()
    links: dict = {}
    for u in cells:
        for v in neighbors4(u):
            if v in cells and u < v:
                a, b = node_of(u), node_of(v)
                if a != b:
                    e = frozenset((a, b))
                    edges.add(e)
                    links.setdefault(e, (u, v))
    leaves = sorted(c for c in cells if sum(n in cells for n in neighbors4(c)) <= 1)
    nodes = sorted({node_of(c) for c in cells}, key=repr)
    # drop tree leaves that are neither leaves of the adjacency graph nor cycles
    changed = True
    while changed:
        changed = False
        for nd in list(nodes):
            if nd[0] == "cell" and nd[1] not in leaves and sum(1 for e in edges if nd in e) <= 1 and len(nodes) > 1:
                nodes.remove(nd)
                edges = {e for e in edges if nd not in e}
                changed = True
    links = {e: links[e] for e in edges}
    return CactusGraph(leaves, cycles, cycle_edges, regions, nodes, edges, links)


def free_corner(config) -> Cell:
    """A corner module that is not a cut module, located through the cactus graph."""
    cells = set(config)
    if not cells:
        raise DomainError("empty configuration has no corner")
    if len(cells) == 1:
        return next(iter(cells))
    cut = articulation_modules(cells)
    t = cactus_graph(cells)
    for nd in t.nodes:
        if nd[0] == "cell" and t.degree(nd) <= 1:
            return nd[1]
    corner_set = corners(cells)
    for k in t.leaf_cycles():
        node = ("cycle", k)
        connector = set()
        for e, (u, v) in t.links.items():
            if node in e:
                connector |= {u, v}
        for c in t.cycles[k]:
            if c in corner_set and c not in connector and c not in cut:
                return c
    raise AssertionError(f"no free corner found in {Configuration(cells)!r}")
