"""Exhaustive reconfiguration graphs for small module counts."""
from __future__ import annotations

import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterator

from .grid import Cell, Configuration, DomainError, canonical_key, canonicalize, is_strip, neighbors4
from .moves import MONKEY, apply, legal_moves

MAX_N = 12


def _redelmeier(n: int) -> Iterator[tuple[Cell, ...]]:
    """Fixed polyominoes of size ``n``, each exactly once.

    Cells are restricted to ``y > 0`` or ``y == 0 and x >= 0`` so that the
    origin is the lowest-then-leftmost cell of every shape.
    """

    def allowed(c):
        return c[1] > 0 or (c[1] == 0 and c[0] >= 0)

    poly: list[Cell] = []
    seen = {(0, 0)}

    def grow(untried: list[Cell]):
        untried = list(untried)
        while untried:
            c = untried.pop()
            poly.append(c)
            if len(poly) == n:
                yield tuple(poly)
            else:
                added = []
                occupied = set(poly)
                for nb in neighbors4(c):
                    if nb in seen or not allowed(nb):
                        continue
                    # only cells not adjacent to earlier polyomino cells are new
                    if any(m in occupied for m in neighbors4(nb) if m != c):
                        continue
                    seen.add(nb)
                    added.append(nb)
                yield from grow(untried + added)
                for nb in added:
                    seen.discard(nb)
            poly.pop()

    yield from grow([(0, 0)])


def enumerate_configs(n: int) -> Iterator[Configuration]:
    """Every facet-connected configuration of ``n`` modules up to translation."""
    if not 1 <= n <= MAX_N:
        raise DomainError(f"enumeration supports 1 <= n <= {MAX_N}")
    for cells in _redelmeier(n):
        yield canonicalize(cells)


def worker_count(default: int = 1) -> int:
    """Worker processes requested through ``PIVOTGRID_THREADS``."""
    raw = os.environ.get("PIVOTGRID_THREADS", "")
    try:
        return max(1, int(raw))
    except ValueError:
        return default


@dataclass
class AtlasGraph:
    """Reconfiguration graph of all ``n``-module configurations under one move set."""

    n: int
    set_tag: int
    nodes: list[Configuration]
    edges: set[tuple[int, int]]
    component: list[int] = field(default_factory=list)
    self_loops: int = 0  # moves whose result is the same shape, translated
    index: dict = field(default_factory=dict, repr=False)

    @property
    def n_components(self) -> int:
        return len(set(self.component))

    def neighbors(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in self.nodes]
        for i, j in sorted(self.edges):
            adj[i].append(j)
            adj[j].append(i)
        return adj


def _node_edges(args):
    keys, set_tag, diagonal, index = args
    out = []
    loops = 0
    for key in keys:
        i = index[key]
        cfg = Configuration(key)
        for m in legal_moves(cfg, set_tag, diagonal):
            j = index[canonical_key(apply(cfg, m, set_tag, diagonal))]
            if i == j:
                loops += 1
            else:
                out.append((min(i, j), max(i, j)))
    return out, loops


def _union_find(size: int, edges) -> list[int]:
    parent = list(range(size))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for i, j in edges:
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[max(ri, rj)] = min(ri, rj)
    roots = [find(i) for i in range(size)]
    # relabel to dense ids in order of first appearance
    labels: dict[int, int] = {}
    return [labels.setdefault(r, len(labels)) for r in roots]


def build_graph(n: int, set_tag: int = MONKEY, diagonal: bool = True,
                workers: int | None = None) -> AtlasGraph:
    """All configurations of ``n`` modules linked by single legal moves."""
    nodes = sorted(enumerate_configs(n), key=lambda c: tuple(sorted(c)))
    keys = [tuple(sorted(c)) for c in nodes]
    index = {k: i for i, k in enumerate(keys)}
    workers = worker_count() if workers is None else workers
    edges: set[tuple[int, int]] = set()
    loops = 0
    if workers > 1 and len(keys) > 200:
        from concurrent.futures import ProcessPoolExecutor

        shards = [keys[k::workers] for k in range(workers)]
        with ProcessPoolExecutor(workers) as pool:
            for part, lp in pool.map(_node_edges, [(s, set_tag, diagonal, index) for s in shards]):
                edges.update(part)
                loops += lp
    else:
        part, loops = _node_edges((keys, set_tag, diagonal, index))
        edges.update(part)
    g = AtlasGraph(n, set_tag, nodes, edges, self_loops=loops, index=index)
    g.component = _union_find(len(nodes), sorted(edges))
    return g


def classify(g: AtlasGraph) -> dict[str, list[Configuration]]:
    """Split nodes into rigid (isolated), locked (no strip reachable) and free."""
    if len(g.component) != len(g.nodes):
        raise DomainError("graph components have not been computed")
    degree = [0] * len(g.nodes)
    for i, j in g.edges:
        degree[i] += 1
        degree[j] += 1
    has_strip = {g.component[i] for i, c in enumerate(g.nodes) if is_strip(c)}
    out: dict[str, list[Configuration]] = {"rigid": [], "locked": [], "free": []}
    for i, c in enumerate(g.nodes):
        if degree[i] == 0:
            out["rigid"].append(c)
        if g.component[i] not in has_strip:
            out["locked"].append(c)
        else:
            out["free"].append(c)
    return out


def summary(g: AtlasGraph) -> dict[str, int]:
    cls = classify(g)
    locked_components = {g.component[g.index[tuple(sorted(c))]] for c in cls["locked"]}
    return {
        "n": g.n,
        "set": g.set_tag,
        "nodes": len(g.nodes),
        "edges": len(g.edges),
        "components": g.n_components,
        "rigid": len(cls["rigid"]),
        "locked": len(cls["locked"]),
        "locked_components": len(locked_components),
        "self_loops": g.self_loops,
    }


def format_cells(cells) -> str:
    return " ".join(f"{x},{y}" for x, y in sorted(cells))


def save(g: AtlasGraph, out_dir) -> Path:
    """Write ``nodes.txt``, ``edges.txt`` and ``summary.txt`` into ``out_dir``."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    (out / "nodes.txt").write_text("".join(format_cells(c) + "\n" for c in g.nodes))
    (out / "edges.txt").write_text("".join(f"{i} {j}\n" for i, j in sorted(g.edges)))
    (out / "summary.txt").write_text("".join(f"{k}={v}\n" for k, v in summary(g).items()))
    return out


def load(out_dir) -> AtlasGraph:
    """Read back a graph written by :func:`save`."""
    out = Path(out_dir)
    meta = {}
    for line in (out / "summary.txt").read_text().splitlines():
        k, _, v = line.partition("=")
        meta[k] = int(v)
    nodes = []
    for line in (out / "nodes.txt").read_text().splitlines():
        nodes.append(Configuration(tuple(map(int, tok.split(","))) for tok in line.split()))
    edges = set()
    for line in (out / "edges.txt").read_text().splitlines():
        i, j = map(int, line.split())
        edges.add((i, j))
    g = AtlasGraph(meta["n"], meta["set"], nodes, edges, self_loops=meta.get("self_loops", 0))
    g.index = {tuple(sorted(c)): i for i, c in enumerate(nodes)}
    g.component = _union_find(len(nodes), sorted(edges))
    return g


def reverse_violations(g: AtlasGraph, limit: int | None = None, diagonal: bool = True) -> list:
    """Moves whose reversal is illegal in the resulting configuration.

    Checks at most ``limit`` moves, visiting nodes in index order.
    """
    from .moves import is_legal

    bad = []
    checked = 0
    for cfg in g.nodes:
        for m in legal_moves(cfg, g.set_tag, diagonal):
            after = apply(cfg, m, g.set_tag, diagonal)
            if not is_legal(after, m.reversed(), g.set_tag, diagonal):
                bad.append((cfg, m))
            checked += 1
            if limit is not None and checked >= limit:
                return bad
    return bad
