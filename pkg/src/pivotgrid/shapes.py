"""Shape files.

Two formats are accepted:

* a grid of ``#`` (module) and ``.`` (empty), with the *last* line as
  row ``y = 0`` and the first column as ``x = 0``;
* one ``x y`` integer pair per line.

Blank lines are ignored in both.  Lines beginning with ``;`` are comments.
"""
from __future__ import annotations

from pathlib import Path

from .grid import Configuration, DomainError, canonicalize


class ShapeError(DomainError):
    def __init__(self, lineno: int, msg: str):
        super().__init__(f"line {lineno}: {msg}" if lineno else msg)
        self.lineno = lineno


def _content_lines(text: str) -> list[tuple[int, str]]:
    out = []
    for i, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if line and not line.startswith(";"):
            out.append((i, line))
    return out


def parse_shape(text: str) -> Configuration:
    lines = _content_lines(text)
    if not lines:
        raise ShapeError(0, "empty shape")
    if all(set(line) <= {"#", "."} for _, line in lines):
        cells = set()
        for row, (lineno, line) in enumerate(reversed(lines)):
            for x, ch in enumerate(line):
                if ch == "#":
                    cells.add((x, row))
        if not cells:
            raise ShapeError(lines[0][0], "grid has no modules")
        return Configuration(cells)
    cells = set()
    for lineno, line in lines:
        parts = line.split()
        if len(parts) != 2:
            raise ShapeError(lineno, f"expected 'x y', got {line!r}")
        try:
            c = (int(parts[0]), int(parts[1]))
        except ValueError:
            raise ShapeError(lineno, f"non-integer coordinate in {line!r}") from None
        if c in cells:
            raise ShapeError(lineno, f"duplicate cell {c[0]} {c[1]}")
        cells.add(c)
    return Configuration(cells)


def emit_shape(config, fmt: str = "coords") -> str:
    """``coords`` keeps absolute positions; ``grid`` writes the canonical shape."""
    cells = set(config)
    if fmt == "coords":
        return "".join(f"{x} {y}\n" for x, y in sorted(cells))
    if fmt != "grid":
        raise DomainError(f"unknown shape format {fmt!r}")
    if not cells:
        raise DomainError("cannot draw an empty shape")
    c = canonicalize(cells)
    w = max(x for x, _ in c) + 1
    h = max(y for _, y in c) + 1
    rows = ["".join("#" if (x, y) in c else "." for x in range(w)) for y in reversed(range(h))]
    return "".join(r + "\n" for r in rows)


def read_shape(path) -> Configuration:
    return parse_shape(Path(path).read_text())


def write_shape(config, path, fmt: str = "coords") -> None:
    Path(path).write_text(emit_shape(config, fmt))
