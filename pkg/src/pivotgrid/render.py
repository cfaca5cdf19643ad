"""Deterministic SVG drawings of configurations and trace frames."""
from __future__ import annotations

from pathlib import Path

from .trace import Trace, frames

CELL = 20


def render_svg(config, highlight=None, shell=None, cell: int = CELL) -> str:
    """One SVG document; y grows upwards in lattice coordinates."""
    cells = sorted(set(config))
    extra = list(shell or []) + ([highlight] if highlight else [])
    pts = cells + extra
    if not pts:
        return '<svg xmlns="http://www.w3.org/2000/svg" width="0" height="0"></svg>\n'
    x0 = min(p[0] for p in pts) - 1
    x1 = max(p[0] for p in pts) + 1
    y0 = min(p[1] for p in pts) - 1
    y1 = max(p[1] for p in pts) + 1
    w = (x1 - x0 + 1) * cell
    h = (y1 - y0 + 1) * cell

    def rect(c, cls):
        px = (c[0] - x0) * cell
        py = (y1 - c[1]) * cell
        return (f'<rect class="{cls}" data-x="{c[0]}" data-y="{c[1]}" x="{px}" y="{py}" '
                f'width="{cell}" height="{cell}"/>')

    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">',
           "<style>.module{fill:#8a8a8a;stroke:#333}.mover{fill:#e07020;stroke:#333}"
           ".shell{fill:#f4b6c2;fill-opacity:0.5;stroke:none}</style>"]
    for c in shell or []:
        out.append(rect(c, "shell"))
    for c in cells:
        out.append(rect(c, "mover" if c == highlight else "module"))
    out.append("</svg>")
    return "\n".join(out) + "\n"


def render_frames(initial, trace: Trace, out_dir, cell: int = CELL) -> list[Path]:
    """Write ``frame_0000.svg`` ... one per configuration along the trace."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    confs = frames(initial, trace)
    steps = trace.steps
    paths = []
    width = max(4, len(str(len(confs))))
    for i, cfg in enumerate(confs):
        hl = None
        if i > 0:
            s = steps[i - 1]
            hl = s.move.end if s.op == "MOVE" else (s.cell if s.op == "ADD" else None)
        p = out / f"frame_{i:0{width}d}.svg"
        p.write_text(render_svg(cfg, highlight=hl, cell=cell))
        paths.append(p)
    return paths
