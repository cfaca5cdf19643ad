"""Command-line entry point ``pivotgrid``.

Exit codes: 0 success, 2 usage error (argparse), 3 bad input or domain
error, 4 invariant breach (illegal move, failed replay, planner failure).
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .grid import DomainError, articulation_modules, exterior_and_holes, is_facet_connected

EXIT_OK, EXIT_USAGE, EXIT_DOMAIN, EXIT_BREACH = 0, 2, 3, 4


class Breach(Exception):
    pass


def _load(path):
    from .shapes import read_shape

    try:
        return read_shape(path)
    except OSError as exc:
        raise DomainError(f"cannot read {path}: {exc.strerror}") from None


def cmd_validate(args) -> int:
    cfg = _load(args.shape)
    connected = is_facet_connected(cfg)
    print(f"modules={len(cfg)}")
    print(f"connected={str(connected).lower()}")
    if connected:
        _, holes = exterior_and_holes(cfg)
        print(f"holes={len(holes)}")
        print(f"cut_modules={len(articulation_modules(cfg))}")
        return EXIT_OK
    return EXIT_DOMAIN


def cmd_moves(args) -> int:
    from .moves import legal_moves, move_level

    cfg = _load(args.shape)
    if not is_facet_connected(cfg):
        raise DomainError("configuration is not facet-connected")
    for m in legal_moves(cfg, args.set, not args.no_diagonal_jumps):
        print(f"{m} SET {move_level(cfg, m)}")
    return EXIT_OK


def cmd_shell(args) -> int:
    from .traversal import traverse_outer_shell

    cfg = _load(args.shape)
    if not is_facet_connected(cfg):
        raise DomainError("configuration is not facet-connected")
    shell = traverse_outer_shell(cfg)
    for x, y in shell:
        print(x, y)
    if args.svg:
        from .render import render_svg

        Path(args.svg).write_text(render_svg(cfg, shell=shell))
    return EXIT_OK


def cmd_patterns(args) -> int:
    from .patterns import find_patterns

    cfg = _load(args.shape)
    hits = find_patterns(cfg)
    for h in hits:
        print(h)
    print(f"admissible={str(not hits).lower()}")
    return EXIT_OK


def cmd_atlas(args) -> int:
    from .atlas import build_graph, save, summary

    g = build_graph(args.n, args.set, not args.no_diagonal_jumps)
    if args.out:
        save(g, args.out)
    for k, v in summary(g).items():
        print(f"{k}={v}")
    return EXIT_OK


def cmd_reconfigure(args) -> int:
    from .musketeer import PlannerError, plan
    from .trace import ReplayError, emit_trace, replay

    if args.set != 3:
        raise DomainError("universal reconfiguration is only available with move set 3")
    src, tgt = _load(args.src), _load(args.tgt)
    for name, c in (("source", src), ("target", tgt)):
        if not is_facet_connected(c):
            raise DomainError(f"{name} configuration is not facet-connected")
    diagonal = not args.no_diagonal_jumps
    try:
        trace, info = plan(src, tgt, diagonal)
        final = replay(src, trace, diagonal)
    except (PlannerError, ReplayError) as exc:
        raise Breach(str(exc)) from None
    if final != info["final"]:
        raise Breach("replayed trace does not end at the target")
    text = emit_trace(trace)
    if args.trace:
        Path(args.trace).write_text(text)
    else:
        sys.stdout.write(text)
    if args.svg_frames:
        from .render import render_frames

        render_frames(src, trace, args.svg_frames)
    dx, dy = info["offset"]
    print(f"moves={len(trace.moves)} extras={info['extras']} bridges={len(info['bridges'])} "
          f"offset={dx},{dy}", file=sys.stderr)
    return EXIT_OK


def cmd_replay(args) -> int:
    from .shapes import emit_shape
    from .trace import ReplayError, parse_trace, replay

    src = _load(args.src)
    try:
        text = Path(args.trace).read_text()
    except OSError as exc:
        raise DomainError(f"cannot read {args.trace}: {exc.strerror}") from None
    trace = parse_trace(text)
    try:
        final = replay(src, trace, not args.no_diagonal_jumps)
    except ReplayError as exc:
        print(f"rejected at step {exc.index}: {exc.reason}", file=sys.stderr)
        return EXIT_BREACH
    sys.stdout.write(emit_shape(final))
    print(f"steps={len(trace)}", file=sys.stderr)
    return EXIT_OK


def cmd_fuzz(args) -> int:
    from .fuzz import fuzz
    from .shapes import emit_shape
    from .trace import emit_trace

    failures = 0
    for rep, cfg, state in fuzz(args.seed, args.n_min, args.n_max, args.runs,
                                not args.no_diagonal_jumps):
        print(json.dumps(rep.as_dict(), sort_keys=True))
        if not rep.ok:
            failures += 1
            if args.dump:
                d = Path(args.dump)
                d.mkdir(parents=True, exist_ok=True)
                (d / f"seed{rep.seed}.shape").write_text(emit_shape(cfg))
                if state is not None:
                    (d / f"seed{rep.seed}.trace").write_text(emit_trace(state.trace))
    return EXIT_BREACH if failures else EXIT_OK


def cmd_render(args) -> int:
    from .render import render_frames, render_svg
    from .trace import parse_trace

    cfg = _load(args.shape)
    if args.trace:
        trace = parse_trace(Path(args.trace).read_text())
        paths = render_frames(cfg, trace, args.out)
        print(f"frames={len(paths)}")
    else:
        Path(args.out).write_text(render_svg(cfg))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="pivotgrid", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def shape_cmd(name, fn, help):
        sp = sub.add_parser(name, help=help)
        sp.add_argument("shape")
        sp.set_defaults(fn=fn)
        return sp

    shape_cmd("validate", cmd_validate, "check a shape file")
    sp = shape_cmd("moves", cmd_moves, "list legal moves")
    sp.add_argument("--set", type=int, choices=(1, 2, 3), default=3)
    sp.add_argument("--no-diagonal-jumps", action="store_true")
    sp = shape_cmd("shell", cmd_shell, "print the outer shell in walking order")
    sp.add_argument("--svg")
    shape_cmd("patterns", cmd_patterns, "list forbidden-pattern placements")

    sp = sub.add_parser("atlas", help="build the reconfiguration graph for n modules")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--set", type=int, choices=(1, 2, 3), default=3)
    sp.add_argument("--no-diagonal-jumps", action="store_true")
    sp.add_argument("--out")
    sp.set_defaults(fn=cmd_atlas)

    sp = sub.add_parser("reconfigure", help="plan a reconfiguration between two shapes")
    sp.add_argument("src")
    sp.add_argument("tgt")
    sp.add_argument("--set", type=int, choices=(1, 2, 3), default=3)
    sp.add_argument("--no-diagonal-jumps", action="store_true")
    sp.add_argument("--trace")
    sp.add_argument("--svg-frames")
    sp.set_defaults(fn=cmd_reconfigure)

    sp = sub.add_parser("replay", help="revalidate a trace against a start shape")
    sp.add_argument("src")
    sp.add_argument("trace")
    sp.add_argument("--no-diagonal-jumps", action="store_true")
    sp.set_defaults(fn=cmd_replay)

    sp = sub.add_parser("fuzz", help="plan random shapes and report")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--runs", type=int, default=20)
    sp.add_argument("--n-min", type=int, default=2)
    sp.add_argument("--n-max", type=int, default=40)
    sp.add_argument("--no-diagonal-jumps", action="store_true")
    sp.add_argument("--dump")
    sp.set_defaults(fn=cmd_fuzz)

    sp = shape_cmd("render", cmd_render, "draw a shape, or every frame of a trace")
    sp.add_argument("--trace")
    sp.add_argument("--out", required=True)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except Breach as exc:
        print(f"invariant breach: {exc}", file=sys.stderr)
        return EXIT_BREACH


if __name__ == "__main__":
    sys.exit(main())
