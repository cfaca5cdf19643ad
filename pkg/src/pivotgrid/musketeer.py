"""Reconfiguration to a canonical strip with at most five helper modules.

The strip grows West of the anchor, the bottommost of the leftmost modules
of the input.  The anchor never moves, so the final shape is the row of
``n + extras`` cells ending at the anchor.  Modules still outside the
strip (the anchor included) form the working configuration ``C``.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .bridging import Bicoloring, BridgePlan, bicolor, make_plan, north_east
from .grid import (
    Cell,
    Configuration,
    DomainError,
    articulation_modules,
    is_facet_connected,
    neighbors4,
    potential,
    potential_extremes,
    potential_gap,
)
from .moves import Move, check_move, minimal_set, module_moves
from .trace import Step, Trace, config_hash
from .traversal import TraversalError, tour

MAX_EXTRAS = 5


class PlannerError(RuntimeError):
    """An invariant of the planner failed; carries the state for triage."""

    def __init__(self, msg: str, state: "PlannerState | None" = None):
        super().__init__(msg)
        self.state = state


@dataclass
class PlannerState:
    config: set[Cell]
    anchor: Cell
    strip: list[Cell] = field(default_factory=list)  # West of the anchor, nearest first
    extras_added: int = 0
    trace: Trace = field(default_factory=Trace)
    bridges: list[int] = field(default_factory=list)  # d of each bridging
    steps: list[str] = field(default_factory=list)  # reconfiguration cases taken
    bridge_plans: list = field(default_factory=list)
    monovariant_exceptions: int = 0
    diagonal: bool = True
    check: bool = True

    @property
    def cells(self) -> set[Cell]:
        return self.config | set(self.strip)

    @property
    def tip_west(self) -> Cell:
        x, y = self.strip[-1] if self.strip else self.anchor
        return (x - 1, y)

    def gap(self):
        return potential_gap(self.config)

    # -- recording -----------------------------------------------------------

    def _hash(self) -> str:
        return config_hash(self.cells)

    def move(self, m: Move, static_connected: bool | None = None) -> None:
        """Validate and execute a move of a module of ``C`` or of the strip."""
        cells = self.cells
        if self.check:
            reason = check_move(cells, m, 3, self.diagonal, static_connected)
            if reason is not None:
                raise PlannerError(f"planner emitted illegal move ({reason}): {m}", self)
        level = minimal_set(cells - {m.mover}, m)
        if m.mover in self.config:
            self.config.discard(m.mover)
            self.config.add(m.end)
        else:
            raise PlannerError(f"mover {m.mover} is not a working module", self)
        self.trace.items.append(Step("MOVE", m, set_tag=level, hash=self._hash()))

    def add_extra(self) -> Cell:
        c = self.tip_west
        if self.extras_added >= MAX_EXTRAS:
            raise PlannerError("more than five extra modules requested", self)
        self.strip.append(c)
        self.extras_added += 1
        self.trace.items.append(Step("ADD", cell=c, hash=self._hash()))
        return c


def outer_free_routes(state: PlannerState, target: Cell | None = None) -> dict[Cell, list]:
    """Outer-free modules of ``C`` with their clockwise route to ``target``.

    ``target`` defaults to the cell West of the strip tip.  The anchor is
    pinned and never reported.
    """
    target = state.tip_west if target is None else target
    cells = state.cells
    if len(state.config) < 2:
        return {}
    cut = articulation_modules(cells)
    out = {}
    for c in sorted(state.config):
        if c == state.anchor or c in cut:
            continue
        static = cells - {c}
        try:
            cyc = tour(static, allow_diagonal=state.diagonal)
        except TraversalError:
            continue
        pos = [s.position for s, _ in cyc]
        if c not in pos or target not in pos:
            continue
        L = len(cyc)
        ti = [i for i, p in enumerate(pos) if p == target]
        best = None
        for i, p in enumerate(pos):
            if p != c:
                continue
            for t in ti:
                k = (t - i) % L
                if best is None or k < best[0]:
                    best = (k, i)
        k, i = best
        out[c] = [cyc[(i + j) % L][1] for j in range(k)]
    return out


def send_to_strip(state: PlannerState, c: Cell, route: list[Move] | None = None) -> None:
    """Walk module ``c`` clockwise to the strip tip; it joins the strip."""
    if route is None:
        routes = outer_free_routes(state)
        if c not in routes:
            raise PlannerError(f"module {c} cannot walk to the strip", state)
        route = routes[c]
    static_ok = True
    for m in route:
        state.move(m, static_connected=static_ok)
    end = route[-1].end if route else c
    if end != state.tip_west:
        raise PlannerError(f"walk of {c} ended at {end}, not at the strip tip", state)
    state.config.discard(end)
    state.strip.append(end)


def drain_outer_free(state: PlannerState) -> PlannerState:
    """Send outer-free modules to the strip, shortest route first, until none is left."""
    while True:
        routes = outer_free_routes(state)
        if not routes:
            return state
        c = min(routes, key=lambda k: (len(routes[k]), k))
        before = len(state.config)
        send_to_strip(state, c, routes[c])
        assert len(state.config) < before


def ensure_musketeers(state: PlannerState) -> PlannerState:
    """Top the strip up to five modules with extras, in a single batch."""
    need = MAX_EXTRAS - len(state.strip)
    if need > 0:
        if state.extras_added:
            raise PlannerError("extras requested twice", state)
        for _ in range(need):
            state.add_extra()
    return state


# -- musketeers and the reconfiguration step --------------------------------


def forbidden_cells(state: PlannerState, pad: int = 8) -> set[Cell]:
    """Cells a working module may not settle in: West of the anchor or next to the strip."""
    ax = state.anchor[0]
    x0, y0, x1, y1 = Configuration(state.cells).bbox()
    west = {(x, y) for x in range(x0 - pad, ax) for y in range(y0 - pad, y1 + pad + 1)}
    near = {n for c in state.strip for n in neighbors4(c)}
    return (west | near | {state.tip_west}) - state.config


def place_musketeer(state: PlannerState, target: Cell) -> None:
    """Walk the strip's tip module clockwise until it stands on ``target``."""
    if not state.strip:
        raise PlannerError("no module left on the strip to act as a musketeer", state)
    tip = state.strip.pop()
    state.config.add(tip)
    static = state.cells - {tip}
    cyc = tour(static, allow_diagonal=state.diagonal)
    pos = [s.position for s, _ in cyc]
    if tip not in pos or target not in pos:
        raise PlannerError(f"musketeer cannot walk from {tip} to {target}", state)
    i = pos.index(tip)
    L = len(cyc)
    k = next(j for j in range(L) if pos[(i + j) % L] == target)
    for j in range(k):
        state.move(cyc[(i + j) % L][1], static_connected=True)


def _degree(cells, c) -> int:
    return sum(n in cells for n in neighbors4(c))


def classify_step(config) -> tuple[str, dict]:
    """Neighbourhood case of the North-East module of a stuck configuration."""
    cells = set(config)
    m = north_east(cells)
    x, y = m
    b1, g1, g2 = (x - 1, y), (x, y - 1), (x, y - 2)
    if b1 not in cells or g1 not in cells:
        raise DomainError(f"North-East module {m} is not a degree-2 cut module")
    names = {"m": m, "b1": b1, "g1": g1, "g2": g2, "b2": None}
    if _degree(cells, b1) == 1:
        return "r1", names
    if g2 not in cells or _degree(cells, g1) != 2:
        raise DomainError(f"South neighbour of {m} does not continue South")
    b2 = (x - 1, y + 1) if (x - 1, y + 1) in cells else (x - 2, y)
    names["b2"] = b2
    if _degree(cells, g2) == 1 or _degree(cells, b2) == 1:
        return "r2", names
    if _degree(cells, g2) > 2:
        return "r4", names
    if _degree(cells, b2) > 2:
        return "r5", names
    return "r3", names


def _try_send(state: PlannerState, c: Cell) -> bool:
    if c not in state.config or c == state.anchor:
        return False
    routes = outer_free_routes(state)
    if c not in routes:
        return False
    send_to_strip(state, c, routes[c])
    return True


def bridge(state: PlannerState) -> BridgePlan:
    """Bridge the two colours at the North-East module with musketeers from the strip."""
    before = set(state.config)
    bic, plan = make_plan(before, others=set(state.strip), forbidden=forbidden_cells(state),
                          diagonal=state.diagonal)
    if len(plan.placements) > len(state.strip):
        raise PlannerError("strip too short for the bridge", state)
    placed = ";".join(f"{x},{y}" for x, y in plan.placements)
    flag = " relaxed-floor" if plan.relaxed_floor else ""
    state.trace.comment(f"BRIDGE d={plan.d} placements={placed}{flag}")
    for target in plan.placements:
        place_musketeer(state, target)
    after = set(state.config)
    plan.before, plan.after = frozenset(before), frozenset(after)
    hi0, lo0, _ = potential_extremes(before)
    hi1, lo1, m1 = potential_extremes(after)
    if m1 != bic.m or hi1 != hi0 or (lo1 != lo0 and not plan.relaxed_floor):
        raise PlannerError("bridging changed the potential extremes", state)
    if bic.m in articulation_modules(state.cells):
        raise PlannerError("North-East module still a cut module after bridging", state)
    state.bridges.append(plan.d)
    state.bridge_plans.append(plan)
    return plan


def _dance(state: PlannerState, movers: set[Cell], musketeers: set[Cell], hi, lo,
           max_depth: int = 6, max_nodes: int = 20000) -> list[Move] | None:
    """Short move sequence of ``movers`` after which the musketeers are not needed.

    Breadth-first over configurations; the goal is a configuration whose
    non-musketeer modules are facet-connected with every moved module
    strictly inside the potential window and outside forbidden cells.
    """
    from collections import deque as _dq

    forbidden = forbidden_cells(state)
    others = set(state.strip)
    start = frozenset(state.config)

    def ok(cfg):
        rest = set(cfg) - musketeers
        return is_facet_connected(rest)

    if ok(start):
        return []
    queue = _dq([(start, frozenset(movers), ())])
    seen = {start}
    while queue and len(seen) < max_nodes:
        cfg, mv, path = queue.popleft()
        if len(path) >= max_depth:
            continue
        cells = set(cfg) | others
        cut = articulation_modules(cells)
        for c in sorted(mv):
            if c in cut:
                continue
            for m in module_moves(cells, c, 3, state.diagonal):
                e = m.end
                if e in forbidden or not (lo < potential(e) < hi):
                    continue
                ncfg = (cfg - {c}) | {e}
                if ncfg in seen:
                    continue
                seen.add(ncfg)
                npath = path + (m,)
                if ok(ncfg):
                    return list(npath)
                queue.append((ncfg, (mv - {c}) | {e}, npath))
    return None


def _retract(state: PlannerState, musketeers: set[Cell]) -> int:
    """Send musketeers back to the strip while any of them is outer-free."""
    sent = 0
    while True:
        routes = outer_free_routes(state)
        cand = [c for c in routes if c in musketeers]
        if not cand:
            return sent
        c = min(cand, key=lambda k: (len(routes[k]), k))
        send_to_strip(state, c, routes[c])
        musketeers.discard(c)
        sent += 1


def reconfiguration_step(state: PlannerState) -> PlannerState:
    """One step of the case analysis at the North-East module of a stuck ``C``."""
    cells = set(state.config)
    gap0, size0 = state.gap(), len(cells)
    try:
        case, nb = classify_step(cells)
    except DomainError as exc:
        raise PlannerError(f"no reconfiguration case applies: {exc}", state) from None
    m, b1, g1, g2, b2 = nb["m"], nb["b1"], nb["g1"], nb["g2"], nb["b2"]
    state.trace.comment(f"STEP {case} m={m[0]},{m[1]}")
    state.steps.append(case)
    relaxed = False
    if case in ("r1", "r2"):
        if case == "r1":
            target = (b1[0], b1[1] + 1)
        elif _degree(cells, g2) == 1:
            target = (g2[0] + 1, g2[1])
        else:
            target = (b2[0], b2[1] + 1)
        bic = bicolor(cells)
        if target in cells or not _links(bic, target):
            raise PlannerError(f"{case}: musketeer cell {target} does not bridge", state)
        place_musketeer(state, target)
        if not _try_send(state, m):
            raise PlannerError(f"{case}: North-East module not free after the musketeer", state)
        _try_send(state, g1)
    else:
        hi, lo, _ = potential_extremes(cells)
        strip_before = len(state.strip)
        plan = bridge(state)
        relaxed = plan.relaxed_floor
        musketeers = set(plan.placements)
        if not _try_send(state, m):
            raise PlannerError(f"{case}: North-East module not free after bridging", state)
        if case == "r3":
            for c in (g1, g2, b1, b2):
                _try_send(state, c)
        else:
            movers = {c for c in state.config
                      if max(abs(c[0] - m[0]), abs(c[1] - m[1])) <= 3
                      and c not in musketeers and c != state.anchor}
            dance = _dance(state, movers, musketeers, hi, lo)
            if dance is not None:
                for mv in dance:
                    state.move(mv)
                _retract(state, musketeers)
            if len(state.strip) < strip_before:
                # the dance failed or a musketeer is stuck: fall back to the r3 order
                for c in (g1, g2, b1, b2):
                    _try_send(state, c)
    gap1, size1 = state.gap(), len(state.config)
    if not is_facet_connected(state.cells):
        raise PlannerError(f"{case}: configuration disconnected", state)
    if gap1 > gap0 or size1 > size0 or (gap1 == gap0 and size1 == size0):
        if not relaxed:
            raise PlannerError(f"{case}: monovariant did not decrease "
                               f"({gap0}, {size0}) -> ({gap1}, {size1})", state)
        state.monovariant_exceptions += 1
    return state


def _links(bic: Bicoloring, c: Cell) -> bool:
    ns = set(neighbors4(c))
    return bool(ns & bic.blue) and bool(ns & bic.green)


def to_strip(config, diagonal: bool = True, check: bool = True,
             max_steps: int | None = None) -> PlannerState:
    """Reconfigure ``config`` into the horizontal strip ending at its anchor."""
    cells = set(config)
    if not cells:
        raise DomainError("cannot reconfigure an empty configuration")
    if not is_facet_connected(cells):
        raise DomainError("input configuration is not facet-connected")
    anchor = min(cells)  # leftmost, then bottommost
    state = PlannerState(cells, anchor, diagonal=diagonal, check=check)
    state.trace.comment(f"ANCHOR {anchor[0]} {anchor[1]}")
    limit = max_steps if max_steps is not None else 4 * len(cells) + 8
    for _ in range(limit):
        state.trace.comment("PHASE drain")
        drain_outer_free(state)
        if len(state.config) == 1:
            return state
        ensure_musketeers(state)
        reconfiguration_step(state)
    raise PlannerError("reconfiguration did not finish within the step bound", state)


def pad_extras(state: PlannerState, total: int = MAX_EXTRAS) -> None:
    """Append extras at the strip tip until ``total`` have been added."""
    while state.extras_added < total:
        state.add_extra()


def _reverse_steps(trace: Trace, dx: int, dy: int) -> list:
    out = []
    for item in reversed(trace.items):
        if isinstance(item, str):
            continue
        if item.op == "MOVE":
            out.append(Step("MOVE", item.move.translated(dx, dy).reversed()))
        else:
            x, y = item.cell
            out.append(Step("REMOVE" if item.op == "ADD" else "ADD", cell=(x + dx, y + dy)))
    return out


def stamp(initial, trace: Trace) -> Trace:
    """Recompute move-set tags and snapshot hashes by replaying ``trace``."""
    from .trace import replay_step, ReplayError

    cells = set(initial)
    for i, step in enumerate(trace.steps):
        if step.op == "MOVE":
            step.set_tag = minimal_set(cells - {step.move.mover}, step.move) or 3
        reason = replay_step(cells, step)
        if reason is not None:
            raise ReplayError(i, reason, step)
        step.hash = config_hash(cells)
    return trace


def plan(src, tgt, diagonal: bool = True) -> tuple[Trace, dict]:
    """Moves from ``src`` to ``tgt`` translated by the anchor offset.

    Both configurations are taken to their strips with exactly five extras;
    the second run is translated onto the first strip and reversed, so
    every extra is removed again on the way out.
    """
    src, tgt = set(src), set(tgt)
    if len(src) != len(tgt):
        raise DomainError(f"source has {len(src)} modules, target has {len(tgt)}")
    a = to_strip(src, diagonal)
    b = to_strip(tgt, diagonal)
    used = max(a.extras_added, b.extras_added)
    pad_extras(a)
    pad_extras(b)
    dx, dy = a.anchor[0] - b.anchor[0], a.anchor[1] - b.anchor[1]
    t = Trace()
    t.comment(f"PLAN n={len(src)} offset={dx},{dy}")
    t.extend(a.trace)
    t.comment("PHASE reverse")
    t.items.extend(_reverse_steps(b.trace, dx, dy))
    stamp(src, t)
    info = {
        "offset": (dx, dy),
        "extras": used,
        "bridges": a.bridges + b.bridges,
        "steps": a.steps + b.steps,
        "final": Configuration((x + dx, y + dy) for x, y in tgt),
    }
    return t, info
