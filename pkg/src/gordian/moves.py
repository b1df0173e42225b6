"""Reidemeister moves and diagram simplification.

Moves are detected on the rotation system and applied as local arc
surgery; every application preserves the knot type, which the test suite
checks through fingerprint invariance.  The simplifier runs reducing
moves greedily, then explores triangle slides and bounded pokes to escape
local minima, keeping the best diagram seen.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass

from .diagram import PlanarDiagram, opposite, rot_next
from .invariants import DEFAULT_CROSSING_CAP, determinant, jones
from .laurent import LaurentPolynomial
from .notation import canonical_signature

DEFAULT_BUDGET = 10_000

# Pokes and slides may grow a diagram this far past the best known size.
EXPLORATION_WINDOW = 4


class StaleMoveError(ValueError):
    """The move no longer applies to this diagram."""


@dataclass(frozen=True)
class Move:
    kind: str          # one of R1-, R2-, R3, R1+, R2+
    site: tuple

    def __str__(self) -> str:
        return f"{self.kind}{self.site}"


@dataclass(frozen=True)
class SimplifyReport:
    initial_crossings: int
    final_crossings: int
    moves_applied: int
    budget_exhausted: bool


# -- detection ---------------------------------------------------------------


def _r1_sites(d: PlanarDiagram):
    for c in d.crossings():
        for s in range(4):
            dart = 4 * c + s
            if d.adj[dart] == rot_next(dart):
                yield Move("R1-", (c, s))


def _r2_sites(d: PlanarDiagram):
    for face in d.faces():
        if len(face) != 2:
            continue
        x, y = face
        if x >> 2 == y >> 2:
            continue
        # One strand must run over at both crossings, the other under.
        if (x & 1) == (d.adj[x] & 1) and (y & 1) == (d.adj[y] & 1) and (x & 1) != (y & 1):
            if x < y:
                yield Move("R2-", (x, y))


def _r3_sites(d: PlanarDiagram):
    for face in d.faces():
        if len(face) != 3:
            continue
        crossings = {dart >> 2 for dart in face}
        if len(crossings) != 3:
            continue
        for i in range(3):
            f1 = face[i]
            if (f1 & 1) == (d.adj[f1] & 1):
                f2 = face[(i + 1) % 3]
                f3 = face[(i + 2) % 3]
                yield Move("R3", (f1, f2, f3))


def find_moves(d: PlanarDiagram) -> list[Move]:
    """All applicable reducing moves and triangle slides, deterministically
    ordered.  Enlarging moves are enumerated by their own generators."""
    moves = list(_r1_sites(d)) + list(_r2_sites(d)) + list(_r3_sites(d))
    moves.sort(key=lambda m: (m.kind, m.site))
    return moves


def enumerate_r1_plus(d: PlanarDiagram):
    """Kink insertions: one per (arc end, pattern)."""
    for x in d.darts():
        if x < d.adj[x]:
            for t in range(4):
                yield Move("R1+", (x, t))


def enumerate_r2_plus(d: PlanarDiagram):
    """Pokes: one arc pushed across another arc of a shared face."""
    for face in d.faces():
        arcs_seen = set()
        for u in face:
            arcs_seen.add(frozenset((u, d.adj[u])))
        for i, u in enumerate(face):
            for v in face[i + 1 :]:
                if frozenset((u, d.adj[u])) == frozenset((v, d.adj[v])):
                    continue
                for over in (0, 1):
                    yield Move("R2+", (u, v, over))


# -- application -------------------------------------------------------------


def _delete_crossings(d: PlanarDiagram, dead: set[int]) -> PlanarDiagram:
    """Remove crossings, splicing strands straight through them."""
    dead_darts = {x for c in dead for x in range(4 * c, 4 * c + 4)}

    def follow(w: int) -> int:
        while (w >> 2) in dead:
            w = d.adj[opposite(w)]
        return w

    # Strands trapped entirely inside the deleted region become free loops.
    loops = 0
    visited: set[int] = set()
    for start in dead_darts:
        if start in visited:
            continue
        w = start
        internal = True
        chain = []
        while True:
            chain.append(w)
            chain.append(opposite(w))
            nxt = d.adj[opposite(w)]
            if (nxt >> 2) not in dead:
                internal = False
                break
            w = nxt
            if w == start:
                break
        if internal:
            loops += 1
        visited.update(chain)
        # Walk the other direction too so every dart lands in visited.
        w = start
        while True:
            prev = d.adj[w]
            if (prev >> 2) not in dead:
                break
            w = opposite(prev)
            if w == start or w in visited:
                break
            visited.add(w)
            visited.add(opposite(w))

    keep = [c for c in d.crossings() if c not in dead]
    remap = {c: i for i, c in enumerate(keep)}

    def md(x: int) -> int:
        return 4 * remap[x >> 2] + (x & 3)

    adj = [0] * (4 * len(keep))
    for c in keep:
        for s in range(4):
            x = 4 * c + s
            adj[md(x)] = md(follow(d.adj[x]))
    return PlanarDiagram(tuple(adj), d.free_loops + loops)


def _insert_crossing_pair(d, u, v, over):
    """Wiring for a poke of arc (u, adj[u]) across arc (v, adj[v])."""
    up, vp = d.adj[u], d.adj[v]
    n = d.n
    c1, c2 = 4 * n, 4 * n + 4
    # slots: strand A (the u-arc) uses N/S, strand B uses W/E; A runs over
    # when `over`, so its slots get odd parity.
    if over:
        N1, W1, S1, E1 = c1 + 1, c1 + 2, c1 + 3, c1 + 0
        N2, W2, S2, E2 = c2 + 1, c2 + 2, c2 + 3, c2 + 0
    else:
        N1, W1, S1, E1 = c1 + 0, c1 + 1, c1 + 2, c1 + 3
        N2, W2, S2, E2 = c2 + 0, c2 + 1, c2 + 2, c2 + 3
    adj = list(d.adj) + [0] * 8
    pairs = [
        (u, N1), (S1, S2), (N2, up),
        (v, E2), (W2, E1), (W1, vp),
    ]
    for a, b in pairs:
        adj[a], adj[b] = b, a
    return PlanarDiagram(tuple(adj), d.free_loops)


def apply_move(d: PlanarDiagram, m: Move) -> PlanarDiagram:
    """Apply a move; raises StaleMoveError when it no longer fits ``d``."""
    if m.kind == "R1-":
        c, s = m.site
        dart = 4 * c + s
        if not (c < d.n and d.adj[dart] == rot_next(dart)):
            raise StaleMoveError(f"{m} does not apply")
        return _delete_crossings(d, {c})
    if m.kind == "R2-":
        x, y = m.site
        if not (
            x < len(d.adj)
            and y < len(d.adj)
            and rot_next(d.adj[x]) == y
            and rot_next(d.adj[y]) == x
            and (x & 1) == (d.adj[x] & 1)
            and (y & 1) == (d.adj[y] & 1)
            and (x & 1) != (y & 1)
            and x >> 2 != y >> 2
        ):
            raise StaleMoveError(f"{m} does not apply")
        return _delete_crossings(d, {x >> 2, y >> 2})
    if m.kind == "R3":
        return _apply_r3(d, m)
    if m.kind == "R1+":
        x, t = m.site
        if x >= len(d.adj):
            raise StaleMoveError(f"{m} does not apply")
        y = d.adj[x]
        n = d.n
        base = 4 * n
        adj = list(d.adj) + [0] * 4
        tin, tout = base + ((t + 2) & 3), base + ((t + 3) & 3)
        loop_a, loop_b = base + t, base + ((t + 1) & 3)
        adj[x], adj[tin] = tin, x
        adj[tout], adj[y] = y, tout
        adj[loop_a], adj[loop_b] = loop_b, loop_a
        return PlanarDiagram(tuple(adj), d.free_loops)
    if m.kind == "R2+":
        u, v, over = m.site
        if u >= len(d.adj) or v >= len(d.adj):
            raise StaleMoveError(f"{m} does not apply")
        if frozenset((u, d.adj[u])) == frozenset((v, d.adj[v])):
            raise StaleMoveError(f"{m} does not apply")
        return _insert_crossing_pair(d, u, v, over)
    raise ValueError(f"unknown move kind {m.kind}")


def _apply_r3(d: PlanarDiagram, m: Move) -> PlanarDiagram:
    f1, f2, f3 = m.site
    ok = (
        max(m.site) < len(d.adj)
        and rot_next(d.adj[f1]) == f2
        and rot_next(d.adj[f2]) == f3
        and rot_next(d.adj[f3]) == f1
        and (f1 & 1) == (d.adj[f1] & 1)
        and len({f1 >> 2, f2 >> 2, f3 >> 2}) == 3
    )
    if not ok:
        raise StaleMoveError(f"{m} does not apply")
    a, c = opposite(f1), opposite(d.adj[f1])
    g, k = opposite(f2), opposite(d.adj[f2])
    h, b = opposite(f3), opposite(d.adj[f3])
    # The six corner darts hand their outside arcs to the face darts, and
    # three fresh arcs rebuild the triangle on the other side.
    handover = {c: f1, a: d.adj[f1], h: d.adj[f3], b: f3, k: f2, g: d.adj[f2]}
    adj = list(d.adj)
    old_external = {x: d.adj[x] for x in handover}
    assigned = set()
    for x, owner in handover.items():
        if x in assigned:
            continue
        px = old_external[x]
        if px in handover:
            other = handover[px]
            adj[owner], adj[other] = other, owner
            assigned.add(px)
        else:
            adj[owner], adj[px] = px, owner
        assigned.add(x)
    for x, y in ((a, c), (b, h), (g, k)):
        adj[x], adj[y] = y, x
    return PlanarDiagram(tuple(adj), d.free_loops)


# -- simplification -----------------------------------------------------------


def _reduce_greedy(d: PlanarDiagram, counter: list[int], budget: int) -> PlanarDiagram:
    """Apply R1-/R2- repeatedly, lowest site first, until none remain."""
    while counter[0] < budget:
        move = next(_r1_sites(d), None)
        if move is None:
            move = next(_r2_sites(d), None)
        if move is None:
            break
        d = apply_move(d, move)
        counter[0] += 1
    return d


def simplify(
    d: PlanarDiagram, budget: int = DEFAULT_BUDGET
) -> tuple[PlanarDiagram, SimplifyReport]:
    """Reduce a diagram without changing its knot type.

    Greedy kink/bigon removal first, then a best-first exploration over
    triangle slides and pokes within EXPLORATION_WINDOW extra crossings,
    counting every applied move against ``budget``.
    """
    if budget <= 0:
        raise ValueError("budget must be positive")
    initial = d.n
    counter = [0]
    best = _reduce_greedy(d, counter, budget)
    if best.n == 0 or counter[0] >= budget:
        return best, SimplifyReport(initial, best.n, counter[0], counter[0] >= budget)
    heap: list[tuple[int, int, PlanarDiagram]] = []
    tick = 0
    heapq.heappush(heap, (best.n, tick, best))
    seen = {canonical_signature(best)}
    exhausted = False
    while heap:
        if counter[0] >= budget:
            exhausted = True
            break
        _, _, cur = heapq.heappop(heap)
        if cur.n > best.n + EXPLORATION_WINDOW:
            continue
        branches = list(_r3_sites(cur)) + list(enumerate_r2_plus(cur))
        for move in branches:
            if counter[0] >= budget:
                exhausted = True
                break
            try:
                nxt = apply_move(cur, move)
            except StaleMoveError:
                continue
            counter[0] += 1
            nxt = _reduce_greedy(nxt, counter, budget)
            if nxt.n > best.n + EXPLORATION_WINDOW:
                continue
            sig = canonical_signature(nxt)
            if sig in seen:
                continue
            seen.add(sig)
            if nxt.n < best.n:
                best = nxt
                if best.n == 0:
                    return best, SimplifyReport(initial, 0, counter[0], False)
            tick += 1
            heapq.heappush(heap, (nxt.n, tick, nxt))
    return best, SimplifyReport(initial, best.n, counter[0], exhausted)


# -- unknot certification ------------------------------------------------------


@dataclass(frozen=True)
class UnknotVerdict:
    status: str              # "unknot" or "unknown"
    provably_knotted: bool   # invariant-level obstruction found
    report: SimplifyReport | None

    def is_unknot(self) -> bool:
        return self.status == "unknot"


def certify_unknot(d: PlanarDiagram, budget: int = DEFAULT_BUDGET) -> UnknotVerdict:
    """Sound unknot certification: ``unknot`` only when a move sequence
    reaches 0 crossings; invariant obstructions short-circuit to
    ``unknown`` with the knotted flag."""
    if d.n == 0:
        return UnknotVerdict("unknot", False, None)
    if determinant(d) != 1:
        return UnknotVerdict("unknown", True, None)
    if d.n <= DEFAULT_CROSSING_CAP and jones(d) != LaurentPolynomial.one():
        return UnknotVerdict("unknown", True, None)
    result, report = simplify(d, budget)
    if result.n == 0:
        return UnknotVerdict("unknot", False, report)
    return UnknotVerdict("unknown", False, report)
