"""Dowker-Thistlethwaite codes: parsing, validation, realization, emission.

A DT code lists, for the 1st, 3rd, 5th, ... passage of a knot traversal,
the even passage number met at the same crossing; the entry is negative
exactly when the even-numbered passage runs over.  Realization rebuilds a
planar diagram from the code by splitting the chord diagram into
interlacement-connected blocks (connected-sum factors, kinks) and finding
a planar rotation system for each block by exhaustive search over the one
free binary choice per crossing, verified with an Euler face count.

A DT code pins a prime diagram only up to reflection of the embedding;
``dt_to_diagram`` resolves the ambiguity deterministically, and
``emit_dt`` picks the code variant that reproduces its input's chirality.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .diagram import PlanarDiagram, opposite, reflect

ERROR_KINDS = ("MalformedSyntax", "OddEntry", "DuplicateMagnitude", "NonRealizable")

# Exhaustive rotation search is exponential per prime block; codes in the
# bundled data stay well below this.
PRIME_BLOCK_LIMIT = 22


class NotationError(ValueError):
    """DT text or code failed validation or realization."""

    def __init__(self, kind: str, detail: str):
        if kind not in ERROR_KINDS:
            raise ValueError(f"unknown notation error kind {kind!r}")
        self.kind = kind
        self.detail = detail
        super().__init__(f"{kind}: {detail}")


class EmptyDiagramError(ValueError):
    """No DT code exists for a 0-crossing diagram."""


@dataclass(frozen=True)
class DtCode:
    """Validated Dowker-Thistlethwaite code."""

    entries: tuple[int, ...]

    def __post_init__(self):
        _validate_entries(self.entries)

    @property
    def n(self) -> int:
        """Crossing count."""
        return len(self.entries)

    def render(self) -> str:
        """Canonical text form, e.g. ``DT:[4,6,2]``."""
        return "DT:[" + ",".join(str(e) for e in self.entries) + "]"

    def negated(self) -> "DtCode":
        """All signs flipped (the code of the mirror-image knot)."""
        return DtCode(tuple(-e for e in self.entries))

    def with_entry_flipped(self, index: int) -> "DtCode":
        """Sign of one entry flipped (a crossing change at that index)."""
        if not 0 <= index < len(self.entries):
            raise IndexError(f"entry index {index} out of range")
        entries = list(self.entries)
        entries[index] = -entries[index]
        return DtCode(tuple(entries))

    def __str__(self) -> str:
        return self.render()


def _validate_entries(entries: tuple[int, ...]) -> None:
    n = len(entries)
    for e in entries:
        if e % 2:
            raise NotationError("OddEntry", f"entry {e} is odd; DT entries are even")
    expected = set(range(2, 2 * n + 1, 2))
    seen: set[int] = set()
    for e in entries:
        m = abs(e)
        if m in seen:
            raise NotationError("DuplicateMagnitude", f"magnitude {m} appears twice")
        if m not in expected:
            raise NotationError(
                "DuplicateMagnitude",
                f"magnitude {m} outside the required set 2..{2 * n}",
            )
        seen.add(m)


def parse_dt(text: str) -> DtCode:
    """Parse a bracketed integer list, optionally prefixed ``DT:``."""
    s = text.strip()
    if s.startswith("DT:"):
        s = s[3:].strip()
    if not (s.startswith("[") and s.endswith("]")):
        raise NotationError("MalformedSyntax", f"expected a bracketed list, got {text!r}")
    body = s[1:-1].strip()
    if not body:
        return DtCode(())
    entries = []
    for piece in body.split(","):
        piece = piece.strip()
        try:
            entries.append(int(piece))
        except ValueError:
            raise NotationError("MalformedSyntax", f"bad integer {piece!r}") from None
    return DtCode(tuple(entries))


# -- realization -------------------------------------------------------------


def _positions(code: DtCode):
    """Per 0-based traversal position: crossing index and over/under flag."""
    n = code.n
    crossing_of = [0] * (2 * n)
    over_of = [False] * (2 * n)
    for i, e in enumerate(code.entries):
        odd = 2 * i          # 0-based position of odd passage 2i+1
        even = abs(e) - 1    # 0-based position of even passage |e|
        crossing_of[odd] = i
        crossing_of[even] = i
        even_over = e < 0
        over_of[even] = even_over
        over_of[odd] = not even_over
    return crossing_of, over_of


def _interlace_components(pairs: list[tuple[int, int]]) -> list[int]:
    """Union chords that interleave; returns a component id per chord."""
    m = len(pairs)
    parent = list(range(m))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i in range(m):
        lo_i, hi_i = pairs[i]
        for j in range(i + 1, m):
            lo_j, hi_j = pairs[j]
            if lo_i < lo_j < hi_i < hi_j or lo_j < lo_i < hi_j < hi_i:
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[ri] = rj
    return [find(i) for i in range(m)]


def _realize_prime(positions, crossing_of, over_of):
    """Embed one interlacement-connected block by exhaustive rotation search.

    ``positions`` lists global position ids in traversal order.  Returns
    ``(adj, arrivals)`` where ``adj`` maps concrete darts (4*crossing+slot)
    and ``arrivals`` maps each listed position to its arrival dart; the
    closure arc (last position back to first) is included.
    """
    m = len(positions)
    k = m // 2
    if k > PRIME_BLOCK_LIMIT:
        raise NotationError(
            "NonRealizable",
            f"prime tangle with {k} crossings exceeds the embedding search limit",
        )
    block_crossings = []
    local_of: dict[int, int] = {}
    for p in positions:
        c = crossing_of[p]
        if c not in local_of:
            local_of[c] = len(block_crossings)
            block_crossings.append(c)

    # Abstract darts per local crossing: 0 under-in, 1 over-in, 2 under-out,
    # 3 over-out.  Arcs are independent of the rotation choices.
    def arr_abstract(p):
        return 4 * local_of[crossing_of[p]] + (1 if over_of[p] else 0)

    def dep_abstract(p):
        return 4 * local_of[crossing_of[p]] + (3 if over_of[p] else 2)

    nd = 4 * k
    arc = [0] * nd
    for idx, p in enumerate(positions):
        q = positions[(idx + 1) % m]
        a, b = dep_abstract(p), arr_abstract(q)
        arc[a], arc[b] = b, a

    need = k + 2
    base_step = [1] * k
    found = None
    for bits in range(1 << (k - 1)):
        step = base_step[:]
        b = bits
        j = 1
        while b:
            if b & 1:
                step[j] = 3
            b >>= 1
            j += 1
        seen = bytearray(nd)
        faces = 0
        remaining = nd
        ok = True
        for d0 in range(nd):
            if seen[d0]:
                continue
            faces += 1
            d = d0
            length = 0
            while not seen[d]:
                seen[d] = 1
                length += 1
                a = arc[d]
                d = (a & ~3) | ((a + step[a >> 2]) & 3)
            remaining -= length
            # Monogon faces make single-dart orbits possible, so each
            # untraced dart can contribute at most one more face.
            if faces + remaining < need:
                ok = False
                break
        if ok and faces == need:
            found = step
            break
    if found is None:
        raise NotationError(
            "NonRealizable", "chord diagram admits no planar transversal embedding"
        )

    # Both reflections of a block are valid embeddings; couple the choice to
    # the sign of the block's first entry so that negating every entry of a
    # code realizes exactly the mirror-image knot.
    c0 = block_crossings[0]
    even_passage_pos = next(
        p for p in positions if crossing_of[p] == c0 and p % 2 == 1
    )
    if over_of[even_passage_pos]:
        found = [3 if s == 1 else 1 for s in found]

    # Concrete slots: under-in 0, under-out 2; the rotation direction choice
    # places over-in at slot 1 (step +1) or slot 3 (step -1).
    def concrete(abstract: int) -> int:
        local = abstract >> 2
        t = abstract & 3
        c = block_crossings[local]
        if t == 0:
            s = 0
        elif t == 2:
            s = 2
        elif t == 1:
            s = 1 if found[local] == 1 else 3
        else:
            s = 3 if found[local] == 1 else 1
        return 4 * c + s

    adj: dict[int, int] = {}
    arrivals: dict[int, int] = {}
    for idx, p in enumerate(positions):
        q = positions[(idx + 1) % m]
        a, b = concrete(dep_abstract(p)), concrete(arr_abstract(q))
        adj[a], adj[b] = b, a
        arrivals[q] = b
    return adj, arrivals


def _realize_positions(positions, crossing_of, over_of):
    """Realize the chords supported on ``positions`` (cyclic traversal order)."""
    chord_pairs = []
    first: dict[int, int] = {}
    for i, p in enumerate(positions):
        c = crossing_of[p]
        if c in first:
            chord_pairs.append((first[c], i))
        else:
            first[c] = i
    comp_of_chord = _interlace_components(chord_pairs)
    comps: dict[int, list[tuple[int, int]]] = {}
    for pair, comp in zip(chord_pairs, comp_of_chord):
        comps.setdefault(comp, []).append(pair)
    if len(comps) == 1:
        return _realize_prime(positions, crossing_of, over_of)

    # The component of minimal span is contiguous in list order; realize it
    # standalone and splice it back into the remainder's corresponding arc.
    best = None
    for pairs in comps.values():
        lo = min(i for pair in pairs for i in pair)
        hi = max(i for pair in pairs for i in pair)
        if best is None or hi - lo < best[1] - best[0]:
            best = (lo, hi, pairs)
    lo, hi, best_pairs = best
    if hi - lo + 1 != 2 * len(best_pairs):
        raise AssertionError("innermost interlacement component is not contiguous")
    block_positions = positions[lo : hi + 1]
    rest_positions = positions[:lo] + positions[hi + 1 :]

    block_adj, block_arr = _realize_positions(block_positions, crossing_of, over_of)
    rest_adj, rest_arr = _realize_positions(rest_positions, crossing_of, over_of)

    # Cut the remainder's arc spanning the gap and the block's closure arc,
    # then cross-connect so the traversal runs through the block in place.
    after = rest_positions[lo % len(rest_positions)]
    rest_in = rest_arr[after]
    rest_out = rest_adj[rest_in]
    block_in = block_arr[block_positions[0]]
    block_out = block_adj[block_in]
    adj = dict(rest_adj)
    adj.update(block_adj)
    adj[rest_out] = block_in
    adj[block_in] = rest_out
    adj[block_out] = rest_in
    adj[rest_in] = block_out
    arrivals = dict(rest_arr)
    arrivals.update(block_arr)
    return adj, arrivals


@lru_cache(maxsize=4096)
def _realize_cached(entries: tuple[int, ...]) -> PlanarDiagram:
    code = DtCode(entries)
    n = code.n
    if n == 0:
        return PlanarDiagram((), free_loops=1)
    crossing_of, over_of = _positions(code)
    adj, arrivals = _realize_positions(list(range(2 * n)), crossing_of, over_of)
    flat = [0] * (4 * n)
    for a, b in adj.items():
        flat[a] = b
    diagram = PlanarDiagram(tuple(flat))
    diagram.verify()
    regenerated = _emit_entries(diagram, arrivals[0])
    if regenerated != entries:
        raise AssertionError(
            f"realization retrace mismatch: {regenerated} != {entries}"
        )
    return diagram


def dt_to_diagram(code: DtCode) -> PlanarDiagram:
    """Reconstruct a one-component planar diagram realizing ``code``.

    Deterministic: of the two reflected embeddings a code admits, the
    search always returns the same one.  Raises ``NotationError`` with kind
    ``NonRealizable`` when the pairing admits no planar embedding.
    """
    return _realize_cached(code.entries)


# -- emission ---------------------------------------------------------------


def _emit_entries(d: PlanarDiagram, start_dart: int) -> tuple[int, ...]:
    """DT entries for the traversal that first arrives via ``start_dart``."""
    n = d.n
    visits: dict[int, list[tuple[int, bool]]] = {}
    dart = start_dart
    for pos in range(1, 2 * n + 1):
        c = dart >> 2
        over = bool(dart & 1)
        visits.setdefault(c, []).append((pos, over))
        dart = d.adj[opposite(dart)]
    if dart != start_dart:
        raise ValueError("traversal did not close after 2n passages")
    entries = [0] * n
    for c, vs in visits.items():
        (p1, over1), (p2, over2) = vs
        if p1 % 2 == p2 % 2:
            raise ValueError("passage labels at a crossing must have opposite parity")
        odd, even, even_over = (p1, p2, over2) if p1 % 2 else (p2, p1, over1)
        entries[(odd - 1) // 2] = -even if even_over else even
    return tuple(entries)


def _emission_bits(d: PlanarDiagram, start_dart: int) -> tuple[int, ...]:
    """Embedding chirality bit per crossing (in entry order) for a start.

    The bit records whether the over strand arrives one slot
    counterclockwise of the under arrival; it flips under reflection, so
    signatures separate the two embeddings a DT code admits.
    """
    n = d.n
    order: list[int] = []
    arrival: dict[int, list[int]] = {}
    dart = start_dart
    for pos in range(1, 2 * n + 1):
        c = dart >> 2
        arrival.setdefault(c, []).append(dart)
        if pos % 2:
            order.append(c)
        dart = d.adj[opposite(dart)]
    bits = []
    for c in order:
        u = next(x for x in arrival[c] if not x & 1)
        o = next(x for x in arrival[c] if x & 1)
        bits.append(1 if (o - u) % 4 == 1 else 0)
    return tuple(bits)


def canonical_signature(d: PlanarDiagram):
    """Label-independent identifier of the embedded diagram.

    Minimizes the (entries, chirality-bits) pair over every traversal start
    and direction; distinguishes reflected embeddings and mirrored knots.
    """
    if d.n == 0:
        return ("unknot", d.free_loops)
    best = None
    for start in d.darts():
        key = (_emit_entries(d, start), _emission_bits(d, start))
        if best is None or key < best:
            best = key
    return best


def emit_dt(d: PlanarDiagram) -> DtCode:
    """Extract a DT code whose realization reproduces ``d``'s knot.

    The lexicographically least emission is chosen.  A code pins a diagram
    only up to reflection; when the deterministic realizer rebuilds the
    reflected (mirror-image) diagram, the all-signs-flipped code is
    returned instead, which realizes to the mirror of the rebuilt knot and
    therefore keeps ``fingerprint(dt_to_diagram(emit_dt(d)))`` faithful.
    """
    if d.n == 0:
        raise EmptyDiagramError("0-crossing diagrams carry no DT code")
    if d.component_count() != 1:
        raise ValueError("DT codes exist only for one-component diagrams")
    entries = min(_emit_entries(d, start) for start in d.darts())
    code = DtCode(entries)
    rebuilt = dt_to_diagram(code)
    sig = canonical_signature(d)
    if canonical_signature(rebuilt) == sig:
        return code
    if canonical_signature(reflect(rebuilt)) != sig:
        raise AssertionError("emission does not reproduce the diagram up to reflection")
    return code.negated()
