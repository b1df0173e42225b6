"""Planar knot-diagram kernel.

A diagram is stored as a rotation system on darts.  Crossing ``c`` owns the
four darts ``4c .. 4c+3``; the slot ``s = dart & 3`` enumerates the four
arc-ends counterclockwise.  The strand through slots 0 and 2 passes under,
the strand through slots 1 and 3 passes over.  Arcs are recorded by the
fixed-point-free involution ``adj`` pairing darts, and the implicit
counterclockwise slot order is the embedding: faces, checkerboard colorings
and all invariants are derived from it.

Diagrams are immutable once built; every operation returns a new diagram.
"""

from __future__ import annotations

from dataclasses import dataclass


def opposite(dart: int) -> int:
    """Dart of the same strand on the far side of its crossing."""
    return (dart & ~3) | ((dart + 2) & 3)


def rot_next(dart: int) -> int:
    """Next dart counterclockwise around the crossing."""
    return (dart & ~3) | ((dart + 1) & 3)


def rot_prev(dart: int) -> int:
    return (dart & ~3) | ((dart + 3) & 3)


@dataclass(frozen=True)
class CrossingRef:
    """A crossing addressed by its position in DT-entry order."""

    index: int


class PlanarDiagram:
    """Combinatorial 4-valent knot diagram with an explicit embedding.

    ``adj`` is the arc involution on darts.  ``free_loops`` counts closed
    crossingless components; a 0-crossing unknot is ``PlanarDiagram((), 1)``.
    """

    __slots__ = ("adj", "free_loops", "_cache")

    def __init__(self, adj: tuple[int, ...], free_loops: int = 0):
        self.adj = tuple(adj)
        self.free_loops = free_loops
        self._cache: dict = {}
        if len(self.adj) % 4:
            raise ValueError("dart count must be a multiple of 4")

    # -- basic structure -------------------------------------------------

    @property
    def n(self) -> int:
        """Crossing count."""
        return len(self.adj) // 4

    def __len__(self) -> int:
        return self.n

    def crossings(self) -> range:
        return range(self.n)

    def darts(self) -> range:
        return range(4 * self.n)

    def verify(self) -> None:
        """Check structural invariants; raises ValueError on violation."""
        nd = len(self.adj)
        for d in range(nd):
            a = self.adj[d]
            if not 0 <= a < nd or a == d or self.adj[a] != d:
                raise ValueError(f"adjacency is not a fixed-point-free involution at dart {d}")
        if self.n and self.component_count() != 1:
            raise ValueError("diagram must have exactly one closed component")
        if self.n and self.face_count() != self.n + 2:
            raise ValueError("rotation system is not planar (Euler check failed)")
        if self.free_loops < 0:
            raise ValueError("negative free loop count")

    # -- traversal -------------------------------------------------------

    def arrival_darts(self) -> tuple[int, ...]:
        """Arrival darts in traversal order, starting from dart 0's orbit.

        The orientation of the (single) component is the direction of
        travel that visits dart 0 as an arrival.
        """
        if "arrivals" in self._cache:
            return self._cache["arrivals"]
        if self.n == 0:
            self._cache["arrivals"] = ()
            return ()
        out = []
        d = 0
        while True:
            out.append(d)
            d = self.adj[opposite(d)]
            if d == 0:
                break
            if len(out) > len(self.adj):
                raise ValueError("traversal does not close up")
        arr = tuple(out)
        self._cache["arrivals"] = arr
        return arr

    def component_count(self) -> int:
        if self.n == 0:
            return self.free_loops
        seen = [False] * len(self.adj)
        orbits = 0
        for d0 in self.darts():
            if seen[d0]:
                continue
            orbits += 1
            d = d0
            while not seen[d]:
                seen[d] = True
                d = self.adj[opposite(d)]
        return orbits // 2 + self.free_loops

    # -- faces -----------------------------------------------------------

    def faces(self) -> list[tuple[int, ...]]:
        """Faces of the embedded diagram, each as a dart cycle."""
        if "faces" in self._cache:
            return self._cache["faces"]
        seen = [False] * len(self.adj)
        result = []
        for d0 in self.darts():
            if seen[d0]:
                continue
            cycle = []
            d = d0
            while not seen[d]:
                seen[d] = True
                cycle.append(d)
                d = rot_next(self.adj[d])
            result.append(tuple(cycle))
        self._cache["faces"] = result
        return result

    def face_count(self) -> int:
        return len(self.faces())

    # -- orientation-dependent data ---------------------------------------

    def crossing_signs(self) -> tuple[int, ...]:
        """Sign of each crossing (right-hand rule) under the canonical
        traversal orientation."""
        if "signs" in self._cache:
            return self._cache["signs"]
        arrivals = set(self.arrival_darts())
        signs = []
        for c in self.crossings():
            base = 4 * c
            under_in = next(base + s for s in (0, 2) if base + s in arrivals)
            over_in = next(base + s for s in (1, 3) if base + s in arrivals)
            signs.append(+1 if (over_in - under_in) % 4 == 3 else -1)
        signs = tuple(signs)
        self._cache["signs"] = signs
        return signs

    def writhe(self) -> int:
        return sum(self.crossing_signs()) if self.n else 0

    def __repr__(self) -> str:
        return f"PlanarDiagram(n={self.n}, free_loops={self.free_loops})"


# -- structural operations --------------------------------------------------


def _relabel(d: PlanarDiagram, dart_map) -> PlanarDiagram:
    nd = len(d.adj)
    new_adj = [0] * nd
    for x in range(nd):
        new_adj[dart_map(x)] = dart_map(d.adj[x])
    return PlanarDiagram(tuple(new_adj), d.free_loops)


def change_crossing(d: PlanarDiagram, c: CrossingRef | int) -> PlanarDiagram:
    """Swap over/under at one crossing, leaving all other structure alone."""
    idx = c.index if isinstance(c, CrossingRef) else c
    if not 0 <= idx < d.n:
        raise IndexError(f"crossing index {idx} out of range for {d.n}-crossing diagram")
    base = 4 * idx

    def remap(x: int) -> int:
        if x & ~3 == base:
            return base | ((x + 1) & 3)
        return x

    return _relabel(d, remap)


def mirror(d: PlanarDiagram) -> PlanarDiagram:
    """Swap over/under at every crossing (the mirror-image knot)."""
    return _relabel(d, lambda x: (x & ~3) | ((x + 1) & 3))


def reflect(d: PlanarDiagram) -> PlanarDiagram:
    """Reverse the embedding's rotation while keeping every over/under
    assignment.

    This redraws the diagram reflected in the plane, which also yields the
    mirror-image knot; it realizes the same DT code as ``d``.
    """
    return _relabel(d, lambda x: (x & ~3) | ((4 - (x & 3)) & 3))


def connected_sum(a: PlanarDiagram, b: PlanarDiagram) -> PlanarDiagram:
    """Join two one-component diagrams along a deleted arc of each.

    The splice site is fixed (the arc closing each diagram's canonical
    traversal) so results are deterministic; any site yields the same knot.
    """
    for d in (a, b):
        if d.component_count() != 1:
            raise ValueError("connected summands must each have one component")
    if a.n == 0:
        return PlanarDiagram(b.adj, b.free_loops)
    if b.n == 0:
        return PlanarDiagram(a.adj, a.free_loops)
    off = 4 * a.n
    adj = list(a.adj) + [x + off for x in b.adj]
    a_arr = a.arrival_darts()
    b_arr = [x + off for x in b.arrival_darts()]
    # Arc closing a's traversal: departure of its last arrival -> dart a_arr[0].
    a_out = opposite(a_arr[-1])
    b_out = opposite(b_arr[-1])
    adj[a_out], adj[b_arr[0]] = b_arr[0], a_out
    adj[b_out], adj[a_arr[0]] = a_arr[0], b_out
    return PlanarDiagram(tuple(adj), a.free_loops + b.free_loops)


def writhe(d: PlanarDiagram) -> int:
    """Sum of crossing signs under the right-hand rule."""
    return d.writhe()
