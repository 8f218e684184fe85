"""Maximal edge-disjoint cycle families without chords in the remainder,
precise parts, and tangent-path derivation.

The extraction removes shortest directed cycles until the remainder is
acyclic, then repeatedly repairs chords: if the remainder holds an edge
x->y between two vertices of a family cycle, the cycle is replaced by its
shortcut through x->y, the bypassed arc's edges return to the remainder,
and any cycles this reopens are re-extracted.  Each repair strictly lowers
the potential (total family edge count minus (m+1) per family cycle), so
the loop terminates, and on exit no family cycle has a remainder chord.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Optional, Sequence

from .core import (
    Digraph,
    SignTable,
    canonical_cycle,
    cycle_arc,
    cycle_edges,
    path_edges,
)


class NotIncidentError(ValueError):
    pass


class ChordViolationError(ValueError):
    """The no-chord certificate was wrong: an expected interior vertex is missing."""


class NoSignChangeError(ValueError):
    pass


class ZeroInteriorError(ValueError):
    """Tangent derivation hit an excess-zero vertex it was promised not to see."""


@dataclass(frozen=True)
class CycleFamily:
    cycles: tuple[tuple[int, ...], ...]

    def edge_owner(self) -> dict[tuple[int, int], int]:
        owner = {}
        for i, c in enumerate(self.cycles):
            for e in cycle_edges(c):
                assert e not in owner, "family cycles must be edge-disjoint"
                owner[e] = i
        return owner

    def all_edges(self) -> set[tuple[int, int]]:
        return {e for c in self.cycles for e in cycle_edges(c)}


@dataclass(frozen=True)
class TangentPath:
    """A path meeting its cycle in exactly one vertex, an endpoint."""

    path: tuple[int, ...]
    cycle_index: int
    touch: int


class _MutableDigraph:
    """Adjacency sets used during extraction; cheap edge add/remove."""

    def __init__(self, D: Digraph):
        self.n = D.n
        self.out = [set(a) for a in D.out_adj]
        self.inn = [set(a) for a in D.in_adj]
        self.m = D.m

    def remove_cycle(self, cycle):
        for u, v in cycle_edges(cycle):
            self.out[u].remove(v)
            self.inn[v].remove(u)
        self.m -= len(cycle)

    def add_edges(self, edges):
        for u, v in edges:
            self.out[u].add(v)
            self.inn[v].add(u)
        self.m += len(edges)

    def remove_edge(self, u, v):
        self.out[u].remove(v)
        self.inn[v].remove(u)
        self.m -= 1

    def edges_sorted(self):
        return sorted((u, v) for u in range(self.n) for v in self.out[u])

    def to_digraph(self) -> Digraph:
        return Digraph(self.n, self.edges_sorted())


def _shortest_cycle(g: _MutableDigraph) -> Optional[tuple[int, ...]]:
    """Shortest directed cycle in the residual, or None.

    Scans edges in lexicographic order; for edge (u, v) the shortest cycle
    through it closes a BFS path v -> u.  The first edge attaining the best
    length wins, and BFS parents prefer smaller indices, so the outcome is
    deterministic.
    """
    best_len = None
    best_cycle = None
    for u, v in g.edges_sorted():
        cap = (best_len - 1) if best_len is not None else g.m + 1
        parent = {v: None}
        dist = {v: 0}
        queue = deque([v])
        found = None
        while queue and found is None:
            x = queue.popleft()
            if dist[x] + 1 > cap:
                break
            for y in sorted(g.out[x]):
                if y == u:
                    found = x
                    break
                if y not in dist:
                    dist[y] = dist[x] + 1
                    parent[y] = x
                    queue.append(y)
        if found is not None:
            length = dist[found] + 2
            if best_len is None or length < best_len:
                walk = [found]
                while parent[walk[-1]] is not None:
                    walk.append(parent[walk[-1]])
                walk.append(u)  # walk = found..v reversed, then u
                cycle = tuple(reversed(walk))  # u, v, ..., found
                best_len, best_cycle = length, cycle
                if best_len == 2:
                    break
    return best_cycle


def _extract_until_acyclic(g: _MutableDigraph, family: list):
    while True:
        cyc = _shortest_cycle(g)
        if cyc is None:
            return
        g.remove_cycle(cyc)
        family.append(canonical_cycle(cyc))


def _find_chord(g: _MutableDigraph, family) -> Optional[tuple[int, int, int]]:
    for i, cyc in enumerate(family):
        on_cycle = set(cyc)
        for x in cyc:
            for y in sorted(g.out[x]):
                if y in on_cycle and y != x:
                    return i, x, y
    return None


def extract_chordless_maximal(D: Digraph) -> tuple[CycleFamily, Digraph]:
    """Maximal edge-disjoint cycle family whose cycles have no chord in the
    acyclic remainder.  Returns (family, remainder).
    """
    g = _MutableDigraph(D)
    family: list[tuple[int, ...]] = []
    _extract_until_acyclic(g, family)
    potential_cap = None
    while True:
        hit = _find_chord(g, family)
        if hit is None:
            break
        i, x, y = hit
        old = family[i]
        # Shortcut: keep the arc y..x, ride the chord x->y.
        arc_keep = cycle_arc(old, y, x)  # vertices y..x along the old cycle
        bypass = cycle_arc(old, x, y)  # vertices x..y; these edges return
        new_cycle = tuple(arc_keep)  # closing edge x->y is the chord
        assert len(new_cycle) < len(old)
        g.remove_edge(x, y)
        g.add_edges(path_edges(bypass))
        family[i] = canonical_cycle(new_cycle)
        _extract_until_acyclic(g, family)
        potential = sum(len(c) for c in family) - len(family) * (D.m + 1)
        assert potential_cap is None or potential < potential_cap, "repair must make progress"
        potential_cap = potential
    remainder = g.to_digraph()
    if __debug__:
        check_chordless_maximal(D, CycleFamily(tuple(family)), remainder)
    return CycleFamily(tuple(family)), remainder


def check_chordless_maximal(D: Digraph, family: CycleFamily, remainder: Digraph):
    """Post-condition checker by direct enumeration; raises on violation."""
    from .core import is_acyclic, is_cycle_of

    owner = family.edge_owner()  # raises on overlap
    for c in family.cycles:
        if not is_cycle_of(D, c):
            raise AssertionError(f"{c} is not a cycle of the host")
    expect = set(D.edges) - set(owner)
    if set(remainder.edges) != expect:
        raise AssertionError("remainder is not host minus family edges")
    if not is_acyclic(remainder):
        raise AssertionError("remainder is not acyclic")
    for c in family.cycles:
        for x in c:
            for y in c:
                if x != y and remainder.has_edge(x, y):
                    raise AssertionError(f"chord {x}->{y} of cycle {c} in remainder")


# --- precise parts and tangent paths ----------------------------------------

def _incidence_vertex(path: Sequence[int], cycle: Sequence[int]) -> Optional[int]:
    """The endpoint through which the path touches the cycle, if any;
    prefers the start when both endpoints lie on the cycle."""
    on = set(cycle)
    if path[0] in on:
        return path[0]
    if path[-1] in on:
        return path[-1]
    return None


def precise_part(
    path: Sequence[int],
    cycle: Sequence[int],
    v: int,
    signs: SignTable,
) -> tuple[int, ...]:
    """The sign-change-bounded subpath of ``path`` near its incidence
    vertex ``v`` on ``cycle``.

    For a plus incidence (path starts at v): ends at the first minus vertex
    y along the path and starts at the last on-cycle vertex before y.  For
    a minus incidence (path ends at v): symmetric.  The result either
    touches the cycle in one endpoint or has exactly its two endpoints on
    the cycle.
    """
    path = tuple(path)
    on = set(cycle)
    if v not in on or v not in (path[0], path[-1]):
        raise NotIncidentError(f"vertex {v} is not an endpoint of the path on the cycle")
    if set(path_edges(path)) & set(cycle_edges(cycle)):
        raise NotIncidentError("path shares an edge with the cycle")
    if signs.is_plus(v):
        if path[0] != v:
            raise NotIncidentError("plus incidence must be at the path start")
        y_idx = next((i for i, w in enumerate(path) if signs.is_minus(w)), None)
        if y_idx is None:
            raise NoSignChangeError("path has no minus vertex")
        z_idx = max(i for i in range(y_idx) if path[i] in on)
        return path[z_idx : y_idx + 1]
    if signs.is_minus(v):
        if path[-1] != v:
            raise NotIncidentError("minus incidence must be at the path end")
        y_idx = next((i for i in range(len(path) - 1, -1, -1) if signs.is_plus(path[i])), None)
        if y_idx is None:
            raise NoSignChangeError("path has no plus vertex")
        z_idx = min(i for i in range(y_idx + 1, len(path)) if path[i] in on)
        return path[y_idx : z_idx + 1]
    raise NotIncidentError(f"incidence vertex {v} has zero excess")


def derive_tangent(
    path: Sequence[int],
    cycle: Sequence[int],
    cycle_index: int,
    v: int,
    signs: SignTable,
) -> TangentPath:
    """A plus-minus subpath of ``path`` meeting the cycle in exactly one
    vertex, which is one of its endpoints.

    Requires the host's no-chord property for the cycle and no excess-zero
    vertices along the path; under those the precise part is either already
    tangent or has both endpoints on the cycle with a signed interior
    vertex to cut at.
    """
    pp = precise_part(path, cycle, v, signs)
    on = set(cycle)
    head_on = pp[0] in on
    tail_on = pp[-1] in on
    if head_on != tail_on:
        touch = pp[0] if head_on else pp[-1]
        return TangentPath(pp, cycle_index, touch)
    assert head_on and tail_on, "precise part must touch its cycle"
    if len(pp) < 3:
        raise ChordViolationError(
            f"precise part {pp} joins two cycle vertices with no interior; "
            "the no-chord certificate was wrong"
        )
    # Cut at the interior vertex adjacent to the incidence-side endpoint;
    # in zero-vertex mode that is the vertex the blocked-vertex filter
    # guarantees to carry a sign.
    z = pp[1] if signs.is_plus(v) else pp[-2]
    if signs.is_plus(z):
        return TangentPath(pp[pp.index(z):], cycle_index, pp[-1])
    if signs.is_minus(z):
        return TangentPath(pp[: pp.index(z) + 1], cycle_index, pp[0])
    raise ZeroInteriorError(f"interior vertex {z} has zero excess")


def check_tangent(t: TangentPath, cycle: Sequence[int], signs: SignTable):
    """TangentPath invariants: single intersection at an endpoint, plus-minus."""
    on = set(cycle)
    meet = [w for w in t.path if w in on]
    if meet != [t.touch] or t.touch not in (t.path[0], t.path[-1]):
        raise AssertionError(f"{t.path} is not tangent to {cycle} at {t.touch}")
    if not (signs.is_plus(t.path[0]) and signs.is_minus(t.path[-1])):
        raise AssertionError(f"tangent {t.path} is not a plus-minus path")
