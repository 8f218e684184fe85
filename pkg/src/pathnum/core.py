"""Directed-graph core: representation, excess arithmetic, distances, I/O.

Vertices are dense 0-based integers.  A digraph has no loops and at most one
copy of each directed edge; the antiparallel pair u->v, v->u is allowed.
All operations here are pure functions of immutable values.
"""

from __future__ import annotations

import json
import math
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

INF = math.inf

PLUS = "+"
MINUS = "-"
ZERO = "0"


class GraphFormatError(ValueError):
    """Malformed edge-list input; carries the 1-based line number."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class Digraph:
    """Immutable digraph on vertices 0..n-1.

    Edges are stored in sorted order; ``out_adj``/``in_adj`` are tuples of
    sorted neighbor tuples, so iteration order is deterministic everywhere.
    """

    __slots__ = ("n", "edges", "edge_set", "out_adj", "in_adj", "_und_adj")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]]):
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        edges = sorted(edges)
        seen = set()
        out = [[] for _ in range(n)]
        inn = [[] for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u},{v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if (u, v) in seen:
                raise ValueError(f"duplicate edge ({u},{v})")
            seen.add((u, v))
            out[u].append(v)
            inn[v].append(u)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "edges", tuple(edges))
        object.__setattr__(self, "edge_set", frozenset(seen))
        object.__setattr__(self, "out_adj", tuple(tuple(a) for a in out))
        object.__setattr__(self, "in_adj", tuple(tuple(sorted(a)) for a in inn))
        object.__setattr__(self, "_und_adj", None)

    def __setattr__(self, name, value):
        raise AttributeError("Digraph is immutable")

    @property
    def m(self) -> int:
        return len(self.edges)

    def has_edge(self, u: int, v: int) -> bool:
        return (u, v) in self.edge_set

    def out_degree(self, v: int) -> int:
        return len(self.out_adj[v])

    def in_degree(self, v: int) -> int:
        return len(self.in_adj[v])

    def max_semi_degree(self) -> int:
        """Largest out- or in-degree over all vertices."""
        if self.n == 0:
            return 0
        return max(max(len(a) for a in self.out_adj), max(len(a) for a in self.in_adj))

    def underlying_adj(self) -> tuple[tuple[int, ...], ...]:
        """Adjacency of the underlying undirected graph (cached)."""
        if self._und_adj is None:
            adj = [set() for _ in range(self.n)]
            for u, v in self.edges:
                adj[u].add(v)
                adj[v].add(u)
            object.__setattr__(self, "_und_adj", tuple(tuple(sorted(a)) for a in adj))
        return self._und_adj

    def without_edges(self, remove: Iterable[tuple[int, int]]) -> "Digraph":
        rm = set(remove)
        bad = rm - self.edge_set
        if bad:
            raise ValueError(f"cannot remove absent edges: {sorted(bad)[:3]}")
        return Digraph(self.n, [e for e in self.edges if e not in rm])

    def reverse(self) -> "Digraph":
        return Digraph(self.n, [(v, u) for u, v in self.edges])

    def __eq__(self, other):
        return isinstance(other, Digraph) and self.n == other.n and self.edges == other.edges

    def __hash__(self):
        return hash((self.n, self.edges))

    def __repr__(self):
        return f"Digraph(n={self.n}, m={self.m})"


class UndirectedGraph:
    """Undirected (multi)graph on vertices 0..n-1.

    Edges are (u, v) with u <= v; duplicates and loops are kept so the
    configuration model can return its raw pairing.  ``is_simple`` tells
    whether the instance is loop- and multi-edge-free.
    """

    __slots__ = ("n", "edges")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]]):
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        norm = []
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u},{v}) out of range for n={n}")
            norm.append((u, v) if u <= v else (v, u))
        self.n = n
        self.edges = tuple(sorted(norm))

    @property
    def m(self) -> int:
        return len(self.edges)

    def is_simple(self) -> bool:
        return len(set(self.edges)) == len(self.edges) and all(u != v for u, v in self.edges)

    def degrees(self) -> list[int]:
        deg = [0] * self.n
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1  # loops count twice
        return deg

    def adjacency(self) -> list[list[int]]:
        """Sorted neighbor lists; meaningful for simple graphs."""
        adj = [[] for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return [sorted(a) for a in adj]

    def without_edges(self, remove: Iterable[tuple[int, int]]) -> "UndirectedGraph":
        rm = set((u, v) if u <= v else (v, u) for u, v in remove)
        return UndirectedGraph(self.n, [e for e in self.edges if e not in rm])

    def __eq__(self, other):
        return (
            isinstance(other, UndirectedGraph) and self.n == other.n and self.edges == other.edges
        )

    def __repr__(self):
        return f"UndirectedGraph(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class SignTable:
    """Per-vertex excess split into its positive and negative parts.

    ``ex_plus[v] = max(outdeg - indeg, 0)`` and symmetrically for
    ``ex_minus``; at most one of the two is positive.
    """

    ex_plus: tuple[int, ...]
    ex_minus: tuple[int, ...]

    def sign(self, v: int) -> str:
        if self.ex_plus[v] > 0:
            return PLUS
        if self.ex_minus[v] > 0:
            return MINUS
        return ZERO

    def is_plus(self, v: int) -> bool:
        return self.ex_plus[v] > 0

    def is_minus(self, v: int) -> bool:
        return self.ex_minus[v] > 0

    def is_zero(self, v: int) -> bool:
        return self.ex_plus[v] == 0 and self.ex_minus[v] == 0

    def zero_vertices(self) -> list[int]:
        return [v for v in range(len(self.ex_plus)) if self.is_zero(v)]

    @property
    def total(self) -> int:
        return sum(self.ex_plus)


def sign_table(D: Digraph) -> SignTable:
    plus = []
    minus = []
    for v in range(D.n):
        diff = D.out_degree(v) - D.in_degree(v)
        plus.append(max(diff, 0))
        minus.append(max(-diff, 0))
    return SignTable(tuple(plus), tuple(minus))


def excess(D: Digraph) -> tuple[int, SignTable]:
    """Half the total degree imbalance, with the per-vertex sign table.

    This is the universal lower bound on the number of paths in any path
    decomposition of ``D``.
    """
    table = sign_table(D)
    assert sum(table.ex_plus) == sum(table.ex_minus)
    return table.total, table


def is_acyclic(D: Digraph) -> bool:
    """Kahn peeling; True iff a topological order exists."""
    indeg = [D.in_degree(v) for v in range(D.n)]
    queue = deque(v for v in range(D.n) if indeg[v] == 0)
    seen = 0
    while queue:
        v = queue.popleft()
        seen += 1
        for w in D.out_adj[v]:
            indeg[w] -= 1
            if indeg[w] == 0:
                queue.append(w)
    return seen == D.n


def girth(D: Digraph):
    """Length of the shortest directed cycle, or ``math.inf`` if acyclic.

    BFS from every edge: for edge (u, v) the shortest cycle through it is
    1 + dist(v, u).  The running best prunes later searches.
    """
    best = INF
    for u, v in D.edges:
        if best == 2:
            break
        # BFS from v toward u, depth-capped at best-2 so only improvements count.
        cap = best - 1
        dist = {v: 0}
        queue = deque([v])
        while queue:
            x = queue.popleft()
            dx = dist[x]
            if dx + 1 >= cap:
                continue
            for y in D.out_adj[x]:
                if y == u:
                    best = min(best, dx + 2)
                    cap = best - 1
                    queue.clear()
                    break
                if y not in dist:
                    dist[y] = dx + 1
                    queue.append(y)
    return best


def underlying_distance(D: Digraph, u: int, v: int):
    """BFS distance between u and v in the underlying undirected graph."""
    if not (0 <= u < D.n and 0 <= v < D.n):
        raise ValueError("vertex out of range")
    if u == v:
        return 0
    adj = D.underlying_adj()
    dist = {u: 0}
    queue = deque([u])
    while queue:
        x = queue.popleft()
        for y in adj[x]:
            if y == v:
                return dist[x] + 1
            if y not in dist:
                dist[y] = dist[x] + 1
                queue.append(y)
    return INF


def underlying_ball(adj: Sequence[Sequence[int]], source: int, radius: int) -> dict[int, int]:
    """Vertices within ``radius`` of ``source``, mapped to their distance."""
    dist = {source: 0}
    queue = deque([source])
    while queue:
        x = queue.popleft()
        if dist[x] == radius:
            continue
        for y in adj[x]:
            if y not in dist:
                dist[y] = dist[x] + 1
                queue.append(y)
    return dist


def is_k_sparse(D: Digraph, S: Iterable[int], k: int):
    """Check that each member of S has at most one other member within
    underlying distance k.  Returns (True, None) or (False, (u, v, w))
    where v and w are two members both within distance k of u.
    """
    if k < 1:
        raise ValueError("k must be positive")
    members = sorted(set(S))
    for v in members:
        if not 0 <= v < D.n:
            raise ValueError(f"vertex {v} not in digraph")
    adj = D.underlying_adj()
    member_set = set(members)
    for u in members:
        ball = underlying_ball(adj, u, k)
        near = [v for v in ball if v != u and v in member_set]
        if len(near) > 1:
            near.sort()
            return False, (u, near[0], near[1])
    return True, None


# --- paths and cycles as plain vertex tuples -------------------------------

def path_edges(path: Sequence[int]) -> list[tuple[int, int]]:
    return [(path[i], path[i + 1]) for i in range(len(path) - 1)]

def cycle_edges(cycle: Sequence[int]) -> list[tuple[int, int]]:
    k = len(cycle)
    return [(cycle[i], cycle[(i + 1) % k]) for i in range(k)]


def is_path_of(D: Digraph, path: Sequence[int]) -> bool:
    """Directed path with at least one edge and no repeated vertex."""
    if len(path) < 2 or len(set(path)) != len(path):
        return False
    return all(D.has_edge(u, v) for u, v in path_edges(path))


def is_cycle_of(D: Digraph, cycle: Sequence[int]) -> bool:
    if len(cycle) < 2 or len(set(cycle)) != len(cycle):
        return False
    return all(D.has_edge(u, v) for u, v in cycle_edges(cycle))


def canonical_cycle(cycle: Sequence[int]) -> tuple[int, ...]:
    """Rotate so the smallest vertex comes first (direction is preserved)."""
    k = len(cycle)
    i = min(range(k), key=lambda j: cycle[j])
    return tuple(cycle[i:]) + tuple(cycle[:i])


def cycle_arc(cycle: Sequence[int], x: int, y: int) -> list[int]:
    """The vertices of the directed arc from x to y along the cycle."""
    k = len(cycle)
    ix = cycle.index(x)
    out = [x]
    j = ix
    while cycle[j] != y:
        j = (j + 1) % k
        out.append(cycle[j])
        if len(out) > k:
            raise ValueError("y not on cycle")
    return out


# --- edge-list text format --------------------------------------------------

def parse_digraph(text: str) -> Digraph:
    """Parse the edge-list format.

    Lines starting with '#' are comments.  The first data line is
    "<n> <m>"; then m lines "<u> <v>" of directed edges.  Errors carry the
    offending line number.
    """
    header = None
    edges = []
    n = m = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise GraphFormatError(f"expected two integers, got {line!r}", lineno)
        try:
            a, b = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphFormatError(f"expected two integers, got {line!r}", lineno) from None
        if header is None:
            header = lineno
            n, m = a, b
            if n < 0 or m < 0:
                raise GraphFormatError("negative vertex or edge count", lineno)
            continue
        if len(edges) == m:
            raise GraphFormatError(f"more than the declared {m} edges", lineno)
        u, v = a, b
        if not (0 <= u < n and 0 <= v < n):
            raise GraphFormatError(f"vertex index out of range 0..{n - 1}", lineno)
        if u == v:
            raise GraphFormatError(f"loop at vertex {u}", lineno)
        if (u, v) in set(edges):
            raise GraphFormatError(f"duplicate directed edge ({u},{v})", lineno)
        edges.append((u, v))
    if header is None:
        raise GraphFormatError("empty input: missing '<n> <m>' header")
    if len(edges) != m:
        raise GraphFormatError(f"declared {m} edges but found {len(edges)}")
    return Digraph(n, edges)


def serialize_digraph(D: Digraph) -> str:
    """Canonical form: header line, then edges sorted lexicographically."""
    lines = [f"{D.n} {D.m}"]
    lines.extend(f"{u} {v}" for u, v in D.edges)
    return "\n".join(lines) + "\n"


def parse_undirected(text: str) -> UndirectedGraph:
    """Same file format read as an undirected simple graph."""
    D_like = []
    header = None
    n = m = 0
    seen = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise GraphFormatError(f"expected two integers, got {line!r}", lineno)
        try:
            a, b = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphFormatError(f"expected two integers, got {line!r}", lineno) from None
        if header is None:
            header = lineno
            n, m = a, b
            continue
        u, v = min(a, b), max(a, b)
        if not (0 <= u < n and v < n):
            raise GraphFormatError(f"vertex index out of range 0..{n - 1}", lineno)
        if u == v:
            raise GraphFormatError(f"loop at vertex {u}", lineno)
        if (u, v) in seen:
            raise GraphFormatError(f"duplicate undirected edge ({u},{v})", lineno)
        seen.add((u, v))
        D_like.append((u, v))
    if header is None:
        raise GraphFormatError("empty input: missing '<n> <m>' header")
    if len(D_like) != m:
        raise GraphFormatError(f"declared {m} edges but found {len(D_like)}")
    return UndirectedGraph(n, D_like)


def serialize_undirected(G: UndirectedGraph) -> str:
    lines = [f"{G.n} {G.m}"]
    lines.extend(f"{u} {v}" for u, v in G.edges)
    return "\n".join(lines) + "\n"


# --- decomposition JSON ------------------------------------------------------

def decomposition_to_json(paths: Sequence[Sequence[int]], excess_value: int, verified: bool) -> str:
    payload = {
        "paths": [list(p) for p in paths],
        "excess": excess_value,
        "verified": verified,
    }
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def decomposition_from_json(text: str) -> tuple[list[tuple[int, ...]], int, bool]:
    data = json.loads(text)
    try:
        paths = [tuple(int(v) for v in p) for p in data["paths"]]
        return paths, int(data["excess"]), bool(data["verified"])
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed decomposition JSON: {exc}") from None
