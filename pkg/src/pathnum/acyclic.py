"""Perfect path decompositions of acyclic digraphs.

Any acyclic digraph decomposes into exactly its excess many paths by
repeatedly removing a maximal path: the removed path runs from a residual
source to a residual sink, so each removal lowers the excess by exactly one.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .core import Digraph, excess, is_acyclic, path_edges


class NotAcyclicError(ValueError):
    pass


class NotPartialError(ValueError):
    """The given family breaks a per-vertex endpoint budget or reuses an edge."""


@dataclass(frozen=True)
class Decomposition:
    """A path family claimed to partition the host's edges."""

    paths: tuple[tuple[int, ...], ...]
    host_excess: int
    verified: bool = False

    @property
    def perfect(self) -> bool:
        return len(self.paths) == self.host_excess

    def edge_owner(self) -> dict[tuple[int, int], int]:
        owner = {}
        for i, p in enumerate(self.paths):
            for e in path_edges(p):
                owner[e] = i
        return owner


def edge_owner_index(paths: Sequence[Sequence[int]]) -> dict[tuple[int, int], int]:
    """Map each edge to the unique path using it; raises on overlap."""
    owner = {}
    for i, p in enumerate(paths):
        for e in path_edges(p):
            if e in owner:
                raise ValueError(f"edge {e} used by paths {owner[e]} and {i}")
            owner[e] = i
    return owner


class _Residual:
    """Mutable adjacency view used while peeling paths off a DAG."""

    def __init__(self, D: Digraph):
        self.out = [set(a) for a in D.out_adj]
        self.inn = [set(a) for a in D.in_adj]
        self.diff = [len(D.out_adj[v]) - len(D.in_adj[v]) for v in range(D.n)]
        self.m = D.m

    def plus_vertices(self) -> list[int]:
        return [v for v in range(len(self.diff)) if self.diff[v] > 0]

    def remove_path(self, path: Sequence[int]):
        for u, v in path_edges(path):
            self.out[u].remove(v)
            self.inn[v].remove(u)
        self.diff[path[0]] -= 1
        self.diff[path[-1]] += 1
        self.m -= len(path) - 1

    def excess(self) -> int:
        return sum(d for d in self.diff if d > 0)


def _peel_maximal_path(res: _Residual, start: int, rng: Optional[random.Random]) -> list[int]:
    # Forward: the residual is acyclic, so greedy extension cannot revisit.
    path = [start]
    while res.out[path[-1]]:
        nxt = res.out[path[-1]]
        path.append(rng.choice(sorted(nxt)) if rng else min(nxt))
    while res.inn[path[0]]:
        prv = res.inn[path[0]]
        path.insert(0, rng.choice(sorted(prv)) if rng else min(prv))
    return path


def decompose_acyclic(A: Digraph, rng: Optional[random.Random] = None) -> Decomposition:
    """Perfect path decomposition of an acyclic digraph.

    Deterministic by default: each round starts from the smallest vertex
    with positive imbalance and always extends along the smallest-index
    neighbor.  Passing an ``rng`` gives a seed-deterministic randomized
    variant (used by the pipelines to vary decompositions across retries).

    Raises NotAcyclicError on cyclic input.
    """
    if not is_acyclic(A):
        raise NotAcyclicError("input digraph has a directed cycle")
    ex, table = excess(A)
    res = _Residual(A)
    paths = []
    while res.m > 0:
        plus = res.plus_vertices()
        assert plus, "acyclic digraph with edges must have a positive-imbalance vertex"
        start = rng.choice(plus) if rng else plus[0]
        before = res.excess() if __debug__ else 0
        path = _peel_maximal_path(res, start, rng)
        res.remove_path(path)
        if __debug__:
            assert res.excess() == before - 1, "maximal-path removal must drop excess by 1"
        paths.append(tuple(path))
    assert len(paths) == ex
    # Endpoint counts match the sign table exactly.
    if __debug__:
        starts = {}
        ends = {}
        for p in paths:
            starts[p[0]] = starts.get(p[0], 0) + 1
            ends[p[-1]] = ends.get(p[-1], 0) + 1
        assert all(starts.get(v, 0) == table.ex_plus[v] for v in range(A.n))
        assert all(ends.get(v, 0) == table.ex_minus[v] for v in range(A.n))
    return Decomposition(tuple(paths), ex)


def check_partial(A: Digraph, family: Sequence[Sequence[int]]) -> None:
    """Validate a partial path decomposition of ``A``; raises NotPartialError.

    Requirements: every member is a directed path of A, members are pairwise
    edge-disjoint, and per-vertex start/end counts stay within the
    ex_plus/ex_minus budgets.
    """
    _, table = excess(A)
    used = set()
    starts = [0] * A.n
    ends = [0] * A.n
    for p in family:
        if len(p) < 2 or len(set(p)) != len(p):
            raise NotPartialError(f"not a simple path: {p}")
        for e in path_edges(p):
            if e not in A.edge_set:
                raise NotPartialError(f"edge {e} not in host digraph")
            if e in used:
                raise NotPartialError(f"edge {e} reused across the family")
            used.add(e)
        starts[p[0]] += 1
        ends[p[-1]] += 1
    for v in range(A.n):
        if starts[v] > table.ex_plus[v]:
            raise NotPartialError(
                f"vertex {v} starts {starts[v]} paths but has plus-excess {table.ex_plus[v]}"
            )
        if ends[v] > table.ex_minus[v]:
            raise NotPartialError(
                f"vertex {v} ends {ends[v]} paths but has minus-excess {table.ex_minus[v]}"
            )


def complete_partial(
    A: Digraph,
    family: Sequence[Sequence[int]],
    rng: Optional[random.Random] = None,
) -> Decomposition:
    """Extend a partial path decomposition of an acyclic digraph to a
    perfect one containing every given path unmodified.
    """
    if not is_acyclic(A):
        raise NotAcyclicError("input digraph has a directed cycle")
    check_partial(A, family)
    ex_a, _ = excess(A)
    removed = [e for p in family for e in path_edges(p)]
    rest_graph = A.without_edges(removed)
    ex_rest, _ = excess(rest_graph)
    assert ex_rest == ex_a - len(family), "partial family must lower excess one per path"
    rest = decompose_acyclic(rest_graph, rng)
    paths = tuple(tuple(p) for p in family) + rest.paths
    assert len(paths) == ex_a
    return Decomposition(paths, ex_a)
