"""Exact minimum path decomposition for small digraphs.

Search over edge subsets with memoization: the minimum for a residual edge
set equals 1 plus the minimum over all simple paths through its
lexicographically first uncovered edge.  Branching over *all* such paths,
not just maximal ones, keeps the search complete (a maximal-only rule is
wrong for inputs whose optimum uses non-maximal pieces).  The excess of the
residual prunes, and a greedy upper bound closes consistent residuals
without branching.
"""

from __future__ import annotations

from typing import Optional, Sequence

from .core import Digraph, UndirectedGraph, excess, path_edges

DEFAULT_EDGE_LIMIT = 24
DEFAULT_SCAN_LIMIT = 16


class BudgetExceededError(ValueError):
    pass


class _ExactSearch:
    def __init__(self, D: Digraph):
        self.D = D
        self.edges = list(D.edges)
        self.index = {e: i for i, e in enumerate(self.edges)}
        self.full = (1 << len(self.edges)) - 1
        self.memo: dict[int, int] = {}

    def _mask_excess(self, mask: int) -> int:
        diff = {}
        m = mask
        while m:
            b = m & -m
            u, v = self.edges[b.bit_length() - 1]
            diff[u] = diff.get(u, 0) + 1
            diff[v] = diff.get(v, 0) - 1
            m ^= b
        return sum(d for d in diff.values() if d > 0)

    def _adjacency(self, mask: int):
        out = {}
        inn = {}
        m = mask
        while m:
            b = m & -m
            u, v = self.edges[b.bit_length() - 1]
            out.setdefault(u, []).append(v)
            inn.setdefault(v, []).append(u)
            m ^= b
        for a in out.values():
            a.sort()
        for a in inn.values():
            a.sort()
        return out, inn

    def _greedy(self, mask: int) -> list[tuple[int, ...]]:
        """Any valid decomposition of the residual: maximal path peeling."""
        out, inn = self._adjacency(mask)
        paths = []
        while any(out.values()):
            u, v = min((u, vs[0]) for u, vs in out.items() if vs)
            path = [u, v]
            used = {u, v}
            while out.get(path[-1]) and (nxt := [w for w in out[path[-1]] if w not in used]):
                path.append(nxt[0])
                used.add(nxt[0])
            while inn.get(path[0]) and (prv := [w for w in inn[path[0]] if w not in used]):
                path.insert(0, prv[0])
                used.add(prv[0])
            for a, b in path_edges(path):
                out[a].remove(b)
                inn[b].remove(a)
            paths.append(tuple(path))
        return paths

    def _paths_through_first_edge(self, mask: int):
        """All simple paths in the residual containing its first edge,
        in lexicographic order of the vertex sequence."""
        out, inn = self._adjacency(mask)
        u, v = self.edges[(mask & -mask).bit_length() - 1]

        def extensions(adj, start, blocked):
            """All simple extensions (as vertex lists, excluding start)."""
            result = [[]]
            stack = [(start, [], set(blocked))]
            while stack:
                here, ext, seen = stack.pop()
                for w in sorted(adj.get(here, []), reverse=True):
                    if w in seen or w == start:
                        continue
                    nxt = ext + [w]
                    result.append(nxt)
                    stack.append((w, nxt, seen | {w}))
            return result

        fwd = extensions(out, v, {u, v})
        bwd = extensions(inn, u, {u, v})
        candidates = []
        for back in bwd:
            head = list(reversed(back))
            head_set = set(head)
            for tail in fwd:
                if head_set.intersection(tail):
                    continue
                candidates.append(tuple(head + [u, v] + tail))
        candidates.sort()
        return candidates

    def solve(self, mask: int) -> int:
        if mask == 0:
            return 0
        hit = self.memo.get(mask)
        if hit is not None:
            return hit
        lb = max(1, self._mask_excess(mask))
        greedy = self._greedy(mask)
        best = len(greedy)
        if best > lb:
            for path in self._paths_through_first_edge(mask):
                child = mask
                for e in path_edges(path):
                    child ^= 1 << self.index[e]
                child_lb = self._mask_excess(child) if child else 0
                if 1 + max(child_lb, 1 if child else 0) >= best:
                    continue
                val = 1 + self.solve(child)
                if val < best:
                    best = val
                    if best == lb:
                        break
        self.memo[mask] = best
        return best

    def certificate(self, mask: int) -> list[tuple[int, ...]]:
        """One optimal decomposition; deterministic given the memo table."""
        paths = []
        while mask:
            target = self.solve(mask)
            greedy = self._greedy(mask)
            if len(greedy) == target:
                paths.extend(greedy)
                break
            for path in self._paths_through_first_edge(mask):
                child = mask
                for e in path_edges(path):
                    child ^= 1 << self.index[e]
                if 1 + self.solve(child) == target:
                    paths.append(path)
                    mask = child
                    break
            else:
                raise AssertionError("no branch reproduces the memoized optimum")
        return paths


def exact_pn(D: Digraph, limit: int = DEFAULT_EDGE_LIMIT) -> tuple[int, list[tuple[int, ...]]]:
    """Exact path number with one optimal decomposition as certificate."""
    if D.m > limit:
        raise BudgetExceededError(f"{D.m} edges exceeds the exact-search limit {limit}")
    if D.m == 0:
        return 0, []
    search = _ExactSearch(D)
    value = search.solve(search.full)
    cert = search.certificate(search.full)
    assert len(cert) == value
    return value, cert


def is_consistent_exact(D: Digraph, limit: int = DEFAULT_EDGE_LIMIT) -> bool:
    """Whether the minimum decomposition meets the excess lower bound."""
    ex, _ = excess(D)
    if D.m == 0:
        return True
    if ex == 0:
        return False  # any nonempty decomposition has at least one path
    if D.m > limit:
        raise BudgetExceededError(f"{D.m} edges exceeds the exact-search limit {limit}")
    pn, _ = exact_pn(D, limit)
    return pn == ex


def orientations(G: UndirectedGraph):
    """All 2^m orientations of a simple undirected graph, as digraphs."""
    if not G.is_simple():
        raise ValueError("orientation scan requires a simple graph")
    m = G.m
    for bits in range(1 << m):
        edges = []
        for i, (u, v) in enumerate(G.edges):
            edges.append((u, v) if bits & (1 << i) == 0 else (v, u))
        yield Digraph(G.n, edges)


def strong_consistency_scan(
    G: UndirectedGraph,
    limit: int = DEFAULT_SCAN_LIMIT,
) -> tuple[bool, Optional[Digraph]]:
    """Check every orientation for consistency.

    Returns (True, None) or (False, witness) with the first inconsistent
    orientation in enumeration order.
    """
    if G.m > limit:
        raise BudgetExceededError(f"2^{G.m} orientations exceeds the scan limit 2^{limit}")
    for D in orientations(G):
        if not is_consistent_exact(D, limit=max(G.m, DEFAULT_EDGE_LIMIT)):
            return False, D
    return True, None
