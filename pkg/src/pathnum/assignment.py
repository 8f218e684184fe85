"""Combinatorial selection subroutines.

- ``hall_disjoint_reps``: exact feasibility for "t pairwise-disjoint
  representatives per left node" via max flow, with a Hall-style violator
  witness when infeasible.
- ``independent_two_per_group``: pick two nodes per group inducing no
  conflict edge, by resampling the violated groups; exhaustive fallback on
  tiny instances, else reports exhaustion.
- ``classify_tangents_by_sign``: per-cycle majority split of tangent paths
  by the sign of their touch vertex.
"""

from __future__ import annotations

import itertools
import random
from collections import deque
from dataclasses import dataclass
from typing import Optional, Sequence

from .core import SignTable
from .cycle_family import TangentPath

RESAMPLE_BUDGET_PER_GROUP = 1000
EXHAUSTIVE_NODE_CAP = 20


class GroupTooSmallError(ValueError):
    pass


class ZeroSignTouchError(ValueError):
    pass


@dataclass(frozen=True)
class BipartiteIncidence:
    """Left nodes with sorted neighbor lists over right nodes 0..right-1."""

    left: int
    right: int
    adjacency: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        assert len(self.adjacency) == self.left
        for nbrs in self.adjacency:
            for b in nbrs:
                assert 0 <= b < self.right


@dataclass(frozen=True)
class Infeasible:
    """Hall violator: the named left nodes see fewer than t x |set| rights."""

    violator: tuple[int, ...]
    neighborhood: int
    demand: int


class _Dinic:
    def __init__(self, size: int):
        self.size = size
        self.head: list[list[int]] = [[] for _ in range(size)]
        self.to: list[int] = []
        self.cap: list[int] = []

    def add(self, u: int, v: int, cap: int):
        self.head[u].append(len(self.to))
        self.to.append(v)
        self.cap.append(cap)
        self.head[v].append(len(self.to))
        self.to.append(u)
        self.cap.append(0)

    def max_flow(self, s: int, t: int) -> int:
        flow = 0
        while True:
            level = [-1] * self.size
            level[s] = 0
            queue = deque([s])
            while queue:
                u = queue.popleft()
                for eid in self.head[u]:
                    if self.cap[eid] > 0 and level[self.to[eid]] < 0:
                        level[self.to[eid]] = level[u] + 1
                        queue.append(self.to[eid])
            if level[t] < 0:
                return flow
            it = [0] * self.size

            def dfs(u, pushed):
                if u == t:
                    return pushed
                while it[u] < len(self.head[u]):
                    eid = self.head[u][it[u]]
                    v = self.to[eid]
                    if self.cap[eid] > 0 and level[v] == level[u] + 1:
                        got = dfs(v, min(pushed, self.cap[eid]))
                        if got:
                            self.cap[eid] -= got
                            self.cap[eid ^ 1] += got
                            return got
                    it[u] += 1
                return 0

            while True:
                pushed = dfs(s, 1 << 60)
                if not pushed:
                    break
                flow += pushed

    def residual_reachable(self, s: int) -> set[int]:
        seen = {s}
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for eid in self.head[u]:
                if self.cap[eid] > 0 and self.to[eid] not in seen:
                    seen.add(self.to[eid])
                    queue.append(self.to[eid])
        return seen


def hall_disjoint_reps(
    G: BipartiteIncidence, t: int
) -> dict[int, tuple[int, ...]] | Infeasible:
    """Pairwise disjoint sets R_a of exactly t neighbors per left node.

    Solves the exact feasibility problem by max flow (source -> left at
    capacity t, left -> right uncapped, right -> sink at 1).  When
    infeasible, the left nodes still reachable in the residual form a
    violator: their joint neighborhood is smaller than t times their count.
    """
    if t < 1:
        raise ValueError("t must be positive")
    L, R = G.left, G.right
    s, sink = L + R, L + R + 1
    net = _Dinic(L + R + 2)
    big = t * max(L, 1) + 1
    left_edges: dict[int, list[int]] = {}
    for a in range(L):
        net.add(s, a, t)
        left_edges[a] = []
        for b in G.adjacency[a]:
            left_edges[a].append(len(net.to))
            net.add(a, L + b, big)
    for b in range(R):
        net.add(L + b, sink, 1)
    flow = net.max_flow(s, sink)
    if flow == t * L:
        out = {}
        for a in range(L):
            picked = []
            for eid in left_edges[a]:
                if net.cap[eid ^ 1] > 0:  # used forward flow
                    picked.append(net.to[eid] - L)
            picked.sort()
            assert len(picked) == t
            out[a] = tuple(picked)
        return out
    reach = net.residual_reachable(s)
    violator = tuple(sorted(a for a in range(L) if a in reach))
    nbhd = set()
    for a in violator:
        nbhd.update(G.adjacency[a])
    assert len(nbhd) < t * len(violator)
    return Infeasible(violator, len(nbhd), t * len(violator))


def independent_two_per_group(
    groups: Sequence[Sequence[int]],
    conflicts: Sequence[tuple[int, int]],
    d: int,
    rng: random.Random,
) -> Optional[dict[int, tuple[int, int]]]:
    """Two nodes per group inducing no conflict edge, or None when the
    retry budget (and the exhaustive fallback on tiny instances) runs out.

    Resampling scheme: draw two uniform nodes per group; while some
    conflict edge has both endpoints selected, redraw the one or two groups
    involved.  Reliable when groups are large relative to the conflict
    degree (the d argument names that intended regime); on small instances
    the exhaustive fallback decides exactly.
    """
    if d < 1:
        raise ValueError("d must be positive")
    for i, g in enumerate(groups):
        if len(g) < 2:
            raise GroupTooSmallError(f"group {i} has {len(g)} < 2 nodes")
        if len(set(g)) != len(g):
            raise ValueError(f"group {i} has repeated nodes")
    all_nodes = [x for g in groups for x in g]
    if len(set(all_nodes)) != len(all_nodes):
        raise ValueError("groups must be pairwise disjoint")
    group_of = {x: i for i, g in enumerate(groups) for x in g}
    edges = sorted(
        {(a, b) if a <= b else (b, a) for a, b in conflicts if a != b}
    )

    def violated(chosen: set) -> Optional[tuple[int, int]]:
        for a, b in edges:
            if a in chosen and b in chosen:
                return a, b
        return None

    t = len(groups)
    selection = {i: tuple(sorted(rng.sample(list(g), 2))) for i, g in enumerate(groups)}
    chosen = {x for pair in selection.values() for x in pair}
    budget = RESAMPLE_BUDGET_PER_GROUP * t
    for _ in range(budget):
        bad = violated(chosen)
        if bad is None:
            return selection
        for i in sorted({group_of[bad[0]], group_of[bad[1]]}):
            selection[i] = tuple(sorted(rng.sample(list(groups[i]), 2)))
        chosen = {x for pair in selection.values() for x in pair}
    if violated(chosen) is None:
        return selection
    if len(all_nodes) <= EXHAUSTIVE_NODE_CAP:
        for combo in itertools.product(
            *[itertools.combinations(sorted(g), 2) for g in groups]
        ):
            chosen = {x for pair in combo for x in pair}
            if violated(chosen) is None:
                return {i: pair for i, pair in enumerate(combo)}
    return None


def check_independent_selection(
    groups: Sequence[Sequence[int]],
    conflicts: Sequence[tuple[int, int]],
    selection: dict[int, tuple[int, int]],
):
    """Independence scan; raises AssertionError on any violation."""
    assert set(selection) == set(range(len(groups)))
    chosen = set()
    for i, pair in selection.items():
        assert len(pair) == 2 and pair[0] != pair[1]
        assert set(pair) <= set(groups[i])
        chosen.update(pair)
    assert len(chosen) == 2 * len(groups)
    for a, b in conflicts:
        assert not (a in chosen and b in chosen), f"conflict ({a},{b}) inside selection"


def classify_tangents_by_sign(
    tangents_per_cycle: dict[int, list[TangentPath]],
    signs: SignTable,
) -> dict[int, list[TangentPath]]:
    """Partition each cycle's tangents by the sign of the touch vertex and
    keep the larger side (ties go to the plus side)."""
    out = {}
    for idx, tangents in tangents_per_cycle.items():
        plus_side = []
        minus_side = []
        for t in tangents:
            if signs.is_plus(t.touch):
                plus_side.append(t)
            elif signs.is_minus(t.touch):
                minus_side.append(t)
            else:
                raise ZeroSignTouchError(f"touch vertex {t.touch} has zero excess")
        out[idx] = plus_side if len(plus_side) >= len(minus_side) else minus_side
    return out
