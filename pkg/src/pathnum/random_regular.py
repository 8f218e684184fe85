"""Configuration-model sampling, cycle census, discreteness checking,
random orientations, and the hard counterexample generators.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .core import Digraph, UndirectedGraph, underlying_ball
from .shortcycles import count_cycles_by_length, enumerate_short_cycles

SIMPLE_REJECTION_CAP = 100_000


class OddProductError(ValueError):
    pass


class RejectionBudgetError(RuntimeError):
    pass


def _pairing(rng: np.random.Generator, n: int, d: int) -> list[tuple[int, int]]:
    perm = rng.permutation(n * d)
    u = perm[0::2] // d
    v = perm[1::2] // d
    return [(int(a), int(b)) if a <= b else (int(b), int(a)) for a, b in zip(u, v)]


def sample_regular(
    n: int,
    d: int,
    seed: int,
    simple: bool = False,
    max_rejects: int = SIMPLE_REJECTION_CAP,
) -> UndirectedGraph:
    """Uniform configuration-model pairing of n*d half-edges.

    The raw pairing may contain loops and repeated edges.  With ``simple``
    the pairing is redrawn until clean, which yields a uniform simple
    d-regular graph; the acceptance rate is roughly exp(-(d*d-1)/4), so the
    retry cap is generous for small d.
    """
    if n * d % 2 != 0:
        raise OddProductError(f"n*d = {n * d} must be even")
    if not 0 <= d < max(n, 1):
        raise ValueError("need 0 <= d < n")
    rng = np.random.default_rng(seed)
    for _ in range(max(1, max_rejects)):
        edges = _pairing(rng, n, d)
        G = UndirectedGraph(n, edges)
        if not simple or G.is_simple():
            return G
    raise RejectionBudgetError(
        f"no simple pairing within {max_rejects} attempts for n={n}, d={d}"
    )


def orient_random(G: UndirectedGraph, seed: int) -> Digraph:
    """Each edge directed by an independent fair coin.

    For odd-regular hosts every vertex ends up with nonzero excess: the
    out-in difference has the parity of the degree.
    """
    if not G.is_simple():
        raise ValueError("orientation requires a simple graph")
    rng = np.random.default_rng(seed)
    flips = rng.integers(0, 2, size=G.m)
    edges = [
        (u, v) if f == 0 else (v, u) for (u, v), f in zip(G.edges, flips)
    ]
    return Digraph(G.n, edges)


@dataclass(frozen=True)
class CycleCensus:
    """Cycle counts by length over repeated samples of the simple
    configuration model, against the limiting means (d-1)^i / (2i)."""

    n: int
    d: int
    max_len: int
    samples: int
    counts: tuple[tuple[int, ...], ...]  # counts[s][i] for lengths 3..max_len

    def lengths(self) -> range:
        return range(3, self.max_len + 1)

    def empirical_mean(self, length: int) -> float:
        idx = length - 3
        return sum(row[idx] for row in self.counts) / self.samples

    def theoretical_mean(self, length: int) -> float:
        return (self.d - 1) ** length / (2 * length)

    def as_table(self) -> dict:
        return {
            str(i): {
                "theoretical_mean": self.theoretical_mean(i),
                "empirical_mean": self.empirical_mean(i),
                "samples": self.samples,
            }
            for i in self.lengths()
        }


def _census_sample(args) -> tuple[int, ...]:
    n, d, max_len, seed, index = args
    child = np.random.SeedSequence([seed, index]).generate_state(1)[0]
    G = sample_regular(n, d, int(child), simple=True)
    by_len = count_cycles_by_length(G, max_len)
    return tuple(by_len.get(i, 0) for i in range(3, max_len + 1))


def cycle_census(
    n: int,
    d: int,
    max_len: int,
    samples: int,
    seed: int,
    jobs: int = 1,
) -> CycleCensus:
    """Empirical short-cycle counts on ``samples`` seeded simple graphs.

    Sample streams are derived from (seed, index), so results are identical
    for any job count.
    """
    if max_len < 3 or max_len > 8:
        raise ValueError("census supports cycle lengths 3..8")
    if samples < 1:
        raise ValueError("need at least one sample")
    tasks = [(n, d, max_len, seed, i) for i in range(samples)]
    if jobs > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(_census_sample, tasks, chunksize=8))
    else:
        rows = [_census_sample(t) for t in tasks]
    return CycleCensus(n, d, max_len, samples, tuple(rows))


@dataclass(frozen=True)
class DiscretenessReport:
    """Evidence for the short-cycle sparsity verdict: the short cycles, a
    census bound, pairwise vertex-disjointness, and pairwise distance of
    cycle vertices in the graph with the cycle edges removed."""

    short_cycles: tuple[tuple[int, ...], ...]
    census_cap: int
    distance_floor: int
    census_ok: bool
    disjoint_ok: bool
    distance_ok: bool
    census_witness: Optional[int] = None
    disjoint_witness: Optional[tuple] = None
    distance_witness: Optional[tuple] = None

    @property
    def verdict(self) -> bool:
        return self.census_ok and self.disjoint_ok and self.distance_ok

    def as_dict(self) -> dict:
        return {
            "short_cycles": [list(c) for c in self.short_cycles],
            "census_cap": self.census_cap,
            "distance_floor": self.distance_floor,
            "census_ok": self.census_ok,
            "disjoint_ok": self.disjoint_ok,
            "distance_ok": self.distance_ok,
            "census_witness": self.census_witness,
            "disjoint_witness": list(self.disjoint_witness) if self.disjoint_witness else None,
            "distance_witness": list(self.distance_witness) if self.distance_witness else None,
            "verdict": self.verdict,
        }


def check_discrete(
    G: UndirectedGraph, p: int, census_cap: int, distance_floor: int
) -> DiscretenessReport:
    """Check the three short-cycle conditions for cycles of length <= p."""
    if p < 3:
        raise ValueError("p must be at least 3")
    cycles = tuple(enumerate_short_cycles(G, p))

    census_ok = len(cycles) <= census_cap
    census_witness = None if census_ok else len(cycles)

    disjoint_ok, disjoint_witness = True, None
    for i in range(len(cycles)):
        if not disjoint_ok:
            break
        for j in range(i + 1, len(cycles)):
            shared = set(cycles[i]) & set(cycles[j])
            if shared:
                disjoint_ok = False
                disjoint_witness = (cycles[i], cycles[j], min(shared))
                break

    cycle_edges = set()
    for c in cycles:
        k = len(c)
        for idx in range(k):
            a, b = c[idx], c[(idx + 1) % k]
            cycle_edges.add((a, b) if a <= b else (b, a))
    stripped = G.without_edges(cycle_edges)
    adj = stripped.adjacency()
    members = sorted({v for c in cycles for v in c})
    member_set = set(members)
    distance_ok, distance_witness = True, None
    for u in members:
        if not distance_ok:
            break
        ball = underlying_ball(adj, u, distance_floor - 1)
        for v, dist in sorted(ball.items()):
            if v != u and v in member_set:
                distance_ok = False
                distance_witness = (u, v, dist)
                break
    return DiscretenessReport(
        cycles,
        census_cap,
        distance_floor,
        census_ok,
        disjoint_ok,
        distance_ok,
        census_witness,
        disjoint_witness,
        distance_witness,
    )


# --- fixed generators ---------------------------------------------------------

# The 5-vertex, 8-edge gadget: four outer vertices a,b,c,d, a middle vertex
# balanced in and out, excess 2 overall but needing 4 paths.
_GADGET_EDGES = [(0, 1), (0, 3), (2, 1), (2, 3), (4, 0), (4, 2), (1, 4), (3, 4)]
GADGET_ZERO_VERTEX = 4
GADGET_SIZE = 5


def gen_d0() -> Digraph:
    """The smallest known gap gadget: excess 2, minimum decomposition 4.

    Vertices 0..3 are the outer square (0 and 2 source-like, 1 and 3
    sink-like); vertex 4 is the balanced middle.
    """
    return Digraph(GADGET_SIZE, _GADGET_EDGES)


def gen_counterexample(k: int) -> tuple[Digraph, dict]:
    """Chain of 4k+2 gadget copies whose decomposition gap grows like 2k+2.

    Each copy keeps its balanced middle vertex; 4k+1 connector edges run
    from k top-left middles into a left hub, from the hub to k bottom-left
    middles, mirrored on the right, plus one hub-to-hub edge.  Every vertex
    ends with excess exactly one.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    copies = 4 * k + 2
    edges = []
    for c in range(copies):
        base = 5 * c
        edges.extend((base + u, base + v) for u, v in _GADGET_EDGES)

    def middle(c):
        return 5 * c + GADGET_ZERO_VERTEX

    hub_left = middle(2 * k)
    hub_right = middle(4 * k + 1)
    for i in range(k):
        edges.append((middle(i), hub_left))  # top-left middles feed the hub
        edges.append((hub_left, middle(k + i)))  # hub feeds bottom-left middles
        edges.append((middle(2 * k + 1 + i), hub_right))
        edges.append((hub_right, middle(3 * k + 1 + i)))
    edges.append((hub_left, hub_right))
    D = Digraph(5 * copies, edges)
    meta = {
        "k": k,
        "vertices": 20 * k + 10,
        "edges": 36 * k + 17,
        "excess": 10 * k + 5,
        "max_underlying_degree": 2 * k + 5,
        "pn_lower_bound": 12 * k + 7,
        "gap_lower_bound": 2 * k + 2,
        "gadget_copies": copies,
    }
    return D, meta
