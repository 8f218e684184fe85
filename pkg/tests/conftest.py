import random

import pytest

from pathnum.core import Digraph


def random_digraph(rng: random.Random, n_max=40, m_max=None, allow_antiparallel=True) -> Digraph:
    """Seeded random digraph without loops or repeated directed edges."""
    n = rng.randint(2, n_max)
    cap = n * (n - 1) if allow_antiparallel else n * (n - 1) // 2
    m = rng.randint(0, min(m_max if m_max is not None else cap, cap))
    edges = set()
    guard = 0
    while len(edges) < m and guard < 50 * m + 100:
        guard += 1
        u, v = rng.randrange(n), rng.randrange(n)
        if u == v or (u, v) in edges:
            continue
        if not allow_antiparallel and (v, u) in edges:
            continue
        edges.add((u, v))
    return Digraph(n, sorted(edges))


def random_dag(rng: random.Random, n_max=30, m_max=60) -> Digraph:
    """Seeded random DAG: edges only go forward along a random order."""
    n = rng.randint(2, n_max)
    order = list(range(n))
    rng.shuffle(order)
    rank = {v: i for i, v in enumerate(order)}
    cap = n * (n - 1) // 2
    m = rng.randint(1, min(m_max, cap))
    edges = set()
    guard = 0
    while len(edges) < m and guard < 50 * m + 100:
        guard += 1
        u, v = rng.randrange(n), rng.randrange(n)
        if u == v:
            continue
        if rank[u] > rank[v]:
            u, v = v, u
        edges.add((u, v))
    return Digraph(n, sorted(edges))


@pytest.fixture
def rng():
    return random.Random(0xC0FFEE)
