import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pathnum.core import (
    Digraph,
    GraphFormatError,
    excess,
    girth,
    is_acyclic,
    is_k_sparse,
    parse_digraph,
    parse_undirected,
    serialize_digraph,
    underlying_distance,
)
from pathnum.random_regular import gen_d0

from conftest import random_digraph


def edge_sets(n_max=8, allow_antiparallel=True):
    def build(draw_pairs):
        n, pairs = draw_pairs
        edges = set()
        for u, v in pairs:
            u, v = u % n, v % n
            if u == v:
                continue
            if not allow_antiparallel and (v, u) in edges:
                continue
            edges.add((u, v))
        return Digraph(n, sorted(edges))

    return st.tuples(
        st.integers(2, n_max),
        st.lists(st.tuples(st.integers(0, n_max - 1), st.integers(0, n_max - 1)), max_size=30),
    ).map(build)


class TestDigraph:
    def test_rejects_loops(self):
        with pytest.raises(ValueError, match="loop"):
            Digraph(2, [(0, 0)])

    def test_rejects_duplicates(self):
        with pytest.raises(ValueError, match="duplicate"):
            Digraph(2, [(0, 1), (0, 1)])

    def test_allows_antiparallel(self):
        D = Digraph(2, [(0, 1), (1, 0)])
        assert D.m == 2

    def test_rejects_out_of_range(self):
        with pytest.raises(ValueError, match="out of range"):
            Digraph(2, [(0, 2)])

    def test_adjacency_consistent(self, rng):
        for _ in range(20):
            D = random_digraph(rng, n_max=10)
            out_edges = {(u, v) for u in range(D.n) for v in D.out_adj[u]}
            in_edges = {(u, v) for v in range(D.n) for u in D.in_adj[v]}
            assert out_edges == set(D.edges) == in_edges


class TestExcess:
    def test_directed_cycle_is_balanced(self):
        D = Digraph(5, [(i, (i + 1) % 5) for i in range(5)])
        ex, signs = excess(D)
        assert ex == 0
        assert all(signs.is_zero(v) for v in range(5))

    def test_gap_gadget(self):
        ex, signs = excess(gen_d0())
        assert ex == 2
        assert [signs.sign(v) for v in range(5)] == ["+", "-", "+", "-", "0"]

    def test_transitive_tournament(self):
        ex, _ = excess(Digraph(3, [(0, 1), (1, 2), (0, 2)]))
        assert ex == 2

    @settings(max_examples=60, deadline=None)
    @given(edge_sets())
    def test_plus_and_minus_totals_match(self, D):
        _, signs = excess(D)
        assert sum(signs.ex_plus) == sum(signs.ex_minus)

    def test_invariant_under_cycle_removal(self, rng):
        # Removing a directed cycle preserves every degree imbalance.
        for _ in range(30):
            D = random_digraph(rng, n_max=12)
            cyc = _find_any_cycle(D)
            if cyc is None:
                continue
            edges = [(cyc[i], cyc[(i + 1) % len(cyc)]) for i in range(len(cyc))]
            ex_before, _ = excess(D)
            ex_after, _ = excess(D.without_edges(edges))
            assert ex_before == ex_after


def _find_any_cycle(D):
    color = [0] * D.n
    stack = []

    def dfs(v):
        color[v] = 1
        stack.append(v)
        for w in D.out_adj[v]:
            if color[w] == 1:
                return stack[stack.index(w):]
            if color[w] == 0:
                got = dfs(w)
                if got:
                    return got
        color[v] = 2
        stack.pop()
        return None

    for v in range(D.n):
        if color[v] == 0:
            got = dfs(v)
            if got:
                return got
    return None


class TestGirth:
    def test_dag_is_infinite(self):
        D = Digraph(4, [(0, 1), (0, 2), (1, 3), (2, 3)])
        assert girth(D) == math.inf

    def test_antiparallel_pair(self):
        assert girth(Digraph(2, [(0, 1), (1, 0)])) == 2

    def test_chord_shortcut(self):
        # 7-cycle plus a chord skipping three arc edges leaves a 5-cycle.
        edges = [(i, (i + 1) % 7) for i in range(7)] + [(0, 3)]
        assert girth(Digraph(7, edges)) == 5

    @settings(max_examples=60, deadline=None)
    @given(edge_sets())
    def test_infinite_iff_acyclic(self, D):
        assert (girth(D) == math.inf) == is_acyclic(D)


class TestUnderlyingDistance:
    def test_same_vertex(self):
        assert underlying_distance(Digraph(3, [(0, 1)]), 0, 0) == 0

    def test_single_edge_is_symmetric(self):
        D = Digraph(2, [(0, 1)])
        assert underlying_distance(D, 0, 1) == 1
        assert underlying_distance(D, 1, 0) == 1

    def test_disconnected(self):
        D = Digraph(4, [(0, 1), (2, 3)])
        assert underlying_distance(D, 0, 3) == math.inf


class TestKSparse:
    def test_singleton(self):
        D = Digraph(5, [(0, 1), (1, 2), (2, 3), (3, 4)])
        ok, witness = is_k_sparse(D, [2], 100)
        assert ok and witness is None

    def test_one_near_neighbor_allowed(self):
        D = Digraph(5, [(0, 1), (1, 2), (2, 3), (3, 4)])
        ok, _ = is_k_sparse(D, [1, 2], 5)
        assert ok

    def test_three_consecutive_fail(self):
        D = Digraph(5, [(0, 1), (1, 2), (2, 3), (3, 4)])
        ok, witness = is_k_sparse(D, [1, 2, 3], 2)
        assert not ok
        u, v, w = witness
        assert {u, v, w} <= {1, 2, 3} and len({u, v, w}) == 3
        assert underlying_distance(D, u, v) <= 2 and underlying_distance(D, u, w) <= 2

    def test_monotone(self, rng):
        for _ in range(25):
            D = random_digraph(rng, n_max=12)
            members = sorted(rng.sample(range(D.n), min(D.n, rng.randint(1, 5))))
            k = rng.randint(1, 6)
            ok, _ = is_k_sparse(D, members, k)
            if not ok:
                continue
            sub = [v for v in members if rng.random() < 0.7]
            if sub:
                assert is_k_sparse(D, sub, k)[0]
            if k > 1:
                assert is_k_sparse(D, members, k - 1)[0]


class TestEdgeListFormat:
    def test_minimal(self):
        D = parse_digraph("2 1\n0 1\n")
        assert D == Digraph(2, [(0, 1)])

    def test_roundtrip_canonical(self):
        D = gen_d0()
        text = serialize_digraph(D)
        assert parse_digraph(text) == D
        assert serialize_digraph(parse_digraph(text)) == text

    def test_comments_ignored(self):
        D = parse_digraph("# header\n3 2\n# middle\n0 1\n1 2\n")
        assert D.m == 2

    def test_loop_reports_line(self):
        with pytest.raises(GraphFormatError, match="line 2.*loop"):
            parse_digraph("2 1\n0 0\n")

    def test_duplicate_reports_line(self):
        with pytest.raises(GraphFormatError, match="line 3.*duplicate"):
            parse_digraph("2 2\n0 1\n0 1\n")

    def test_out_of_range_reports_line(self):
        with pytest.raises(GraphFormatError, match="line 2.*range"):
            parse_digraph("2 1\n0 5\n")

    def test_malformed_line(self):
        with pytest.raises(GraphFormatError, match="line 2"):
            parse_digraph("2 1\nnope\n")

    def test_count_mismatch(self):
        with pytest.raises(GraphFormatError, match="declared"):
            parse_digraph("2 2\n0 1\n")

    @settings(max_examples=40, deadline=None)
    @given(edge_sets())
    def test_roundtrip_property(self, D):
        assert parse_digraph(serialize_digraph(D)) == D

    def test_undirected_duplicate_across_directions(self):
        with pytest.raises(GraphFormatError, match="duplicate"):
            parse_undirected("2 2\n0 1\n1 0\n")
