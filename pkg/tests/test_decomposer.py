import math
import random

import pytest

from pathnum.acyclic import Decomposition, decompose_acyclic
from pathnum.core import Digraph, cycle_edges, excess, path_edges
from pathnum.cycle_family import TangentPath
from pathnum.decomposer import (
    MixedSignsError,
    NotSparseError,
    PipelineConfig,
    PipelineFailure,
    SameTouchVertexError,
    ZeroExcessVertexError,
    absorb_cycle,
    decompose_auto,
    decompose_discrete,
    decompose_k_sparse,
    decompose_no_zero,
    enumerate_short_directed_cycles,
    pm_lower_bound,
    pm_set,
    sign_change_distance,
    verify,
)
from pathnum.random_regular import gen_d0, orient_random, sample_regular

from conftest import random_dag, random_digraph


def build_absorption_instance(rng, minus_case=False):
    """A cycle with two attached tangent paths sharing the touch sign."""
    length = rng.randint(2, 7)
    cycle = tuple(range(length))
    edges = list(cycle_edges(cycle))
    za, zb = rng.sample(range(length), 2)
    nxt = length

    def attach(touch):
        nonlocal nxt
        tail_len = rng.randint(1, 4)
        verts = [touch] + [nxt + i for i in range(tail_len)]
        nxt += tail_len
        if minus_case:
            verts.reverse()
        edges.extend(path_edges(verts))
        return tuple(verts)

    pa, pb = attach(za), attach(zb)
    D = Digraph(nxt, edges)
    _, signs = excess(D)
    qa = TangentPath(pa, 0, za)
    qb = TangentPath(pb, 0, zb)
    return D, cycle, qa, qb, signs


class TestAbsorbCycle:
    def test_triangle_example(self):
        # Triangle with touches at 0 and 1, tails 0->3 and 1->4.
        edges = [(0, 1), (1, 2), (2, 0), (0, 3), (1, 4)]
        D = Digraph(5, edges)
        _, signs = excess(D)
        u, v = absorb_cycle(
            (0, 1, 2),
            TangentPath((0, 3), 0, 0),
            TangentPath((1, 4), 0, 1),
            signs,
        )
        assert u == (0, 1, 4)
        assert v == (1, 2, 0, 3)

    def test_minus_mirror(self):
        edges = [(1, 0), (2, 1), (0, 2), (3, 0), (4, 1)]
        D = Digraph(5, edges)
        _, signs = excess(D)
        u, v = absorb_cycle(
            (0, 2, 1),
            TangentPath((3, 0), 0, 0),
            TangentPath((4, 1), 0, 1),
            signs,
        )
        assert u == (3, 0, 2, 1)
        assert v == (4, 1, 0)

    def test_same_touch_rejected(self):
        edges = [(0, 1), (1, 2), (2, 0), (0, 3), (0, 4)]
        _, signs = excess(Digraph(5, edges))
        with pytest.raises(SameTouchVertexError):
            absorb_cycle(
                (0, 1, 2),
                TangentPath((0, 3), 0, 0),
                TangentPath((0, 4), 0, 0),
                signs,
            )

    def test_mixed_signs_rejected(self):
        edges = [(0, 1), (1, 2), (2, 0), (0, 3), (4, 1)]
        _, signs = excess(Digraph(5, edges))
        with pytest.raises(MixedSignsError):
            absorb_cycle(
                (0, 1, 2),
                TangentPath((0, 3), 0, 0),
                TangentPath((4, 1), 0, 1),
                signs,
            )

    def test_randomized_partition_identity(self, rng):
        for trial in range(200):
            D, cycle, qa, qb, signs = build_absorption_instance(
                rng, minus_case=bool(trial % 2)
            )
            u, v = absorb_cycle(cycle, qa, qb, signs)
            union = set(cycle_edges(cycle)) | set(path_edges(qa.path)) | set(path_edges(qb.path))
            assert set(path_edges(u)) | set(path_edges(v)) == union
            assert len(path_edges(u)) + len(path_edges(v)) == len(union)
            assert signs.is_plus(u[0]) and signs.is_minus(u[-1])
            assert signs.is_plus(v[0]) and signs.is_minus(v[-1])


class TestVerify:
    def test_acyclic_output_passes(self, rng):
        D = random_dag(rng)
        assert verify(D, decompose_acyclic(D)).ok

    def test_missing_edge_named(self):
        D = Digraph(3, [(0, 1), (1, 2)])
        report = verify(D, Decomposition(((0, 1),), 1))
        bad = [c for c in report.checks if c.name == "partition"][0]
        assert not bad.ok and "(1, 2)" in bad.detail

    def test_valid_but_not_perfect(self):
        D = Digraph(3, [(0, 1), (1, 2)])
        report = verify(D, Decomposition(((0, 1), (1, 2)), 1))
        assert report.verdict == "valid but not perfect"

    def test_foreign_edge_flagged(self):
        D = Digraph(3, [(0, 1)])
        report = verify(D, Decomposition(((0, 1, 2),), 1))
        assert not report.valid


class TestSignChangeReach:
    def test_bound_on_odd_regular_orientations(self, rng):
        for trial in range(25):
            d = rng.choice([1, 3])
            n = rng.choice([10, 20, 30])
            G = sample_regular(n, d, seed=trial, simple=True)
            D = orient_random(G, seed=trial + 1000)
            _, signs = excess(D)
            assert not signs.zero_vertices()
            d_bound = max(2, D.max_semi_degree())
            for v in range(D.n):
                sd = sign_change_distance(D, v, signs)
                reach = pm_set(D, v, signs)
                assert len(reach) >= pm_lower_bound(d_bound, sd)

    def test_pm_set_contents(self):
        D = Digraph(4, [(0, 1), (1, 2), (0, 2), (3, 0)])
        _, signs = excess(D)
        assert signs.is_plus(0) and signs.is_zero(1)
        assert pm_set(D, 0, signs) == frozenset({2})
        assert sign_change_distance(D, 0, signs) == 1


class TestPipelines:
    def test_no_zero_rejects_zero_vertices(self):
        with pytest.raises(ZeroExcessVertexError):
            decompose_no_zero(gen_d0())

    def test_acyclic_delegation(self):
        D = Digraph(4, [(0, 1), (0, 2), (3, 1)])
        result = decompose_no_zero(D)
        assert isinstance(result, Decomposition)
        assert result.paths == decompose_acyclic(D).paths

    def test_no_zero_on_high_girth_cubic(self):
        # Cubic hosts of girth 5 and 6; any orientation has all vertices
        # unbalanced, and most seeds decompose perfectly.
        import networkx as nx

        from pathnum.core import UndirectedGraph

        hosts = [
            nx.petersen_graph(),
            nx.heawood_graph(),
            nx.moebius_kantor_graph(),
            nx.pappus_graph(),
            nx.desargues_graph(),
        ]
        attempts = successes = 0
        for gi, g in enumerate(hosts):
            mapping = {v: i for i, v in enumerate(sorted(g.nodes()))}
            G = UndirectedGraph(
                g.number_of_nodes(),
                [(mapping[u], mapping[v]) for u, v in g.edges()],
            )
            for seed in range(6):
                attempts += 1
                D = orient_random(G, seed=100 * gi + seed)
                result = decompose_no_zero(D, PipelineConfig(seed=seed))
                if isinstance(result, Decomposition):
                    successes += 1
                    assert result.verified and result.perfect
        assert successes >= attempts // 2, (successes, attempts)

    def test_k_sparse_delegates_without_zeros(self):
        D = Digraph(4, [(0, 1), (0, 2), (3, 1)])
        left = decompose_k_sparse(D)
        right = decompose_no_zero(D)
        assert left.paths == right.paths

    def test_k_sparse_rejects_crowded_zeros(self):
        # A path contributes a run of adjacent balanced vertices; the
        # disjoint triangle makes the host cyclic so the precondition fires.
        edges = [(0, 1), (1, 2), (2, 3), (3, 4), (5, 6), (6, 7), (7, 5)]
        D = Digraph(8, edges)
        _, signs = excess(D)
        assert len(signs.zero_vertices()) >= 3
        with pytest.raises(NotSparseError):
            decompose_k_sparse(D, PipelineConfig(sparsity_k=4))

    def test_k_sparse_with_one_far_zero(self):
        # A long directed cycle with one balanced vertex plus pendant edges
        # at every other vertex keeps the zero set a singleton.
        length = 12
        edges = [(i, (i + 1) % length) for i in range(length)]
        nxt = length
        for v in range(1, length):
            if v % 2:
                edges.append((v, nxt))
            else:
                edges.append((nxt, v))
            nxt += 1
        D = Digraph(nxt, edges)
        _, signs = excess(D)
        assert signs.zero_vertices() == [0]
        result = decompose_k_sparse(D, PipelineConfig(seed=3))
        assert isinstance(result, Decomposition), result
        assert result.verified and result.perfect

    def test_discrete_no_short_cycles_delegates(self):
        # Orientation with girth above p behaves like the sparse pipeline.
        length = 9
        edges = [(i, (i + 1) % length) for i in range(length)]
        nxt = length
        for v in range(length):
            if v % 2:
                edges.append((v, nxt))
            else:
                edges.append((nxt, v))
            nxt += 1
        D = Digraph(nxt, edges)
        _, signs = excess(D)
        if signs.zero_vertices():
            pytest.skip("construction should have no zeros")
        assert not enumerate_short_directed_cycles(D, 4)
        result = decompose_discrete(D, 4, PipelineConfig(seed=1))
        assert isinstance(result, Decomposition)
        assert result.perfect

    def test_discrete_shared_vertex_failure(self):
        # Two directed triangles meeting in one vertex, padded so every
        # vertex has nonzero excess.
        edges = [(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)]
        nxt = 5
        pad = []
        for v in range(5):
            pad.append((v, nxt))
            nxt += 1
        D = Digraph(nxt, edges + pad)
        _, signs = excess(D)
        assert not signs.zero_vertices()
        result = decompose_discrete(D, 3, PipelineConfig())
        assert isinstance(result, PipelineFailure)
        assert result.stage == "discreteness"
        assert result.witness[0] == "shared-vertex"

    def test_discrete_rejects_zero_vertices(self):
        with pytest.raises(ZeroExcessVertexError):
            decompose_discrete(gen_d0(), 3, PipelineConfig())

    def test_auto_on_gadget_host_is_rejected(self):
        with pytest.raises(ZeroExcessVertexError):
            decompose_auto(gen_d0())

    def test_auto_success_matches_excess(self, rng):
        wins = 0
        for seed in range(15):
            G = sample_regular(40, 3, seed=seed, simple=True)
            D = orient_random(G, seed=seed + 99)
            result = decompose_auto(D, PipelineConfig(seed=seed))
            if isinstance(result, Decomposition):
                wins += 1
                ex, _ = excess(D)
                assert len(result.paths) == ex
                assert result.verified
        assert wins >= 10

    def test_failures_carry_stage_and_config(self):
        edges = [(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)]
        nxt = 5
        pad = [(v, nxt + i) for i, v in enumerate(range(5))]
        D = Digraph(10, edges + pad)
        result = decompose_discrete(D, 3, PipelineConfig(retries=2))
        assert isinstance(result, PipelineFailure)
        assert result.config.retries == 2
        assert result.pipeline == "discrete"


class TestShortCycleEnumeration:
    def test_two_cycle(self):
        D = Digraph(2, [(0, 1), (1, 0)])
        assert enumerate_short_directed_cycles(D, 2) == [(0, 1)]

    def test_bounded_length(self):
        edges = [(i, (i + 1) % 5) for i in range(5)] + [(0, 2), (2, 0)]
        D = Digraph(5, edges)
        upto3 = enumerate_short_directed_cycles(D, 3)
        assert (0, 2) in upto3  # the antiparallel pair
        assert (2, 3, 4, 0) not in upto3
        upto5 = enumerate_short_directed_cycles(D, 5)
        assert (0, 1, 2, 3, 4) in upto5 and (0, 2, 3, 4) in upto5

    def test_matches_girth(self, rng):
        from pathnum.core import girth

        for _ in range(30):
            D = random_digraph(rng, n_max=10, m_max=25)
            g = girth(D)
            cycles = enumerate_short_directed_cycles(D, min(10, D.n))
            if g == math.inf:
                assert not cycles
            else:
                assert min(len(c) for c in cycles) == g
