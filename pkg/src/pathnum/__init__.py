"""Minimum path decompositions of directed graphs.

The number of paths needed to partition the edges of a digraph is at least
its excess: half the sum over vertices of |outdeg - indeg|.  This package
provides an exact small-scale solver for that minimum, constructive
pipelines that meet the excess bound on suitable hosts (no balanced
vertices and no short cycles; sparse balanced vertices; short cycles few
and far apart), samplers for random regular hosts, and generators for the
known families where the bound is not attainable.
"""

from .acyclic import (
    Decomposition,
    NotAcyclicError,
    NotPartialError,
    complete_partial,
    decompose_acyclic,
)
from .assignment import (
    BipartiteIncidence,
    GroupTooSmallError,
    Infeasible,
    classify_tangents_by_sign,
    hall_disjoint_reps,
    independent_two_per_group,
)
from .core import (
    Digraph,
    GraphFormatError,
    SignTable,
    UndirectedGraph,
    excess,
    girth,
    is_acyclic,
    is_k_sparse,
    parse_digraph,
    parse_undirected,
    serialize_digraph,
    serialize_undirected,
    underlying_distance,
)
from .cycle_family import (
    ChordViolationError,
    CycleFamily,
    TangentPath,
    derive_tangent,
    extract_chordless_maximal,
    precise_part,
)
from .decomposer import (
    NotSparseError,
    PipelineConfig,
    PipelineFailure,
    ZeroExcessVertexError,
    absorb_cycle,
    decompose_auto,
    decompose_discrete,
    decompose_k_sparse,
    decompose_no_zero,
    pm_lower_bound,
    pm_set,
    sign_change_distance,
    verify,
)
from .exact import (
    BudgetExceededError,
    exact_pn,
    is_consistent_exact,
    strong_consistency_scan,
)
from .random_regular import (
    CycleCensus,
    DiscretenessReport,
    OddProductError,
    RejectionBudgetError,
    check_discrete,
    cycle_census,
    gen_counterexample,
    gen_d0,
    orient_random,
    sample_regular,
)

__version__ = "0.1.0"
