"""Short-cycle kernel selection: compiled extension when available, pure
Python otherwise.  Set PATHNUM_PURE=1 to force the fallback."""

from __future__ import annotations

import os

import numpy as np

from .core import UndirectedGraph

if os.environ.get("PATHNUM_PURE"):
    from . import _shortcycles_pure as _impl

    HAVE_COMPILED = False
else:
    try:
        from . import _shortcycles as _impl  # type: ignore[attr-defined]

        HAVE_COMPILED = True
    except ImportError:
        from . import _shortcycles_pure as _impl

        HAVE_COMPILED = False


def _csr(G: UndirectedGraph):
    adj = G.adjacency()
    indptr = np.zeros(G.n + 1, dtype=np.int32)
    indices = np.empty(2 * G.m, dtype=np.int32)
    pos = 0
    for v, nbrs in enumerate(adj):
        indices[pos : pos + len(nbrs)] = nbrs
        pos += len(nbrs)
        indptr[v + 1] = pos
    return indptr, indices[:pos]


def count_cycles_by_length(G: UndirectedGraph, max_len: int) -> dict[int, int]:
    """Number of cycles of each length 3..max_len in a simple graph."""
    if not G.is_simple():
        raise ValueError("cycle counting requires a simple graph")
    if max_len < 3:
        return {}
    indptr, indices = _csr(G)
    counts = _impl.count_cycles(G.n, indptr, indices, max_len)
    return {i: int(counts[i]) for i in range(3, max_len + 1)}


def enumerate_short_cycles(G: UndirectedGraph, max_len: int) -> list[tuple[int, ...]]:
    """All cycles of length <= max_len as vertex tuples, sorted."""
    if not G.is_simple():
        raise ValueError("cycle enumeration requires a simple graph")
    if max_len < 3:
        return []
    indptr, indices = _csr(G)
    raw = _impl.enumerate_cycles(G.n, indptr, indices, max_len)
    return sorted(tuple(int(v) for v in c) for c in raw)
