# cython: boundscheck=False, wraparound=False, initializedcheck=False
"""Compiled short-cycle kernel; see _shortcycles_pure for the reference
semantics (identical canonical DFS, identical results)."""

from libc.stdlib cimport calloc, free, malloc


def count_cycles(int n, int[::1] indptr, int[::1] indices, int max_len):
    cdef long long *counts = <long long *> calloc(max_len + 1, sizeof(long long))
    cdef char *in_path = <char *> calloc(n if n > 0 else 1, sizeof(char))
    cdef int *path = <int *> malloc((max_len + 2) * sizeof(int))
    cdef int *cursors = <int *> malloc((max_len + 2) * sizeof(int))
    if counts == NULL or in_path == NULL or path == NULL or cursors == NULL:
        raise MemoryError()
    cdef int root, depth, x, i, y
    try:
        for root in range(n):
            depth = 0
            path[0] = root
            in_path[root] = 1
            cursors[0] = indptr[root]
            while depth >= 0:
                x = path[depth]
                i = cursors[depth]
                if i >= indptr[x + 1]:
                    in_path[x] = 0
                    depth -= 1
                    continue
                cursors[depth] = i + 1
                y = indices[i]
                if y == root:
                    if depth >= 2 and path[1] < path[depth]:
                        counts[depth + 1] += 1
                elif y > root and not in_path[y] and depth + 1 < max_len:
                    depth += 1
                    path[depth] = y
                    in_path[y] = 1
                    cursors[depth] = indptr[y]
        return [counts[i] for i in range(max_len + 1)]
    finally:
        free(counts)
        free(in_path)
        free(path)
        free(cursors)


def enumerate_cycles(int n, int[::1] indptr, int[::1] indices, int max_len):
    cdef char *in_path = <char *> calloc(n if n > 0 else 1, sizeof(char))
    cdef int *path = <int *> malloc((max_len + 2) * sizeof(int))
    cdef int *cursors = <int *> malloc((max_len + 2) * sizeof(int))
    if in_path == NULL or path == NULL or cursors == NULL:
        raise MemoryError()
    cdef int root, depth, x, i, y
    out = []
    try:
        for root in range(n):
            depth = 0
            path[0] = root
            in_path[root] = 1
            cursors[0] = indptr[root]
            while depth >= 0:
                x = path[depth]
                i = cursors[depth]
                if i >= indptr[x + 1]:
                    in_path[x] = 0
                    depth -= 1
                    continue
                cursors[depth] = i + 1
                y = indices[i]
                if y == root:
                    if depth >= 2 and path[1] < path[depth]:
                        out.append(tuple(path[k] for k in range(depth + 1)))
                elif y > root and not in_path[y] and depth + 1 < max_len:
                    depth += 1
                    path[depth] = y
                    in_path[y] = 1
                    cursors[depth] = indptr[y]
        return out
    finally:
        free(in_path)
        free(path)
        free(cursors)
