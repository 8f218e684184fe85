"""Pure-Python short-cycle kernel; same contract as the compiled module.

Cycles of an undirected simple graph are generated once each: the DFS only
walks vertices larger than the root, and a closure is recorded only when
the second path vertex is smaller than the last, fixing the direction.
"""


def count_cycles(n, indptr, indices, max_len):
    """Counts of cycles by length; index i of the result holds the number
    of cycles with i edges, for i up to max_len."""
    counts = [0] * (max_len + 1)
    in_path = bytearray(n)
    for root in range(n):
        path = [root]
        in_path[root] = 1
        cursors = [indptr[root]]
        while cursors:
            x = path[-1]
            i = cursors[-1]
            if i >= indptr[x + 1]:
                in_path[x] = 0
                path.pop()
                cursors.pop()
                continue
            cursors[-1] = i + 1
            y = indices[i]
            if y == root:
                if len(path) >= 3 and path[1] < path[-1]:
                    counts[len(path)] += 1
            elif y > root and not in_path[y] and len(path) < max_len:
                path.append(y)
                in_path[y] = 1
                cursors.append(indptr[y])
    return counts


def enumerate_cycles(n, indptr, indices, max_len):
    """The cycles themselves as vertex tuples (root first)."""
    out = []
    in_path = bytearray(n)
    for root in range(n):
        path = [root]
        in_path[root] = 1
        cursors = [indptr[root]]
        while cursors:
            x = path[-1]
            i = cursors[-1]
            if i >= indptr[x + 1]:
                in_path[x] = 0
                path.pop()
                cursors.pop()
                continue
            cursors[-1] = i + 1
            y = indices[i]
            if y == root:
                if len(path) >= 3 and path[1] < path[-1]:
                    out.append(tuple(path))
            elif y > root and not in_path[y] and len(path) < max_len:
                path.append(y)
                in_path[y] = 1
                cursors.append(indptr[y])
    return out
