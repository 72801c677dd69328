# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled simple-cycle enumeration kernel (see _cycles_py for the contract)."""

from libc.stdlib cimport calloc, free, malloc


def simple_cycles(list adj, int max_len):
    cdef int n = len(adj)
    cdef int total = 0
    cdef int i, j, v, w, m, depth
    for i in range(n):
        total += len(adj[i])

    cdef int *offs = <int *> malloc((n + 1) * sizeof(int))
    cdef int *nbrs = <int *> malloc((total if total else 1) * sizeof(int))
    cdef char *in_path = <char *> calloc(n if n else 1, sizeof(char))
    cdef char *adj_to_m = <char *> calloc(n if n else 1, sizeof(char))
    cdef int *path = <int *> malloc((max_len + 1) * sizeof(int))
    cdef int *ipos = <int *> malloc((max_len + 1) * sizeof(int))
    if not offs or not nbrs or not in_path or not adj_to_m or not path or not ipos:
        free(offs); free(nbrs); free(in_path); free(adj_to_m); free(path); free(ipos)
        raise MemoryError()

    out = []
    try:
        offs[0] = 0
        for i in range(n):
            row = adj[i]
            for j in range(len(row)):
                nbrs[offs[i] + j] = row[j]
            offs[i + 1] = offs[i] + len(row)

        for m in range(n):
            for j in range(offs[m], offs[m + 1]):
                adj_to_m[nbrs[j]] = 1
            path[0] = m
            ipos[0] = offs[m]
            in_path[m] = 1
            depth = 1
            while depth > 0:
                v = path[depth - 1]
                if ipos[depth - 1] >= offs[v + 1]:
                    depth -= 1
                    in_path[v] = 0
                    continue
                w = nbrs[ipos[depth - 1]]
                ipos[depth - 1] += 1
                if w <= m or in_path[w]:
                    continue
                path[depth] = w
                if depth + 1 >= 3 and adj_to_m[w] and path[1] < w:
                    out.append(tuple([path[j] for j in range(depth + 1)]))
                if depth + 1 < max_len:
                    in_path[w] = 1
                    ipos[depth] = offs[w]
                    depth += 1
            in_path[m] = 0
            for j in range(offs[m], offs[m + 1]):
                adj_to_m[nbrs[j]] = 0
    finally:
        free(offs); free(nbrs); free(in_path); free(adj_to_m); free(path); free(ipos)
    return out
