# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled inner loops; ``_kernels_py`` is the reference implementation."""
import numpy as np
cimport numpy as cnp
from libc.stdint cimport int64_t

cnp.import_array()


def walk_tree(const int64_t[:] probe_col,
              const int64_t[:] edge_start,
              const int64_t[:] edge_stop,
              const int64_t[:] edge_sym,
              const int64_t[:] edge_child,
              const int64_t[:] default_child,
              const int64_t[:, :] rows):
    cdef Py_ssize_t n_rows = rows.shape[0]
    cdef Py_ssize_t k
    cdef int64_t node, col, sym, lo, hi, mid, nxt
    out = np.empty(n_rows, dtype=np.int64)
    cdef int64_t[:] res = out
    for k in range(n_rows):
        node = 0
        while True:
            col = probe_col[node]
            if col == -1:
                res[k] = node
                break
            if col < -1:
                res[k] = -2
                break
            sym = rows[k, col]
            lo = edge_start[node]
            hi = edge_stop[node]
            nxt = -1
            while lo < hi:
                mid = (lo + hi) >> 1
                if edge_sym[mid] < sym:
                    lo = mid + 1
                else:
                    hi = mid
            if lo < edge_stop[node] and edge_sym[lo] == sym:
                nxt = edge_child[lo]
            else:
                nxt = default_child[node]
            if nxt < 0:
                res[k] = -1
                break
            node = nxt
    return out


def self_index_window(const int64_t[:] values):
    cdef Py_ssize_t n = values.shape[0]
    cdef Py_ssize_t j
    cdef int64_t t
    out = np.empty(n, dtype=np.int64)
    cdef int64_t[:] res = out
    for j in range(n):
        t = j + values[j]
        res[j] = values[t] if t < n else -1
    return out
