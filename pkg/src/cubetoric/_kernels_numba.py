"""Numba-jitted implementations of the hot exponent-row kernels.

Same contract as :mod:`cubetoric._kernels_numpy`.  Importing this module
requires numba; the backend selector falls back to the numpy kernels when it
is unavailable.  First use pays a one-off JIT compilation cost (cached on
disk afterwards).
"""

import numpy as np
from numba import njit

NAME = "numba"


@njit(cache=True)
def _pairwise_products(a, b, max_weight):
    ka, m = a.shape
    kb = b.shape[0]
    out = np.empty((ka * kb, m), dtype=np.uint8)
    k = 0
    for i in range(ka):
        for j in range(kb):
            w = 0
            for c in range(m):
                e = a[i, c] + b[j, c]
                out[k, c] = e
                w += e
            if max_weight < 0 or w <= max_weight:
                k += 1
    return out[:k]


@njit(cache=True)
def _find_reducer(rows, leads):
    k, m = rows.shape
    g = leads.shape[0]
    idx = np.empty(k, dtype=np.int64)
    for i in range(k):
        idx[i] = -1
        for j in range(g):
            ok = True
            for c in range(m):
                if rows[i, c] < leads[j, c]:
                    ok = False
                    break
            if ok:
                idx[i] = j
                break
    return idx


@njit(cache=True)
def _expand_reducibles(rows, idx, leads, tails, tail_start, tail_count):
    k, m = rows.shape
    total = 0
    for i in range(k):
        total += tail_count[idx[i]]
    out = np.empty((total, m), dtype=np.uint8)
    p = 0
    for i in range(k):
        j = idx[i]
        s = tail_start[j]
        for t in range(tail_count[j]):
            for c in range(m):
                out[p, c] = rows[i, c] - leads[j, c] + tails[s + t, c]
            p += 1
    return out


def pairwise_products(a, b, max_weight):
    return np.ascontiguousarray(_pairwise_products(a, b, max_weight))


def find_reducer(rows, leads):
    return _find_reducer(rows, leads)


def expand_reducibles(rows, idx, leads, tails, tail_start, tail_count):
    return np.ascontiguousarray(
        _expand_reducibles(rows, idx, leads, tails, tail_start, tail_count)
    )
