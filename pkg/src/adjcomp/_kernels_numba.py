"""Numba-compiled kernel implementations (hot path).

Same contracts as _kernels_numpy; see there for semantics. Dot products
accumulate left to right at double precision.
"""

from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True)
def _row_dot(U, i, j):
    s = 0.0
    for c in range(U.shape[1]):
        s += U[i, c] * U[j, c]
    return s


@njit(cache=True)
def dot_pairs(U, I, J):
    out = np.empty(I.shape[0], dtype=np.float64)
    for r in range(I.shape[0]):
        out[r] = _row_dot(U, I[r], J[r])
    return out


@njit(cache=True)
def intersectivity_margins(U, phrase_rows, term_rows, term_offsets):
    n = phrase_rows.shape[0]
    out = np.empty(n, dtype=np.float64)
    for r in range(n):
        lo = term_offsets[r]
        hi = term_offsets[r + 1]
        max_pt = -np.inf
        for t in range(lo, hi):
            dist = 1.0 - _row_dot(U, phrase_rows[r], term_rows[t])
            if dist > max_pt:
                max_pt = dist
        min_tt = np.inf
        for a in range(lo, hi):
            for b in range(a + 1, hi):
                dist = 1.0 - _row_dot(U, term_rows[a], term_rows[b])
                if dist < min_tt:
                    min_tt = dist
        out[r] = min_tt - max_pt
    return out


@njit(cache=True)
def pair_margins(U, rows_a1n1, rows_a1n2, rows_a2n1, rows_a2n2):
    n = rows_a1n1.shape[0]
    out = np.empty(n, dtype=np.float64)
    for r in range(n):
        lhs = 1.0 - _row_dot(U, rows_a1n1[r], rows_a1n2[r])
        rhs = 1.0 - _row_dot(U, rows_a2n1[r], rows_a2n2[r])
        out[r] = rhs - lhs
    return out


@njit(cache=True)
def nonsubsectivity_margins(U, phrase_rows, adj_rows, noun_rows):
    n = phrase_rows.shape[0]
    out = np.empty(n, dtype=np.float64)
    for r in range(n):
        d_pa = 1.0 - _row_dot(U, phrase_rows[r], adj_rows[r])
        d_pn = 1.0 - _row_dot(U, phrase_rows[r], noun_rows[r])
        out[r] = d_pn - d_pa
    return out
