"""Pure-numpy kernel implementations (fallback path).

All kernels operate on a matrix U of unit-norm rows; cosine distance
between rows i and j is ``1 - U[i] @ U[j]``.
"""

from __future__ import annotations

import numpy as np


def dot_pairs(U: np.ndarray, I: np.ndarray, J: np.ndarray) -> np.ndarray:
    return np.einsum("ij,ij->i", U[I], U[J])


def intersectivity_margins(
    U: np.ndarray,
    phrase_rows: np.ndarray,
    term_rows: np.ndarray,
    term_offsets: np.ndarray,
) -> np.ndarray:
    """margin[r] = min pairwise term distance - max phrase-term distance.

    term_rows is flat; phrase r owns term_rows[term_offsets[r]:term_offsets[r+1]].
    Vectorized per distinct term count.
    """
    counts = np.diff(term_offsets)
    if counts.size and counts.min() < 2:
        raise ValueError("each phrase needs at least two terms")
    out = np.empty(len(phrase_rows), dtype=np.float64)
    for k in np.unique(counts):
        sel = np.nonzero(counts == k)[0]
        cols = term_offsets[sel][:, None] + np.arange(k)[None, :]
        T = term_rows[cols]  # (m, k) row indices
        P = U[phrase_rows[sel]]  # (m, d)
        phrase_term = 1.0 - np.einsum("md,mkd->mk", P, U[T])
        max_pt = phrase_term.max(axis=1)
        min_tt = np.full(len(sel), np.inf)
        for a in range(k):
            for b in range(a + 1, k):
                dist = 1.0 - np.einsum("md,md->m", U[T[:, a]], U[T[:, b]])
                np.minimum(min_tt, dist, out=min_tt)
        out[sel] = min_tt - max_pt
    return out


def pair_margins(
    U: np.ndarray,
    rows_a1n1: np.ndarray,
    rows_a1n2: np.ndarray,
    rows_a2n1: np.ndarray,
    rows_a2n2: np.ndarray,
) -> np.ndarray:
    """margin[r] = d(a2n1, a2n2) - d(a1n1, a1n2)."""
    lhs = 1.0 - dot_pairs(U, rows_a1n1, rows_a1n2)
    rhs = 1.0 - dot_pairs(U, rows_a2n1, rows_a2n2)
    return rhs - lhs


def nonsubsectivity_margins(
    U: np.ndarray,
    phrase_rows: np.ndarray,
    adj_rows: np.ndarray,
    noun_rows: np.ndarray,
) -> np.ndarray:
    """margin[r] = d(phrase, noun) - d(phrase, adjective)."""
    d_pa = 1.0 - dot_pairs(U, phrase_rows, adj_rows)
    d_pn = 1.0 - dot_pairs(U, phrase_rows, noun_rows)
    return d_pn - d_pa
