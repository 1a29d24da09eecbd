"""Kernel backend selection.

The relation evaluators run over tens of thousands of phrases and
hundreds of thousands of phrase pairs; their inner loops are compiled
with numba when available. Setting the environment variable
``ADJCOMP_PURE_NUMPY=1`` (or running without numba installed) selects
the pure-numpy fallback. ``benchmarks/bench_kernels.py`` compares the
two paths.

Margins computed by the two backends agree to ~1e-13 (summation order
differs); relation satisfaction is unaffected because ties snap to zero
well above that noise floor (see relations.TIE_EPS).
"""

from __future__ import annotations

import os

import numpy as np


def _pure_numpy_requested() -> bool:
    return os.environ.get("ADJCOMP_PURE_NUMPY", "").strip() not in ("", "0")


if _pure_numpy_requested():
    from . import _kernels_numpy as _impl

    BACKEND = "numpy"
else:
    try:
        from . import _kernels_numba as _impl

        BACKEND = "numba"
    except ImportError:
        from . import _kernels_numpy as _impl

        BACKEND = "numpy"


def backend_name() -> str:
    return BACKEND


def dot_pairs(U: np.ndarray, I: np.ndarray, J: np.ndarray) -> np.ndarray:
    return _impl.dot_pairs(U, I, J)


def intersectivity_margins(
    U: np.ndarray,
    phrase_rows: np.ndarray,
    term_rows: np.ndarray,
    term_offsets: np.ndarray,
) -> np.ndarray:
    counts = np.diff(term_offsets)
    if counts.size and counts.min() < 2:
        raise ValueError("each phrase needs at least two terms")
    return _impl.intersectivity_margins(U, phrase_rows, term_rows, term_offsets)


def pair_margins(
    U: np.ndarray,
    rows_a1n1: np.ndarray,
    rows_a1n2: np.ndarray,
    rows_a2n1: np.ndarray,
    rows_a2n2: np.ndarray,
) -> np.ndarray:
    return _impl.pair_margins(U, rows_a1n1, rows_a1n2, rows_a2n1, rows_a2n2)


def nonsubsectivity_margins(
    U: np.ndarray,
    phrase_rows: np.ndarray,
    adj_rows: np.ndarray,
    noun_rows: np.ndarray,
) -> np.ndarray:
    return _impl.nonsubsectivity_margins(U, phrase_rows, adj_rows, noun_rows)
