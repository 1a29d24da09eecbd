"""Vector arithmetic shared by providers and relation evaluators."""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np


class DimensionMismatchError(ValueError):
    """Operands have different dimensions."""


class ZeroVectorError(ValueError):
    """A zero vector was used where a direction is required; usually means
    an embedding is missing or failed upstream."""


class NonFiniteVectorError(ValueError):
    """A vector contains NaN or infinity."""


def as_vector(x) -> np.ndarray:
    """Validate and convert to a 1-D float64 array with finite components."""
    v = np.asarray(x, dtype=np.float64)
    if v.ndim != 1 or v.shape[0] < 1:
        raise ValueError(f"expected a 1-D vector, got shape {v.shape}")
    if not np.all(np.isfinite(v)):
        raise NonFiniteVectorError("vector has non-finite components")
    return v


def cosine_distance(u, v) -> float:
    """1 - cos(u, v), in [0, 2]. Raises on dimension mismatch or zero input."""
    u = as_vector(u)
    v = as_vector(v)
    if u.shape[0] != v.shape[0]:
        raise DimensionMismatchError(f"dimensions differ: {u.shape[0]} vs {v.shape[0]}")
    nu = float(np.sqrt(np.dot(u, u)))
    nv = float(np.sqrt(np.dot(v, v)))
    if nu == 0.0 or nv == 0.0:
        raise ZeroVectorError("cosine distance undefined for the zero vector")
    return 1.0 - float(np.dot(u, v)) / (nu * nv)


def mean_pool(vectors: Sequence) -> np.ndarray:
    """Componentwise arithmetic mean of a nonempty list of same-dim vectors.

    Computed as first + mean(deltas), which is exact when all inputs are
    identical (mean_pool of k copies of v is v, bitwise).
    """
    vs = [as_vector(v) for v in vectors]
    if not vs:
        raise ValueError("mean_pool of an empty list")
    dim = vs[0].shape[0]
    for v in vs[1:]:
        if v.shape[0] != dim:
            raise DimensionMismatchError(
                f"dimensions differ: {dim} vs {v.shape[0]}"
            )
    base = vs[0]
    delta = np.zeros(dim, dtype=np.float64)
    for v in vs[1:]:
        delta += v - base
    return base + delta / len(vs)


def l2_normalize(v) -> np.ndarray:
    """Scale to unit Euclidean norm; cosine distances are invariant."""
    v = as_vector(v)
    norm = float(np.sqrt(np.dot(v, v)))
    if norm == 0.0:
        raise ZeroVectorError("cannot normalize the zero vector")
    return v / norm


def unit_rows(vectors: Iterable[np.ndarray], names: Sequence[str] | None = None) -> np.ndarray:
    """Stack vectors into a matrix and normalize every row to unit norm.

    Raises ZeroVectorError naming the offending entry (when names given).
    Rows of the result feed the batch kernels, where cosine distance is
    1 - row dot.
    """
    M = np.stack([as_vector(v) for v in vectors]).astype(np.float64, copy=False)
    norms = np.sqrt(np.einsum("ij,ij->i", M, M))
    bad = np.nonzero(norms == 0.0)[0]
    if bad.size:
        which = names[bad[0]] if names is not None else f"row {bad[0]}"
        raise ZeroVectorError(f"zero vector for {which!r}")
    return M / norms[:, None]
