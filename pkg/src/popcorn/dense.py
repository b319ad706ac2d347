"""Dense row-major matrix kernels used throughout the clustering pipeline.

A "matrix" here is a plain C-contiguous 2-D numpy float array and a "vector"
is a 1-D float array; both are safe to share across threads for reading.
Single precision is the working default, and every routine preserves the
dtype of its input so the identical code path can be replayed in float64
when an oracle comparison needs the extra headroom.
"""
from __future__ import annotations

from typing import Callable

import numpy as np

from .validation import as_float_matrix, check_square, require_finite

LABEL_DTYPE = np.int32


def gemm_gram(points) -> np.ndarray:
    """Full Gram product ``points @ points.T``.

    All n*n entries are computed explicitly, including both mirror-image
    triangles. The BLAS matrix product parallelizes internally but is
    deterministic from run to run.
    """
    P = as_float_matrix(points, name="points")
    out = P @ P.T
    return require_finite(out, "gemm_gram")


def syrk_gram(points) -> np.ndarray:
    """Gram matrix via a rank-k update: one triangle computed, then mirrored.

    Only the upper triangle (diagonal included) is produced by inner
    products; the lower triangle is filled by copying, so the result is
    exactly symmetric bit for bit. The explicit copy is the price this
    route pays compared to :func:`gemm_gram`, which computes every entry.
    """
    P = as_float_matrix(points, name="points")
    n = P.shape[0]
    out = np.zeros((n, n), dtype=P.dtype)
    for i in range(n):
        out[i, i:] = P[i:, :] @ P[i, :]
    for i in range(n):
        out[i + 1:, i] = out[i, i + 1:]
    return require_finite(out, "syrk_gram")


def diag(M) -> np.ndarray:
    """Extract the main diagonal of a square matrix as a fresh vector."""
    A = check_square(M, name="M")
    return np.ascontiguousarray(A.diagonal())


def row_argmin(M) -> np.ndarray:
    """Index of the smallest entry in each row; ties break to the lowest column.

    The lowest-index tie-break keeps runs deterministic regardless of how the
    surrounding code is parallelized. Rows containing NaN are rejected
    because their minimum is meaningless.
    """
    A = np.asarray(M)
    if A.ndim != 2 or A.shape[0] < 1 or A.shape[1] < 1:
        raise ValueError(f"row_argmin expects a non-empty 2-D matrix, got shape {A.shape}")
    if np.isnan(A).any():
        raise ValueError("row_argmin: matrix contains NaN")
    return np.argmin(A, axis=1).astype(LABEL_DTYPE)


def map_elementwise(M, f: Callable) -> np.ndarray:
    """Apply a scalar function to every entry, preserving shape and dtype.

    ``f`` may be array-aware (a numpy expression) or a plain scalar callable;
    scalar callables fall back to ``np.vectorize``. Non-finite outputs are
    reported as errors rather than silently propagated.
    """
    A = as_float_matrix(M, name="M")
    out = None
    try:
        candidate = np.asarray(f(A))
        if candidate.shape == A.shape:
            out = candidate
    except Exception:
        out = None
    if out is None:
        out = np.vectorize(f, otypes=[A.dtype])(A)
    out = np.ascontiguousarray(out, dtype=A.dtype)
    return require_finite(out, "map_elementwise")
