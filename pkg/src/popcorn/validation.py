"""Input validation helpers shared by the public entry points."""
from __future__ import annotations

import numpy as np

FLOAT_DTYPES = (np.float32, np.float64)

_DTYPE_ALIASES = {
    "f32": np.float32,
    "f64": np.float64,
    "float32": np.float32,
    "float64": np.float64,
    "single": np.float32,
    "double": np.float64,
}


def normalize_dtype(dtype) -> np.dtype:
    """Map a dtype-like ('f32', 'float64', np.float32, ...) to float32/float64."""
    if isinstance(dtype, str):
        key = dtype.lower()
        if key not in _DTYPE_ALIASES:
            raise ValueError(f"unsupported dtype {dtype!r}; use 'float32' or 'float64'")
        return np.dtype(_DTYPE_ALIASES[key])
    dt = np.dtype(dtype)
    if dt not in (np.dtype(np.float32), np.dtype(np.float64)):
        raise ValueError(f"unsupported dtype {dtype!r}; use float32 or float64")
    return dt


def as_float_matrix(X, dtype=None, name: str = "X") -> np.ndarray:
    """Coerce ``X`` to a C-contiguous 2-D float array with finite entries.

    When ``dtype`` is None the input's float dtype is preserved; any other
    input dtype is promoted to float32, the package's working precision.
    """
    if dtype is None:
        source = np.asarray(X)
        dtype = source.dtype if source.dtype in FLOAT_DTYPES else np.float32
    A = np.ascontiguousarray(X, dtype=normalize_dtype(dtype))
    if A.ndim != 2:
        raise ValueError(f"{name} must be 2-D, got {A.ndim}-D")
    if A.shape[0] < 1 or A.shape[1] < 1:
        raise ValueError(f"{name} must have at least one row and one column, got shape {A.shape}")
    if not np.isfinite(A).all():
        raise ValueError(f"{name} contains non-finite entries")
    return A


def check_square(M, name: str = "M") -> np.ndarray:
    A = as_float_matrix(M, name=name)
    if A.shape[0] != A.shape[1]:
        raise ValueError(f"{name} must be square, got shape {A.shape}")
    return A


def as_label_array(labels, name: str = "labels") -> np.ndarray:
    out = np.asarray(labels)
    if out.ndim != 1 or out.size < 1:
        raise ValueError(f"{name} must be a non-empty 1-D sequence")
    if not np.issubdtype(out.dtype, np.integer):
        if not np.all(out == np.floor(out)):
            raise ValueError(f"{name} must contain integers")
    return out.astype(np.int32)


def check_labels(labels, n_clusters: int, n_points: int | None = None,
                 name: str = "labels") -> np.ndarray:
    out = as_label_array(labels, name=name)
    if n_clusters < 1:
        raise ValueError("number of clusters must be >= 1")
    if n_points is not None and out.size != n_points:
        raise ValueError(f"{name} has length {out.size}, expected {n_points}")
    if out.min() < 0 or out.max() >= n_clusters:
        raise ValueError(f"{name} must lie in [0, {n_clusters})")
    return out


def require_finite(A: np.ndarray, op: str) -> np.ndarray:
    """Reject non-finite results (overflow in pow/exp and friends)."""
    if not np.isfinite(A).all():
        raise FloatingPointError(f"{op} produced non-finite values")
    return A
