"""Compressed-sparse-row machinery for the cluster-selection matrix.

The selection matrix has one row per cluster and one column per point; the
entry at (cluster j, point i) is 1/|cluster j| when point i belongs to
cluster j and is structurally zero otherwise. Every point belongs to exactly
one cluster, so the matrix carries exactly n nonzeros, one per column,
which is what keeps the per-iteration products cheap: the sparse-dense
multiply costs O(n^2) and the sparse matrix-vector product costs O(n).

Indices are 32-bit, which caps the number of points at 2^31 - 1.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .validation import as_float_matrix, check_labels

INDEX_DTYPE = np.int32


@dataclass(frozen=True)
class CsrMatrix:
    """Immutable CSR matrix: ``rowptrs`` (rows+1), ``colinds`` and ``values`` (nnz).

    Construction validates the structural invariants: row pointers start at
    zero, never decrease, and end at nnz; column indices are in range and
    strictly increasing within each row. Instances are safe to share across
    threads for reading.
    """

    rows: int
    cols: int
    rowptrs: np.ndarray
    colinds: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "rowptrs", np.ascontiguousarray(self.rowptrs, dtype=INDEX_DTYPE))
        object.__setattr__(self, "colinds", np.ascontiguousarray(self.colinds, dtype=INDEX_DTYPE))
        object.__setattr__(self, "values", np.ascontiguousarray(self.values))
        self._validate()

    def _validate(self):
        if self.rows < 1 or self.cols < 1:
            raise ValueError("CsrMatrix must have at least one row and one column")
        if self.rowptrs.shape != (self.rows + 1,):
            raise ValueError("rowptrs must have length rows + 1")
        if self.rowptrs[0] != 0:
            raise ValueError("rowptrs[0] must be 0")
        if np.any(np.diff(self.rowptrs) < 0):
            raise ValueError("rowptrs must be non-decreasing")
        nnz = int(self.rowptrs[-1])
        if self.colinds.shape != (nnz,) or self.values.shape != (nnz,):
            raise ValueError("colinds/values length must equal rowptrs[rows]")
        if nnz:
            if self.colinds.min() < 0 or self.colinds.max() >= self.cols:
                raise ValueError("column index out of range")
            # strictly increasing within each row; diffs across row boundaries are free
            step = np.diff(self.colinds)
            boundaries = self.rowptrs[1:-1]
            interior = np.ones(nnz - 1, dtype=bool)
            inside = (boundaries > 0) & (boundaries < nnz)
            interior[boundaries[inside] - 1] = False
            if np.any(step[interior] <= 0):
                raise ValueError("column indices must be strictly increasing within a row")

    @property
    def nnz(self) -> int:
        return int(self.rowptrs[-1])

    def row(self, j: int) -> tuple[np.ndarray, np.ndarray]:
        """Column indices and values of row ``j`` (views, do not mutate)."""
        lo, hi = int(self.rowptrs[j]), int(self.rowptrs[j + 1])
        return self.colinds[lo:hi], self.values[lo:hi]

    def to_dense(self) -> np.ndarray:
        out = np.zeros((self.rows, self.cols), dtype=self.values.dtype)
        for j in range(self.rows):
            cols, vals = self.row(j)
            out[j, cols] = vals
        return out

    @classmethod
    def from_dense(cls, A) -> "CsrMatrix":
        A = np.asarray(A)
        if A.ndim != 2:
            raise ValueError("from_dense expects a 2-D array")
        rowptrs = [0]
        colinds: list[int] = []
        values: list[float] = []
        for row in A:
            nz = np.flatnonzero(row)
            colinds.extend(nz.tolist())
            values.extend(row[nz].tolist())
            rowptrs.append(len(colinds))
        return cls(A.shape[0], A.shape[1], np.asarray(rowptrs),
                   np.asarray(colinds, dtype=INDEX_DTYPE),
                   np.asarray(values, dtype=A.dtype if A.dtype in (np.float32, np.float64) else np.float64))


def build_selection_matrix(assign, k: int, dtype=np.float32) -> CsrMatrix:
    """Build the k x n cluster-selection matrix from per-point labels.

    Row j holds 1/|cluster j| in the columns of the points assigned to
    cluster j. The result has exactly n nonzeros, one per column, and each
    nonempty row sums to 1. Empty clusters yield empty rows; whether that is
    acceptable is the caller's policy.
    """
    labels = check_labels(assign, k)
    n = labels.size
    counts = np.bincount(labels, minlength=k)
    rowptrs = np.zeros(k + 1, dtype=INDEX_DTYPE)
    np.cumsum(counts, out=rowptrs[1:])
    order = np.argsort(labels, kind="stable").astype(INDEX_DTYPE)
    values = (1.0 / counts[labels[order]]).astype(dtype)
    return CsrMatrix(rows=k, cols=n, rowptrs=rowptrs, colinds=order, values=values)


def spmm_neg2_kvt(K, V: CsrMatrix) -> np.ndarray:
    """Sparse-dense product ``-2 * K @ V.T`` as a dense n x k matrix.

    Column j of the output is -2 times the weighted sum of the columns of K
    selected by row j of V, so the total work is O(sum_j n * nnz(row j)) =
    O(n * nnz), i.e. O(n^2) when V is a fully populated selection matrix.
    """
    Kd = as_float_matrix(K, name="K")
    n = Kd.shape[0]
    if Kd.shape[1] != n:
        raise ValueError(f"K must be square, got shape {Kd.shape}")
    if V.cols != n:
        raise ValueError(f"V has {V.cols} columns but K is {n} x {n}")
    E = np.empty((n, V.rows), dtype=Kd.dtype)
    for j in range(V.rows):
        cols, vals = V.row(j)
        if cols.size == 0:
            E[:, j] = 0.0
            continue
        E[:, j] = Kd[:, cols] @ vals.astype(Kd.dtype, copy=False)
    np.multiply(E, -2.0, out=E)
    return E


def spmv_scaled(alpha: float, V: CsrMatrix, z) -> np.ndarray:
    """Scaled sparse matrix-vector product ``alpha * V @ z`` in O(nnz) work.

    Accumulation happens in float64 and the result is cast back to the dtype
    of ``z``.
    """
    zv = np.asarray(z)
    if zv.ndim != 1:
        raise ValueError("z must be a 1-D vector")
    if V.cols != zv.size:
        raise ValueError(f"V has {V.cols} columns but z has length {zv.size}")
    products = V.values.astype(np.float64) * zv[V.colinds].astype(np.float64)
    row_ids = np.repeat(np.arange(V.rows), np.diff(V.rowptrs))
    out = np.bincount(row_ids, weights=products, minlength=V.rows)
    dtype = zv.dtype if zv.dtype in (np.float32, np.float64) else np.float64
    return (float(alpha) * out).astype(dtype)
