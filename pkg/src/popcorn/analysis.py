"""Analytical side-tools: arithmetic-intensity models and a distance oracle.

The intensity calculators count single-precision FLOPs and bytes for the two
expensive stages of the algorithm (building the kernel matrix and computing
the per-iteration distance matrix) assuming 4-byte floats and 32-bit sparse
indices. They model the computation; they do not measure hardware.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

# Default elementwise cost models for turning the Gram matrix into the kernel
# matrix: (flops per entry, memory accesses per entry). The polynomial entry
# cost is degree + 1 (one multiply, one add, degree - 1 multiplies for the
# power). These are conventions, not measurements; callers can override by
# passing their own totals to intensity_kernel_matrix.
KERNEL_COST_PER_ENTRY = {
    "linear": (0, 0),
    "polynomial": None,  # depends on degree, see default_kernel_cost
    "gaussian": (5, 2),
    "sigmoid": (3, 2),
}


@dataclass(frozen=True)
class IntensityReport:
    """FLOP count, byte count, and their ratio for one computation."""

    flops: int
    bytes: int
    intensity: float = 0.0

    def __post_init__(self):
        if self.bytes <= 0:
            raise ValueError("byte count must be positive")
        object.__setattr__(self, "intensity", self.flops / self.bytes)


def default_kernel_cost(family: str, n: int, degree: int = 2) -> tuple[int, int]:
    """Total (flops, memory ops) to apply a kernel function over n^2 entries."""
    if family == "polynomial":
        per_entry = (degree + 1, 2)
    else:
        try:
            per_entry = KERNEL_COST_PER_ENTRY[family]
        except KeyError:
            raise ValueError(f"no cost model for kernel family {family!r}") from None
    return per_entry[0] * n * n, per_entry[1] * n * n


def intensity_kernel_matrix(n: int, d: int, f_k: int, b_k: int) -> IntensityReport:
    """Arithmetic intensity of building the kernel matrix.

    ``f_k``/``b_k`` are the FLOPs and memory operations of the elementwise
    kernel application (zero for the linear kernel); the Gram product
    contributes 2*n^2*d FLOPs and moves the input twice plus the n^2 output,
    4 bytes per element.
    """
    if n < 1 or d < 1:
        raise ValueError("n and d must be >= 1")
    if f_k < 0 or b_k < 0:
        raise ValueError("f_k and b_k must be >= 0")
    flops = f_k + 2 * n * n * d
    nbytes = 4 * (b_k + 2 * n * d + n * n)
    return IntensityReport(flops=flops, bytes=nbytes)


def intensity_distances(n: int, k: int) -> IntensityReport:
    """Arithmetic intensity of one distance-matrix iteration.

    Covers the sparse-dense multiply, the sparse matrix-vector product for
    centroid norms, and the fused addition of the two norm vectors.
    """
    if n < 1 or k < 1:
        raise ValueError("n and k must be >= 1")
    flops = 2 * n * n + 2 * n + 3 * n * k
    nbytes = 4 * (n * n + 6 * n + 4 * k + 3 * n * k)
    return IntensityReport(flops=flops, bytes=nbytes)


def augmented_distance_oracle(p, c) -> float:
    """Squared Euclidean distance via one augmented bilinear form.

    Embeds the center in a (d+1) x (d+1) matrix (squared center norm in the
    corner, negated center coordinates along the first row and column,
    identity elsewhere) so that q @ C @ q.T with q = [1, p] expands to
    ||p||^2 - 2<p, c> + ||c||^2. Useful purely as an independent oracle for
    distance computations: it shares no code with the clustering drivers.
    """
    pv = np.asarray(p, dtype=np.float64).ravel()
    cv = np.asarray(c, dtype=np.float64).ravel()
    if pv.size != cv.size:
        raise ValueError(f"point and center have different dimensionality ({pv.size} vs {cv.size})")
    d = pv.size
    C = np.eye(d + 1)
    C[0, 0] = float(cv @ cv)
    C[0, 1:] = -cv
    C[1:, 0] = -cv
    q = np.concatenate(([1.0], pv))
    return float(q @ C @ q)
