"""Kernel matrix construction.

The kernel matrix is produced in two stages: a dense Gram matrix of pairwise
inner products, then an elementwise kernel function on top of it. The Gram
stage can run through a full matrix product or through a triangular rank-k
update with a mirror copy; which one wins depends on how n compares to d, so
the choice is made dynamically from their ratio.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dense import gemm_gram, syrk_gram
from .validation import as_float_matrix, check_square, require_finite

KERNEL_FAMILIES = ("linear", "polynomial", "gaussian", "sigmoid")
GRAM_VARIANTS = ("auto", "gemm", "syrk")

# exp underflows single precision below this exponent; clamping avoids denormals
GAUSSIAN_EXP_FLOOR = -88.0


@dataclass(frozen=True)
class KernelSpec:
    """Kernel family plus parameters.

    polynomial: (gamma * <x, y> + coef) ** degree
    gaussian:   exp(-gamma * ||x - y||^2 / sigma^2)
    sigmoid:    tanh(gamma * <x, y> + coef)
    linear:     <x, y>

    ``degree`` must be a positive integer; ``sigma`` must be positive for the
    gaussian family. Exposing both ``gamma`` and ``sigma`` for the gaussian is
    redundant (only their ratio matters) but both defaults are 1.0.
    """

    family: str = "polynomial"
    gamma: float = 1.0
    coef: float = 1.0
    degree: int = 2
    sigma: float = 1.0

    def __post_init__(self):
        if self.family not in KERNEL_FAMILIES:
            raise ValueError(f"unknown kernel family {self.family!r}; expected one of {KERNEL_FAMILIES}")
        if not float(self.degree).is_integer():
            raise ValueError(f"kernel degree must be an integer, got {self.degree!r}")
        object.__setattr__(self, "degree", int(self.degree))
        if self.degree < 1:
            raise ValueError("kernel degree must be >= 1")
        if self.family == "gaussian" and not self.sigma > 0:
            raise ValueError("sigma must be positive for the gaussian kernel")


@dataclass(frozen=True)
class GramMethod:
    """Gram algorithm choice: explicit variant, or 'auto' by the n/d ratio."""

    variant: str = "auto"
    threshold: float = 100.0

    def __post_init__(self):
        if self.variant not in GRAM_VARIANTS:
            raise ValueError(f"unknown gram variant {self.variant!r}; expected one of {GRAM_VARIANTS}")
        if not self.threshold > 0:
            raise ValueError("gram threshold must be positive")


def select_gram_algorithm(n: int, d: int, method: GramMethod = GramMethod()) -> str:
    """Pick 'gemm' or 'syrk' for an n x d input.

    The full product wins for tall skinny data, the triangular update when d
    approaches n; under 'auto' the rule is gemm iff n/d exceeds the
    threshold. Explicit variants pass through untouched.
    """
    if n < 1 or d < 1:
        raise ValueError("n and d must be >= 1")
    if method.variant != "auto":
        return method.variant
    return "gemm" if n / d > method.threshold else "syrk"


def compute_gram(points, method: GramMethod = GramMethod()) -> np.ndarray:
    """Pairwise inner products of the rows of ``points``."""
    P = as_float_matrix(points, name="points")
    algo = select_gram_algorithm(P.shape[0], P.shape[1], method)
    return gemm_gram(P) if algo == "gemm" else syrk_gram(P)


def _int_pow(base, exponent: int):
    """Exponentiation by squaring; works for scalars and arrays alike."""
    result = None
    acc = base
    e = exponent
    while e:
        if e & 1:
            result = acc if result is None else result * acc
        e >>= 1
        if e:
            acc = acc * acc
    return result


def apply_kernel(B, spec: KernelSpec) -> np.ndarray:
    """Turn a Gram matrix into the kernel matrix, elementwise.

    The gaussian family reads squared distances off the Gram matrix as
    ``-2*B[i,j] + B[i,i] + B[j,j]``; its exponent is clamped at
    :data:`GAUSSIAN_EXP_FLOOR`, which only affects kernel values below
    roughly 1e-38, and its diagonal is exactly 1. Overflow in pow/exp is
    reported as an error.
    """
    Bd = check_square(B, name="B")
    with np.errstate(over="ignore", invalid="ignore"):  # non-finite results raise below
        if spec.family == "linear":
            K = Bd.copy()
        elif spec.family == "polynomial":
            K = _int_pow(spec.gamma * Bd + spec.coef, spec.degree)
        elif spec.family == "sigmoid":
            K = np.tanh(spec.gamma * Bd + spec.coef)
        else:  # gaussian
            dvec = Bd.diagonal()
            expo = (-spec.gamma / (spec.sigma * spec.sigma)) * (-2.0 * Bd + dvec[:, None] + dvec[None, :])
            np.maximum(expo, GAUSSIAN_EXP_FLOOR, out=expo)
            K = np.exp(expo)
            np.fill_diagonal(K, 1.0)
    return require_finite(np.ascontiguousarray(K, dtype=Bd.dtype), f"apply_kernel[{spec.family}]")


def kernel_eval(x, y, spec: KernelSpec) -> float:
    """Evaluate the kernel on a single pair of points.

    Mirrors :func:`apply_kernel` entry for entry: feeding every pair of rows
    through this function reproduces the kernel matrix up to rounding.
    """
    xv = np.asarray(x, dtype=np.float64).ravel()
    yv = np.asarray(y, dtype=np.float64).ravel()
    if xv.size != yv.size:
        raise ValueError(f"points have different dimensionality ({xv.size} vs {yv.size})")
    inner = float(xv @ yv)
    if spec.family == "linear":
        return inner
    if spec.family == "polynomial":
        return float(_int_pow(spec.gamma * inner + spec.coef, spec.degree))
    if spec.family == "sigmoid":
        return float(np.tanh(spec.gamma * inner + spec.coef))
    sq_dist = -2.0 * inner + float(xv @ xv) + float(yv @ yv)
    expo = max(-spec.gamma * sq_dist / (spec.sigma * spec.sigma), GAUSSIAN_EXP_FLOOR)
    return float(np.exp(expo))


def kernel_matrix_between(X, Y, spec: KernelSpec) -> np.ndarray:
    """Rectangular kernel matrix between the rows of two point sets.

    With ``X is Y`` this reproduces ``apply_kernel(compute_gram(X))`` except
    that the gaussian diagonal is not pinned (the entries still come out as
    1 up to rounding).
    """
    Xd = as_float_matrix(X, name="X")
    Yd = as_float_matrix(Y, dtype=Xd.dtype, name="Y")
    if Xd.shape[1] != Yd.shape[1]:
        raise ValueError(f"X and Y have different dimensionality ({Xd.shape[1]} vs {Yd.shape[1]})")
    B = Xd @ Yd.T
    if spec.family == "linear":
        K = B
    elif spec.family == "polynomial":
        K = _int_pow(spec.gamma * B + spec.coef, spec.degree)
    elif spec.family == "sigmoid":
        K = np.tanh(spec.gamma * B + spec.coef)
    else:
        xn = (Xd * Xd).sum(axis=1)
        yn = (Yd * Yd).sum(axis=1)
        expo = (-spec.gamma / (spec.sigma * spec.sigma)) * (-2.0 * B + xn[:, None] + yn[None, :])
        np.maximum(expo, GAUSSIAN_EXP_FLOOR, out=expo)
        K = np.exp(expo)
    return require_finite(np.ascontiguousarray(K, dtype=Xd.dtype), f"kernel_matrix_between[{spec.family}]")
