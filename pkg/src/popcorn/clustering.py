"""Kernel K-means drivers.

Three interchangeable drivers share one loop skeleton (seeded random labels,
distance matrix, row-wise argmin, empty-cluster repair, fraction-changed
convergence) and differ only in how the distance matrix is produced:

* :func:`run_popcorn`: the matrix-centric formulation; the kernel matrix is
  computed once, then every iteration performs one sparse-dense multiply
  against the transposed selection matrix, one sparse matrix-vector product
  for the centroid norms, and a fused add of the two norm vectors.
* :func:`run_baseline`: the naive formulation; per-point distances are
  assembled directly from kernel-matrix sums over each cluster's members.
* :func:`run_lloyd`: classical Lloyd in the input space with mean-updated
  centroids; the kernel is ignored. With the linear kernel this coincides
  with the two drivers above, which makes it a convenient cross-check.

All drivers are deterministic for a fixed (points, config): the label PRNG
is PCG64, argmin ties break to the lowest index, and empty-cluster repair is
itself deterministic.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from time import perf_counter

import numpy as np

from .dense import LABEL_DTYPE, diag, row_argmin
from .kernels import GramMethod, KernelSpec, apply_kernel, compute_gram
from .sparse import build_selection_matrix, spmm_neg2_kvt, spmv_scaled
from .validation import as_float_matrix, check_labels, check_square, normalize_dtype


@dataclass
class TimingBreakdown:
    """Wall-clock seconds per phase, accumulated across iterations."""

    kernel_matrix_seconds: float = 0.0
    pairwise_distances_seconds: float = 0.0
    argmin_update_seconds: float = 0.0


@dataclass
class KKMeansConfig:
    """Settings shared by all drivers.

    ``tol`` is the fraction of points allowed to change cluster while still
    counting as converged; 0 demands an exact fixpoint. Convergence is only
    checked when ``check_convergence`` is set, otherwise the driver always
    runs ``max_iters`` iterations.
    """

    k: int
    max_iters: int = 30
    tol: float = 0.0
    check_convergence: bool = False
    seed: int = 0
    kernel: KernelSpec = field(default_factory=KernelSpec)
    gram: GramMethod = field(default_factory=GramMethod)
    dtype: object = np.float32

    def validate_for(self, n: int) -> None:
        if not 1 <= self.k <= n:
            raise ValueError(f"k must satisfy 1 <= k <= n, got k={self.k}, n={n}")
        if self.max_iters < 1:
            raise ValueError("max_iters must be >= 1")
        if not 0.0 <= self.tol <= 1.0:
            raise ValueError("tol must lie in [0, 1]")


@dataclass
class ClusteringResult:
    """Outcome of one driver call.

    ``objective_history`` holds one value per iteration: the sum of each
    point's distance to the centroid it was just assigned to.
    ``label_history`` stores the post-update labels of every iteration and
    ``repairs`` counts the points moved by empty-cluster repair, also per
    iteration.
    """

    labels: np.ndarray
    iterations_run: int
    objective_history: np.ndarray
    converged: bool
    timings: TimingBreakdown
    label_history: list[np.ndarray]
    repairs: np.ndarray


def init_assignments(n: int, k: int, seed: int) -> np.ndarray:
    """Uniform random labels from a seeded PCG64 stream, no cluster left empty.

    Empty clusters are repaired deterministically: point j is reassigned to
    cluster j for every empty cluster j, repeated until no cluster is empty
    (a reassignment can itself empty a small cluster). PCG64 produces the
    same stream on every platform, so results are reproducible fixtures.
    """
    if not 1 <= k <= n:
        raise ValueError(f"k must satisfy 1 <= k <= n, got k={k}, n={n}")
    rng = np.random.Generator(np.random.PCG64(seed))
    labels = rng.integers(0, k, size=n).astype(LABEL_DTYPE)
    while True:
        counts = np.bincount(labels, minlength=k)
        empty = np.flatnonzero(counts == 0)
        if empty.size == 0:
            return labels
        labels[empty] = empty.astype(LABEL_DTYPE)


def repair_empty_clusters(assign, D, k: int) -> np.ndarray:
    """Fill empty clusters by donating the points farthest from their centroid.

    For each empty cluster j in ascending order, the not-yet-moved point with
    the largest distance to its currently assigned centroid (ties break to
    the lowest point index) is reassigned to cluster j. Donations are
    repeated if they empty another cluster; each point moves at most once, so
    the procedure terminates with no empty clusters whenever k <= n.
    """
    Dm = np.asarray(D)
    labels = check_labels(assign, k)
    n = labels.size
    if k > n:
        raise ValueError(f"cannot fill {k} clusters with {n} points")
    if Dm.shape != (n, k):
        raise ValueError(f"distance matrix shape {Dm.shape} does not match (n={n}, k={k})")
    labels = labels.copy()
    moved = np.zeros(n, dtype=bool)
    while True:
        counts = np.bincount(labels, minlength=k)
        empty = np.flatnonzero(counts == 0)
        if empty.size == 0:
            return labels
        for j in empty:
            own = Dm[np.arange(n), labels].astype(np.float64)
            own[moved] = -np.inf
            donor = int(np.argmax(own))
            labels[donor] = j
            moved[donor] = True


def _assignment_step(D: np.ndarray, labels_prev: np.ndarray, k: int):
    """Argmin over rows, empty-cluster repair, objective and change bookkeeping."""
    n = D.shape[0]
    raw = row_argmin(D)
    labels = repair_empty_clusters(raw, D, k) if np.bincount(raw, minlength=k).min() == 0 else raw
    moved = int(np.count_nonzero(labels != raw))
    objective = float(D[np.arange(n), labels].sum(dtype=np.float64))
    changed = float(np.count_nonzero(labels != labels_prev)) / n
    return labels, moved, objective, changed


def _finalize(labels, history, label_history, repairs, converged, timings) -> ClusteringResult:
    return ClusteringResult(
        labels=labels,
        iterations_run=len(history),
        objective_history=np.asarray(history, dtype=np.float64),
        converged=converged,
        timings=timings,
        label_history=label_history,
        repairs=np.asarray(repairs, dtype=np.int64),
    )


def run_popcorn(points, cfg: KKMeansConfig) -> ClusteringResult:
    """Matrix-centric Kernel K-means.

    The kernel matrix K is built once (Gram product, then the elementwise
    kernel) and its diagonal provides the per-point norm terms. Each
    iteration computes E = -2*K@V.T with a sparse-dense multiply, gathers
    z[i] = -0.5*E[i, cluster(i)], obtains the centroid norms as V@z with a
    sparse matrix-vector product, assembles the distance matrix as
    E + point_norms + centroid_norms in one fused pass, reassigns points by
    row-wise argmin, and rebuilds V from the new labels.
    """
    P = as_float_matrix(points, dtype=normalize_dtype(cfg.dtype), name="points")
    n = P.shape[0]
    cfg.validate_for(n)
    timings = TimingBreakdown()

    t0 = perf_counter()
    K = apply_kernel(compute_gram(P, cfg.gram), cfg.kernel)
    point_norms = diag(K)
    timings.kernel_matrix_seconds += perf_counter() - t0

    labels = init_assignments(n, cfg.k, cfg.seed)
    t0 = perf_counter()
    V = build_selection_matrix(labels, cfg.k, dtype=K.dtype)
    timings.argmin_update_seconds += perf_counter() - t0

    rows = np.arange(n)
    history: list[float] = []
    label_history: list[np.ndarray] = []
    repairs: list[int] = []
    converged = False
    for _ in range(cfg.max_iters):
        t0 = perf_counter()
        E = spmm_neg2_kvt(K, V)
        z = -0.5 * E[rows, labels]
        centroid_norms = spmv_scaled(1.0, V, z)
        # fused norm add; E is not read again, so reuse its buffer for D
        D = E
        D += point_norms[:, None]
        D += centroid_norms[None, :]
        timings.pairwise_distances_seconds += perf_counter() - t0

        t0 = perf_counter()
        labels, moved, objective, changed = _assignment_step(D, labels, cfg.k)
        V = build_selection_matrix(labels, cfg.k, dtype=K.dtype)
        timings.argmin_update_seconds += perf_counter() - t0

        history.append(objective)
        label_history.append(labels.copy())
        repairs.append(moved)
        if cfg.check_convergence and changed <= cfg.tol:
            converged = True
            break
    return _finalize(labels, history, label_history, repairs, converged, timings)


def _kernel_trick_distances(K: np.ndarray, labels: np.ndarray, k: int) -> np.ndarray:
    """Per-point squared feature-space distances, straight from K.

    dist^2(i, j) = K[i,i] - (2/|L_j|) * sum_{l in L_j} K[i,l]
                 + (1/|L_j|^2) * sum_{l,m in L_j} K[l,m]
    """
    n = K.shape[0]
    dk = K.diagonal()
    D = np.empty((n, k), dtype=K.dtype)
    for j in range(k):
        members = np.flatnonzero(labels == j)
        m = members.size
        if m == 0:
            # unreachable from the drivers (init/repair keep clusters nonempty)
            D[:, j] = np.inf
            continue
        cluster_sum = K[:, members].sum(axis=1)
        self_term = float(K[np.ix_(members, members)].sum())
        D[:, j] = dk - (2.0 / m) * cluster_sum + self_term / (m * m)
    return D


def run_baseline(points, cfg: KKMeansConfig) -> ClusteringResult:
    """Naive Kernel K-means: distances assembled pointwise from K.

    Shares the init path, tie-breaking, repair policy and convergence
    semantics with :func:`run_popcorn`; only the distance computation
    differs, which makes the two drivers direct oracles for each other.
    """
    P = as_float_matrix(points, dtype=normalize_dtype(cfg.dtype), name="points")
    n = P.shape[0]
    cfg.validate_for(n)
    timings = TimingBreakdown()

    t0 = perf_counter()
    K = apply_kernel(compute_gram(P, cfg.gram), cfg.kernel)
    timings.kernel_matrix_seconds += perf_counter() - t0

    labels = init_assignments(n, cfg.k, cfg.seed)
    history: list[float] = []
    label_history: list[np.ndarray] = []
    repairs: list[int] = []
    converged = False
    for _ in range(cfg.max_iters):
        t0 = perf_counter()
        D = _kernel_trick_distances(K, labels, cfg.k)
        timings.pairwise_distances_seconds += perf_counter() - t0

        t0 = perf_counter()
        labels, moved, objective, changed = _assignment_step(D, labels, cfg.k)
        timings.argmin_update_seconds += perf_counter() - t0

        history.append(objective)
        label_history.append(labels.copy())
        repairs.append(moved)
        if cfg.check_convergence and changed <= cfg.tol:
            converged = True
            break
    return _finalize(labels, history, label_history, repairs, converged, timings)


def _mean_centroids(P: np.ndarray, labels: np.ndarray, k: int) -> np.ndarray:
    C = np.zeros((k, P.shape[1]), dtype=P.dtype)
    for j in range(k):
        members = np.flatnonzero(labels == j)
        if members.size:
            C[j] = P[members].mean(axis=0)
    return C


def run_lloyd(points, cfg: KKMeansConfig) -> ClusteringResult:
    """Classical Lloyd iteration in the input space; the kernel is ignored."""
    P = as_float_matrix(points, dtype=normalize_dtype(cfg.dtype), name="points")
    n = P.shape[0]
    cfg.validate_for(n)
    timings = TimingBreakdown()

    labels = init_assignments(n, cfg.k, cfg.seed)
    t0 = perf_counter()
    centroids = _mean_centroids(P, labels, cfg.k)
    timings.argmin_update_seconds += perf_counter() - t0
    point_norms = (P * P).sum(axis=1)

    history: list[float] = []
    label_history: list[np.ndarray] = []
    repairs: list[int] = []
    converged = False
    for _ in range(cfg.max_iters):
        t0 = perf_counter()
        centroid_norms = (centroids * centroids).sum(axis=1)
        D = point_norms[:, None] - 2.0 * (P @ centroids.T) + centroid_norms[None, :]
        timings.pairwise_distances_seconds += perf_counter() - t0

        t0 = perf_counter()
        labels, moved, objective, changed = _assignment_step(D, labels, cfg.k)
        centroids = _mean_centroids(P, labels, cfg.k)
        timings.argmin_update_seconds += perf_counter() - t0

        history.append(objective)
        label_history.append(labels.copy())
        repairs.append(moved)
        if cfg.check_convergence and changed <= cfg.tol:
            converged = True
            break
    return _finalize(labels, history, label_history, repairs, converged, timings)


def compute_objective(K, assign) -> float:
    """Sum of squared feature-space distances of each point to its centroid.

    Evaluated with the same pointwise formula as :func:`run_baseline`,
    accumulated in float64. Exact arithmetic would give a nonnegative value;
    rounding can leave a tiny negative residue.
    """
    Kd = check_square(K, name="K")
    labels = check_labels(assign, int(np.max(assign)) + 1, n_points=Kd.shape[0])
    dk = Kd.diagonal()
    total = 0.0
    for j in np.unique(labels):
        members = np.flatnonzero(labels == j)
        m = members.size
        block = Kd[np.ix_(members, members)]
        per_point = dk[members] - (2.0 / m) * block.sum(axis=1) + block.sum() / (m * m)
        total += float(per_point.sum(dtype=np.float64))
    return total
