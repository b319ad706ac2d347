"""Scikit-learn style estimator facade over the clustering drivers.

The class follows the sklearn estimator contract (keyword-only constructor
that just stores parameters, ``fit`` returning self, trailing-underscore
fitted attributes, ``get_params``/``set_params``) without importing sklearn:
duck typing is all the ecosystem needs for cloning, pipelines and grid
search.
"""
from __future__ import annotations

import numpy as np

from .clustering import KKMeansConfig, run_baseline, run_lloyd, run_popcorn
from .dense import row_argmin
from .kernels import GramMethod, KernelSpec, kernel_matrix_between
from .validation import as_float_matrix, normalize_dtype

_ALGORITHMS = {"popcorn": run_popcorn, "baseline": run_baseline, "lloyd": run_lloyd}


class KernelKMeans:
    """Kernel K-means clustering with a scikit-learn compatible interface.

    Parameters
    ----------
    n_clusters : number of clusters.
    kernel : 'linear', 'polynomial', 'gaussian' or 'sigmoid'.
    gamma, coef0, degree, sigma : kernel parameters; ``coef0`` matches the
        sklearn naming for the additive constant.
    algorithm : 'popcorn' (sparse matrix-centric), 'baseline' (naive kernel
        trick) or 'lloyd' (classical input-space K-means, kernel ignored).
    gram_method : 'auto', 'gemm' or 'syrk'; 'auto' picks gemm when
        n / d > gram_threshold.
    max_iter, tol, check_convergence : iteration budget and the
        fraction-changed convergence rule.
    random_state : integer seed for the label initialization.
    dtype : 'float32' (default) or 'float64'.

    Attributes (after fit)
    ----------------------
    labels_ : per-point cluster indices.
    inertia_ : final objective (sum of squared feature-space distances).
    n_iter_ : iterations executed.
    converged_ : whether the fraction-changed test fired.
    objective_history_ : objective value per iteration.
    timings_ : per-phase wall-clock breakdown.
    """

    _PARAM_NAMES = ("n_clusters", "kernel", "gamma", "coef0", "degree", "sigma",
                    "algorithm", "gram_method", "gram_threshold", "max_iter",
                    "tol", "check_convergence", "random_state", "dtype")

    def __init__(self, n_clusters=8, *, kernel="polynomial", gamma=1.0, coef0=1.0,
                 degree=2, sigma=1.0, algorithm="popcorn", gram_method="auto",
                 gram_threshold=100.0, max_iter=30, tol=0.0,
                 check_convergence=True, random_state=0, dtype="float32"):
        self.n_clusters = n_clusters
        self.kernel = kernel
        self.gamma = gamma
        self.coef0 = coef0
        self.degree = degree
        self.sigma = sigma
        self.algorithm = algorithm
        self.gram_method = gram_method
        self.gram_threshold = gram_threshold
        self.max_iter = max_iter
        self.tol = tol
        self.check_convergence = check_convergence
        self.random_state = random_state
        self.dtype = dtype

    # -- sklearn plumbing ---------------------------------------------------
    def get_params(self, deep=True):
        return {name: getattr(self, name) for name in self._PARAM_NAMES}

    def set_params(self, **params):
        for name, value in params.items():
            if name not in self._PARAM_NAMES:
                raise ValueError(f"invalid parameter {name!r} for KernelKMeans")
            setattr(self, name, value)
        return self

    def __repr__(self):
        args = ", ".join(f"{k}={getattr(self, k)!r}" for k in self._PARAM_NAMES)
        return f"KernelKMeans({args})"

    # -- core API -----------------------------------------------------------
    def _kernel_spec(self) -> KernelSpec:
        return KernelSpec(family=self.kernel, gamma=self.gamma, coef=self.coef0,
                          degree=self.degree, sigma=self.sigma)

    def _config(self) -> KKMeansConfig:
        return KKMeansConfig(
            k=self.n_clusters, max_iters=self.max_iter, tol=self.tol,
            check_convergence=self.check_convergence,
            seed=int(self.random_state) if self.random_state is not None else 0,
            kernel=self._kernel_spec(),
            gram=GramMethod(variant=self.gram_method, threshold=self.gram_threshold),
            dtype=normalize_dtype(self.dtype),
        )

    def fit(self, X, y=None):
        if self.algorithm not in _ALGORITHMS:
            raise ValueError(f"unknown algorithm {self.algorithm!r}; expected one of {tuple(_ALGORITHMS)}")
        cfg = self._config()
        Xv = as_float_matrix(X, dtype=cfg.dtype, name="X")
        result = _ALGORITHMS[self.algorithm](Xv, cfg)
        self.X_fit_ = Xv
        self.labels_ = result.labels
        self.inertia_ = float(result.objective_history[-1])
        self.n_iter_ = result.iterations_run
        self.converged_ = result.converged
        self.objective_history_ = result.objective_history
        self.timings_ = result.timings
        self.result_ = result
        self._cluster_cache = None
        return self

    def fit_predict(self, X, y=None):
        return self.fit(X).labels_

    def predict(self, X):
        """Assign new points to the nearest fitted centroid.

        For the kernel drivers the distance to a centroid is evaluated with
        the kernel trick against the stored training points; for 'lloyd' it
        is the plain Euclidean distance to the mean centroids.
        """
        self._check_fitted()
        Xv = as_float_matrix(X, dtype=self.X_fit_.dtype, name="X")
        if self.algorithm == "lloyd":
            centroids = self._mean_centroids()
            D = ((Xv * Xv).sum(axis=1)[:, None]
                 - 2.0 * (Xv @ centroids.T)
                 + (centroids * centroids).sum(axis=1)[None, :])
            return row_argmin(D)
        spec = self._kernel_spec()
        cross = kernel_matrix_between(Xv, self.X_fit_, spec)
        self_terms = self._self_kernel(Xv, spec)
        members, sizes, cluster_self = self._cluster_terms(spec)
        D = np.empty((Xv.shape[0], self.n_clusters), dtype=Xv.dtype)
        for j in range(self.n_clusters):
            m = sizes[j]
            D[:, j] = self_terms - (2.0 / m) * cross[:, members[j]].sum(axis=1) + cluster_self[j] / (m * m)
        return row_argmin(D)

    # -- helpers ------------------------------------------------------------
    def _check_fitted(self):
        if not hasattr(self, "labels_"):
            raise RuntimeError("this KernelKMeans instance is not fitted yet; call fit first")

    def _mean_centroids(self) -> np.ndarray:
        C = np.zeros((self.n_clusters, self.X_fit_.shape[1]), dtype=self.X_fit_.dtype)
        for j in range(self.n_clusters):
            mask = self.labels_ == j
            if mask.any():
                C[j] = self.X_fit_[mask].mean(axis=0)
        return C

    @staticmethod
    def _self_kernel(X: np.ndarray, spec: KernelSpec) -> np.ndarray:
        sq = (X * X).sum(axis=1)
        if spec.family == "linear":
            return sq
        if spec.family == "polynomial":
            return (spec.gamma * sq + spec.coef) ** spec.degree
        if spec.family == "sigmoid":
            return np.tanh(spec.gamma * sq + spec.coef)
        return np.ones_like(sq)

    def _cluster_terms(self, spec: KernelSpec):
        if self._cluster_cache is None:
            members = [np.flatnonzero(self.labels_ == j) for j in range(self.n_clusters)]
            sizes = np.array([max(m.size, 1) for m in members])
            cluster_self = np.array([
                float(kernel_matrix_between(self.X_fit_[m], self.X_fit_[m], spec).sum()) if m.size else 0.0
                for m in members
            ])
            self._cluster_cache = (members, sizes, cluster_self)
        return self._cluster_cache

    def score(self, X=None, y=None):
        """Negative inertia, mirroring sklearn's KMeans convention."""
        self._check_fitted()
        return -self.inertia_
