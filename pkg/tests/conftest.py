"""Shared fixtures and independent oracle implementations.

The oracles here deliberately avoid the library's own code paths: brute
force loops, densified sparse products, exhaustive searches. They are slow
and simple on purpose.
"""
import numpy as np
import pytest


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def brute_force_gram(P: np.ndarray) -> np.ndarray:
    """Triple-loop Gram product in double precision."""
    n, d = P.shape
    out = np.zeros((n, n), dtype=np.float64)
    for i in range(n):
        for j in range(n):
            acc = 0.0
            for l in range(d):
                acc += float(P[i, l]) * float(P[j, l])
            out[i, j] = acc
    return out


def brute_force_neg2_kvt(K: np.ndarray, V_dense: np.ndarray) -> np.ndarray:
    """Dense triple-loop -2 * K @ V.T."""
    n = K.shape[0]
    k = V_dense.shape[0]
    out = np.zeros((n, k), dtype=np.float64)
    for i in range(n):
        for j in range(k):
            acc = 0.0
            for l in range(n):
                acc += float(K[i, l]) * float(V_dense[j, l])
            out[i, j] = -2.0 * acc
    return out


def scalar_scan_argmin(M: np.ndarray) -> list:
    """Per-row linear scan keeping the first (lowest-index) minimum."""
    labels = []
    for row in M:
        best, best_j = float(row[0]), 0
        for j, v in enumerate(row[1:], start=1):
            if float(v) < best:
                best, best_j = float(v), j
        labels.append(best_j)
    return labels


def exhaustive_kmeans_partition(points_1d, k: int):
    """Enumerate every k-labeling of tiny 1-D data, return the optimal partition.

    Minimizes the classical K-means objective with mean centroids; the result
    is a frozenset of frozensets of point indices (label-permutation free).
    """
    pts = [float(x) for x in points_1d]
    n = len(pts)
    best_obj, best = float("inf"), None
    for code in range(k ** n):
        labels = []
        c = code
        for _ in range(n):
            labels.append(c % k)
            c //= k
        if len(set(labels)) != k:
            continue
        obj = 0.0
        for j in range(k):
            members = [pts[i] for i in range(n) if labels[i] == j]
            if not members:
                continue
            mu = sum(members) / len(members)
            obj += sum((x - mu) ** 2 for x in members)
        if obj < best_obj - 1e-12:
            best_obj = obj
            best = frozenset(
                frozenset(i for i in range(n) if labels[i] == j) for j in range(k)
            )
    return best, best_obj


def partition_of(labels) -> frozenset:
    labels = list(labels)
    return frozenset(
        frozenset(i for i, l in enumerate(labels) if l == j) for j in set(labels)
    )


@pytest.fixture
def rng():
    return make_rng(12345)
