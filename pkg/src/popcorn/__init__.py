"""Kernel K-means via sparse linear algebra.

The kernel matrix is built once with dense matrix products; every clustering
iteration is then a sparse-dense multiply and a sparse matrix-vector product
over a CSR selection matrix, plus a row-wise argmin. A naive kernel-trick
driver and a classical Lloyd driver serve as independent oracles, and the
analysis module provides arithmetic-intensity models for the two expensive
stages.
"""
from .analysis import (IntensityReport, augmented_distance_oracle,
                       default_kernel_cost, intensity_distances,
                       intensity_kernel_matrix)
from .clustering import (ClusteringResult, KKMeansConfig, TimingBreakdown,
                         compute_objective, init_assignments,
                         repair_empty_clusters, run_baseline, run_lloyd,
                         run_popcorn)
from .dense import diag, gemm_gram, map_elementwise, row_argmin, syrk_gram
from .estimator import KernelKMeans
from .io import load_csv, load_libsvm, write_results
from .kernels import (GramMethod, KernelSpec, apply_kernel, compute_gram,
                      kernel_eval, kernel_matrix_between,
                      select_gram_algorithm)
from .sparse import CsrMatrix, build_selection_matrix, spmm_neg2_kvt, spmv_scaled

__version__ = "0.1.0"

__all__ = [
    "CsrMatrix",
    "ClusteringResult",
    "GramMethod",
    "IntensityReport",
    "KKMeansConfig",
    "KernelKMeans",
    "KernelSpec",
    "TimingBreakdown",
    "apply_kernel",
    "augmented_distance_oracle",
    "build_selection_matrix",
    "compute_gram",
    "compute_objective",
    "default_kernel_cost",
    "diag",
    "gemm_gram",
    "init_assignments",
    "intensity_distances",
    "intensity_kernel_matrix",
    "kernel_eval",
    "kernel_matrix_between",
    "load_csv",
    "load_libsvm",
    "map_elementwise",
    "repair_empty_clusters",
    "row_argmin",
    "run_baseline",
    "run_lloyd",
    "run_popcorn",
    "select_gram_algorithm",
    "spmm_neg2_kvt",
    "spmv_scaled",
    "syrk_gram",
    "write_results",
]
