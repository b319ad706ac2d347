"""Command-line interface.

Runs one or more seeded clusterings over a dataset loaded from libsvm/CSV
(or synthesized uniformly in [0, 1) when no input file is given) and prints
a versioned, plot-friendly report: per run, the iteration count, the final
objective, and the three phase timings.
"""
from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass

import numpy as np

from .clustering import KKMeansConfig, run_baseline, run_popcorn
from .io import load_csv, load_libsvm, write_results
from .kernels import KERNEL_FAMILIES, KernelSpec
from .validation import normalize_dtype

REPORT_HEADER = "# popcorn-report v1"
REPORT_COLUMNS = ("run,seed,impl,n,d,k,kernel,iterations,converged,objective,"
                  "kernel_matrix_s,pairwise_distances_s,argmin_update_s")

IMPL_BASELINE = 0
IMPL_POPCORN = 2
_IMPL_NAMES = {IMPL_BASELINE: "baseline", IMPL_POPCORN: "popcorn"}


@dataclass
class RunSpec:
    n: int
    d: int
    k: int
    runs: int = 1
    tol: float = 0.0
    max_iters: int = 30
    check_convergence: bool = False
    init: str = "random"
    kernel_name: str = "polynomial"
    input_path: str | None = None
    seed: int = 0
    impl_select: int = IMPL_POPCORN
    output_path: str | None = None
    dtype_name: str = "f32"


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="popcorn",
        description="Kernel K-means via sparse linear algebra.",
    )
    parser.add_argument("-n", type=int, required=True, help="number of data points")
    parser.add_argument("-d", type=int, required=True, help="dimensionality of the dataset")
    parser.add_argument("-k", type=int, required=True, help="number of clusters")
    parser.add_argument("--runs", type=int, default=1, help="number of clustering runs (seeds step by 1)")
    parser.add_argument("-t", type=float, default=0.0, help="convergence tolerance (fraction of points changing cluster)")
    parser.add_argument("-m", type=int, default=30, help="maximum number of iterations")
    parser.add_argument("-c", type=int, choices=(0, 1), default=0,
                        help="1 checks for convergence, 0 always runs -m iterations")
    parser.add_argument("--init", choices=("random",), default="random", help="label initialization method")
    parser.add_argument("-f", choices=KERNEL_FAMILIES, default="polynomial", help="kernel function")
    parser.add_argument("-i", metavar="PATH", default=None,
                        help="input file (libsvm or CSV); omit to synthesize a random dataset")
    parser.add_argument("-s", type=int, default=0, help="RNG seed")
    parser.add_argument("-l", type=int, choices=(IMPL_BASELINE, IMPL_POPCORN), default=IMPL_POPCORN,
                        help="implementation: 0 = naive baseline, 2 = sparse matrix-centric")
    parser.add_argument("-o", metavar="PATH", default=None, help="write cluster labels (and timings) to a file")
    parser.add_argument("--dtype", choices=("f32", "f64"), default="f32", help="floating-point precision")
    return parser


def parse_args(argv) -> RunSpec:
    """Parse command-line flags into a RunSpec; exits with status 2 on bad flags."""
    ns = _build_parser().parse_args(list(argv))
    return RunSpec(
        n=ns.n, d=ns.d, k=ns.k,
        runs=ns.runs, tol=ns.t, max_iters=ns.m,
        check_convergence=bool(ns.c), init=ns.init,
        kernel_name=ns.f, input_path=ns.i, seed=ns.s,
        impl_select=ns.l, output_path=ns.o, dtype_name=ns.dtype,
    )


def render_args(spec: RunSpec) -> list[str]:
    """Inverse of parse_args: a flag list that parses back to ``spec``."""
    argv = [
        "-n", str(spec.n), "-d", str(spec.d), "-k", str(spec.k),
        "--runs", str(spec.runs), "-t", repr(spec.tol), "-m", str(spec.max_iters),
        "-c", "1" if spec.check_convergence else "0",
        "--init", spec.init, "-f", spec.kernel_name,
        "-s", str(spec.seed), "-l", str(spec.impl_select),
        "--dtype", spec.dtype_name,
    ]
    if spec.input_path is not None:
        argv += ["-i", spec.input_path]
    if spec.output_path is not None:
        argv += ["-o", spec.output_path]
    return argv


def synthesize_points(n: int, d: int, seed: int, dtype=np.float32) -> np.ndarray:
    """Uniform [0, 1) dataset from a seeded PCG64 stream."""
    rng = np.random.Generator(np.random.PCG64(seed))
    return rng.random((n, d)).astype(normalize_dtype(dtype))


def _load_points(spec: RunSpec, dtype) -> np.ndarray:
    if spec.input_path is None:
        return synthesize_points(spec.n, spec.d, spec.seed, dtype)
    with open(spec.input_path, "r", encoding="utf-8") as fh:
        first = ""
        for line in fh:
            if line.strip():
                first = line.strip()
                break
    # libsvm rows carry idx:val tokens; CSV rows do not
    if ":" in first:
        return load_libsvm(spec.input_path, spec.n, spec.d, dtype)
    return load_csv(spec.input_path, spec.n, spec.d, dtype)


def _output_path_for_run(base: str, run_index: int) -> str:
    return base if run_index == 0 else f"{base}.run{run_index}"


def run_main(spec: RunSpec, out=None) -> int:
    """Execute ``spec.runs`` clusterings and print the report; 0 on success."""
    out = out if out is not None else sys.stdout
    try:
        if spec.init != "random":
            raise ValueError(f"unsupported init method {spec.init!r}")
        if spec.impl_select not in _IMPL_NAMES:
            raise ValueError(f"unsupported implementation selector {spec.impl_select}")
        dtype = normalize_dtype(spec.dtype_name)
        points = _load_points(spec, dtype)
        if points.shape != (spec.n, spec.d):
            raise ValueError(f"dataset shape {points.shape} does not match -n {spec.n} -d {spec.d}")
        driver = run_baseline if spec.impl_select == IMPL_BASELINE else run_popcorn
        impl = _IMPL_NAMES[spec.impl_select]

        print(REPORT_HEADER, file=out)
        print(REPORT_COLUMNS, file=out)
        for r in range(spec.runs):
            seed = spec.seed + r
            cfg = KKMeansConfig(
                k=spec.k, max_iters=spec.max_iters, tol=spec.tol,
                check_convergence=spec.check_convergence, seed=seed,
                kernel=KernelSpec(family=spec.kernel_name), dtype=dtype,
            )
            result = driver(points, cfg)
            t = result.timings
            print(f"{r},{seed},{impl},{spec.n},{spec.d},{spec.k},{spec.kernel_name},"
                  f"{result.iterations_run},{int(result.converged)},"
                  f"{result.objective_history[-1]:.9e},"
                  f"{t.kernel_matrix_seconds:.6f},{t.pairwise_distances_seconds:.6f},"
                  f"{t.argmin_update_seconds:.6f}", file=out)
            if spec.output_path is not None:
                write_results(result, _output_path_for_run(spec.output_path, r))
        return 0
    except Exception as exc:
        print(f"popcorn: error: {exc}", file=sys.stderr)
        return 1


def main(argv=None) -> None:
    spec = parse_args(sys.argv[1:] if argv is None else argv)
    sys.exit(run_main(spec))


if __name__ == "__main__":
    main()
