"""Dataset loading and result writing.

Two input formats are supported: libsvm text (``label idx:val idx:val ...``
with 1-based feature indices, unlisted features zero) and plain CSV with one
point per row and an optional single header row. Clustering is unsupervised,
so libsvm labels are parsed for validation and discarded.
"""
from __future__ import annotations

import numpy as np

from .clustering import ClusteringResult
from .validation import normalize_dtype


def load_libsvm(path, n: int, d: int, dtype=np.float32) -> np.ndarray:
    """Read the first ``n`` points of a libsvm file into a dense n x d matrix."""
    dt = normalize_dtype(dtype)
    out = np.zeros((n, d), dtype=dt)
    read = 0
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            if read == n:
                break
            tokens = line.split()
            try:
                float(tokens[0])  # class label; discarded
            except ValueError:
                raise ValueError(f"{path}:{lineno}: malformed label {tokens[0]!r}") from None
            for token in tokens[1:]:
                try:
                    idx_text, val_text = token.split(":", 1)
                    idx = int(idx_text)
                    val = float(val_text)
                except ValueError:
                    raise ValueError(f"{path}:{lineno}: malformed feature token {token!r}") from None
                if not 1 <= idx <= d:
                    raise ValueError(f"{path}:{lineno}: feature index {idx} out of range [1, {d}]")
                out[read, idx - 1] = val
            read += 1
    if read < n:
        raise ValueError(f"{path}: expected {n} data lines, found {read}")
    return out


def load_csv(path, n: int, d: int, dtype=np.float32) -> np.ndarray:
    """Read an n x d CSV file; a single leading non-numeric header row is skipped."""
    dt = normalize_dtype(dtype)
    rows: list[list[float]] = []
    with open(path, "r", encoding="utf-8") as fh:
        lines = [(i, ln.strip()) for i, ln in enumerate(fh, start=1) if ln.strip()]
    if not lines:
        raise ValueError(f"{path}: file is empty")

    def parse(lineno: int, text: str) -> list[float]:
        cells = text.split(",")
        try:
            values = [float(c) for c in cells]
        except ValueError:
            raise ValueError(f"{path}:{lineno}: non-numeric cell in row {text!r}") from None
        if len(values) != d:
            raise ValueError(f"{path}:{lineno}: expected {d} columns, found {len(values)}")
        return values

    start = 0
    header_cells = lines[0][1].split(",")
    is_header = any(not _is_number(c) for c in header_cells)
    if is_header:
        start = 1
    for lineno, text in lines[start:]:
        rows.append(parse(lineno, text))
    if len(rows) != n:
        raise ValueError(f"{path}: expected {n} data rows, found {len(rows)}")
    return np.asarray(rows, dtype=dt)


def _is_number(text: str) -> bool:
    try:
        float(text)
        return True
    except ValueError:
        return False


def write_results(result: ClusteringResult, path) -> None:
    """Write one cluster index per line, plus a ``<path>.timings.csv`` sibling.

    The timings file has a ``phase,seconds`` header and one row for each of
    the three phases: kernel matrix construction, pairwise distances, and
    argmin plus cluster update.
    """
    path = str(path)
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write("".join(f"{int(label)}\n" for label in result.labels))
        t = result.timings
        with open(path + ".timings.csv", "w", encoding="utf-8") as fh:
            fh.write("phase,seconds\n")
            fh.write(f"kernel_matrix,{t.kernel_matrix_seconds:.9f}\n")
            fh.write(f"pairwise_distances,{t.pairwise_distances_seconds:.9f}\n")
            fh.write(f"argmin_update,{t.argmin_update_seconds:.9f}\n")
    except OSError as exc:
        raise OSError(f"failed to write results to {path!r}: {exc}") from exc
