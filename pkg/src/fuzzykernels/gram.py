"""Gram matrices over fuzzy datasets: computation, PSD verification, normalization."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import NumericError
from .kernels import FuzzyKernelSpec, Record, evaluate

__all__ = [
    "GramMatrix",
    "PsdReport",
    "compute_gram",
    "check_psd",
    "normalize",
    "write_matrix",
    "read_matrix",
]

DEFAULT_PSD_TOL = 1e-8


@dataclass
class GramMatrix:
    """Symmetric matrix of pairwise kernel values with provenance metadata."""

    values: np.ndarray
    spec: FuzzyKernelSpec | None
    item_ids: list[str]

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        if v.ndim != 2 or v.shape[0] != v.shape[1]:
            raise ValueError(f"Gram matrix must be square, got shape {v.shape}")
        if len(self.item_ids) != v.shape[0]:
            raise ValueError("item_ids length must match matrix size")
        self.values = v

    @property
    def size(self) -> int:
        return self.values.shape[0]


@dataclass
class PsdReport:
    min_eigenvalue: float
    max_eigenvalue: float
    verdict: str  # "PSD" | "indefinite"
    tolerance: float
    eigenvalues: np.ndarray


def compute_gram(
    data: Sequence[Record],
    spec: FuzzyKernelSpec,
    item_ids: Sequence[str] | None = None,
    n_jobs: int = 1,
) -> GramMatrix:
    """Pairwise kernel matrix over a dataset.

    Only the upper triangle is evaluated; the lower triangle is mirrored, so
    the result is exactly symmetric.  With ``n_jobs > 1`` unordered pairs are
    evaluated on a thread pool; every pair lands in its own slot, so the
    matrix is bit-identical to the sequential one regardless of scheduling.
    """
    n = len(data)
    if n == 0:
        raise ValueError("cannot compute a Gram matrix over an empty dataset")
    ids = [str(i) for i in range(n)] if item_ids is None else [str(s) for s in item_ids]
    if len(ids) != n:
        raise ValueError("need exactly one item id per datum")
    values = np.zeros((n, n))
    pairs = [(i, j) for i in range(n) for j in range(i, n)]

    def entry(pair):
        i, j = pair
        try:
            return i, j, evaluate(spec, data[i], data[j])
        except Exception as exc:
            raise type(exc)(f"kernel evaluation failed for pair ({ids[i]}, {ids[j]}): {exc}") from exc

    if n_jobs > 1:
        with ThreadPoolExecutor(max_workers=n_jobs) as pool:
            results = list(pool.map(entry, pairs))
    else:
        results = [entry(p) for p in pairs]
    for i, j, v in results:
        values[i, j] = v
        values[j, i] = v
    return GramMatrix(values=values, spec=spec, item_ids=ids)


def _as_matrix(g) -> np.ndarray:
    return g.values if isinstance(g, GramMatrix) else np.asarray(g, dtype=float)


def check_psd(g, tol: float = DEFAULT_PSD_TOL) -> PsdReport:
    """Full symmetric eigendecomposition with a relative PSD verdict.

    The matrix passes when ``min_eig >= -tol * max(1, |max_eig|)``; the full
    spectrum is returned so indefinite kernels can be inspected, not just
    flagged.
    """
    if not tol > 0:
        raise ValueError("tolerance must be > 0")
    m = _as_matrix(g)
    if not np.isfinite(m).all():
        raise NumericError("Gram matrix contains non-finite entries")
    eigs = np.linalg.eigvalsh(m)
    lo = float(eigs[0])
    hi = float(eigs[-1])
    verdict = "PSD" if lo >= -tol * max(1.0, abs(hi)) else "indefinite"
    return PsdReport(
        min_eigenvalue=lo,
        max_eigenvalue=hi,
        verdict=verdict,
        tolerance=tol,
        eigenvalues=eigs,
    )


def normalize(g: GramMatrix) -> GramMatrix:
    """Cosine normalization ``k(x,y) / sqrt(k(x,x) k(y,y))``.

    Produces a unit diagonal and preserves the PSD verdict (congruence by a
    positive diagonal matrix).  Idempotent: normalizing twice changes nothing.
    """
    m = _as_matrix(g)
    diag = np.diag(m).copy()
    if (diag <= 0).any():
        raise ValueError("normalization needs strictly positive diagonal entries")
    inv = 1.0 / np.sqrt(diag)
    values = m * np.outer(inv, inv)
    # k(x,x)/k(x,x) is 1 by definition; set it exactly so the operation is
    # idempotent at the bit level
    np.fill_diagonal(values, 1.0)
    ids = g.item_ids if isinstance(g, GramMatrix) else [str(i) for i in range(m.shape[0])]
    spec = g.spec if isinstance(g, GramMatrix) else None
    return GramMatrix(values=values, spec=spec, item_ids=list(ids))


def write_matrix(path, g) -> None:
    """Dense matrix file: first line n, then n whitespace-separated rows
    of decimal floats with 17 significant digits."""
    m = _as_matrix(g)
    n = m.shape[0]
    with open(path, "w") as fh:
        fh.write(f"{n}\n")
        for row in m:
            fh.write(" ".join(format(v, ".17g") for v in row) + "\n")


def read_matrix(path) -> np.ndarray:
    with open(path) as fh:
        header = fh.readline()
        try:
            n = int(header.strip())
        except ValueError as exc:
            raise ValueError(f"bad matrix file header {header!r}") from exc
        rows = []
        for k in range(n):
            parts = fh.readline().split()
            if len(parts) != n:
                raise ValueError(f"matrix row {k} has {len(parts)} entries, expected {n}")
            rows.append([float(p) for p in parts])
    return np.array(rows)
