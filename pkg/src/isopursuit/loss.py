"""Spectral orthonormality loss and the row-sparsity penalty.

The ground-truth loss sums the symmetric length penalty over singular
values, so it is minimized (value D) exactly by orthonormal matrices, is
rotation invariant, and is unchanged by matrix inversion.  Rank-deficient
submatrices evaluate to +inf so subset searches can skip them without
special cases.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import RankDeficientError
from .normalization import g_scalar, normalize_matrix

# A singular value counts as zero when below this fraction of the largest.
RANK_TOL = 1e-10


@dataclass(frozen=True)
class DesignMatrix:
    """Validated D x P matrix of candidate column vectors (D <= P, full row rank)."""

    entries: np.ndarray

    def __post_init__(self):
        entries = np.asarray(self.entries, dtype=float)
        object.__setattr__(self, "entries", entries)
        if entries.ndim != 2:
            raise ValueError(f"expected a 2-d matrix, got shape {entries.shape}")
        d, p = entries.shape
        if d < 1 or p < d:
            raise ValueError(f"need 1 <= D <= P, got D={d}, P={p}")
        if not np.all(np.isfinite(entries)):
            raise ValueError("design matrix contains non-finite entries")
        svals = np.linalg.svd(entries, compute_uv=False)
        if svals[0] == 0.0 or svals[-1] <= RANK_TOL * svals[0]:
            raise RankDeficientError(
                f"design matrix has row rank < {d} "
                f"(smallest singular value {svals[-1]:.3e})"
            )

    @property
    def n_rows(self) -> int:
        return self.entries.shape[0]

    @property
    def n_cols(self) -> int:
        return self.entries.shape[1]


def as_matrix(X) -> np.ndarray:
    """Accept a DesignMatrix, NormalizedMatrix, or plain array-like."""
    return np.asarray(getattr(X, "entries", X), dtype=float)


def singular_values(M) -> np.ndarray:
    """Singular values of M in nonincreasing order, one per column.

    For a D x k input this has length k, zero-padded when k exceeds the
    row count.
    """
    M = as_matrix(M)
    svals = np.linalg.svd(M, compute_uv=False)
    k = M.shape[1]
    if svals.size < k:
        svals = np.concatenate([svals, np.zeros(k - svals.size)])
    return svals


def isometry_loss(M, c: float = 1.0) -> float:
    """Sum of g(sigma, c) over the singular values of M.

    At least D for a D-column square matrix, with equality exactly on
    orthonormal input.  Returns +inf when M is rank deficient relative to
    RANK_TOL, so rank-deficient candidates lose every argmin comparison.
    Rectangular D x k input with k < D is scored on its k singular values,
    which extends the square definition to greedy's partial subsets.
    """
    svals = singular_values(M)
    if svals.size == 0:
        raise ValueError("cannot score an empty matrix")
    if svals[0] == 0.0 or svals[-1] < RANK_TOL * svals[0]:
        return math.inf
    return float(sum(g_scalar(float(s), c) for s in svals))


def multitask_penalty(beta) -> float:
    """Sum over rows of Euclidean row norms (the ||.||_{1,2} penalty)."""
    beta = np.asarray(getattr(beta, "beta", beta), dtype=float)
    return float(np.linalg.norm(beta, axis=-1).sum())


def subset_penalty_loss(X, support, c: float = 1.0) -> float:
    """Row-norm penalty of the inverse of the normalized D-column submatrix.

    Equals ||(w(X, c)_{.S})^{-1}||_{1,2}; +inf when the submatrix is
    singular.  For D = 1 this reduces to g(|x|, c) on the single entry.
    """
    X = as_matrix(X)
    cols = list(support)
    d = X.shape[0]
    if len(cols) != d:
        raise ValueError(f"support size {len(cols)} != row count {d}")
    sub = normalize_matrix(X[:, cols], c).entries
    u, svals, vt = np.linalg.svd(sub)
    if svals[0] == 0.0 or svals[-1] < RANK_TOL * svals[0]:
        return math.inf
    inverse = (vt.T / svals) @ u.T
    return multitask_penalty(inverse)
