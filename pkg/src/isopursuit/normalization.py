"""Symmetric length normalization of candidate column vectors.

Each column is rescaled, direction preserved, so that its new length lies
in (0, 1] and equals 1 exactly when the original length was 1.  The length
map is invariant under swapping a norm with its reciprocal, so vectors of
length t and 1/t come out equally long.  This is the preprocessing step
that lets a row-sparse basis pursuit prefer near-orthonormal submatrices.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ZeroColumnError

# exp() overflows just past 709; beyond this exponent the length penalty is
# reported as +inf and the normalized length underflows toward 0 instead of
# going NaN, keeping downstream argmin comparisons well defined.
_EXP_OVERFLOW = 700.0


@dataclass(frozen=True)
class NormalizedMatrix:
    """Column-normalized matrix plus the original column 2-norms."""

    entries: np.ndarray
    source_norms: np.ndarray


def _check_exponent(c: float) -> None:
    if not c > 0:
        raise ValueError(f"scaling exponent c must be positive, got {c}")


def _symmetric_powers(t: float, c: float) -> tuple[float, float] | None:
    """Return (t^c, t^-c) or None when either power overflows a float."""
    try:
        return t**c, t ** (-c)
    except OverflowError:
        return None


def g_scalar(t: float, c: float = 1.0) -> float:
    """Length penalty (e^(t^c) + e^(t^-c)) / (2e).

    Attains its minimum value 1 exactly at t = 1, is symmetric under
    t <-> 1/t, and returns +inf once t^c or t^-c exceeds exp()'s range.
    """
    _check_exponent(c)
    if not t > 0:
        raise ValueError(f"length must be positive, got {t}")
    powers = _symmetric_powers(t, c)
    if powers is None:
        return math.inf
    a, b = powers
    if max(a, b) > _EXP_OVERFLOW:
        return math.inf
    return (math.exp(a) + math.exp(b)) / (2.0 * math.e)


def normalized_length(t: float, c: float = 1.0) -> float:
    """Post-normalization length 2e / (e^(t^c) + e^(t^-c)) in (0, 1].

    Reciprocal of :func:`g_scalar`; equals 1 iff t = 1 and decays to 0 as
    |log t| grows.  Huge inputs underflow gracefully to (sub)normal values
    and eventually exactly 0 rather than raising.
    """
    _check_exponent(c)
    if not t > 0:
        raise ValueError(f"length must be positive, got {t}")
    powers = _symmetric_powers(t, c)
    if powers is None:
        return 0.0
    a, b = powers
    if a < b:
        a, b = b, a
    if a > _EXP_OVERFLOW:
        # 2e^(1-a) / (1 + e^(b-a)) avoids overflowing e^a
        return 2.0 * math.exp(1.0 - a) / (1.0 + math.exp(b - a))
    return (2.0 * math.e) / (math.exp(a) + math.exp(b))


def normalize_vector(v: np.ndarray, c: float = 1.0) -> np.ndarray:
    """Rescale v to length normalized_length(||v||, c), keeping direction."""
    v = np.asarray(v, dtype=float)
    norm = float(np.linalg.norm(v))
    if norm == 0.0:
        raise ZeroColumnError()
    return (normalized_length(norm, c) / norm) * v


def normalize_matrix(X, c: float = 1.0) -> NormalizedMatrix:
    """Apply :func:`normalize_vector` column by column.

    Raises ZeroColumnError naming the first offending column; zero columns
    indicate an upstream data problem and are never silently dropped.
    """
    _check_exponent(c)
    X = np.asarray(getattr(X, "entries", X), dtype=float)
    if X.ndim != 2:
        raise ValueError(f"expected a 2-d matrix, got shape {X.shape}")
    norms = np.linalg.norm(X, axis=0)
    zero = np.flatnonzero(norms == 0.0)
    if zero.size:
        raise ZeroColumnError(int(zero[0]))
    scale = np.array([normalized_length(t, c) for t in norms]) / norms
    return NormalizedMatrix(entries=X * scale, source_norms=norms)
