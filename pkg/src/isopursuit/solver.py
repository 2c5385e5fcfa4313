"""Row-sparse basis pursuit with an exact linear constraint.

Solves

    minimize   ||beta||_{1,2}    over beta in R^{P x D}
    subject to A beta = Y

by operator splitting: the objective is carried by a copy z coupled to
beta through beta = z.  Each sweep alternates

    beta <- affine projection of (z - u) onto {A beta = Y}
    z    <- row-wise block soft-threshold of (beta + u), radius 1/rho
    u    <- u + beta - z

so beta is exactly feasible at every iteration while z has exactly zero
rows wherever the threshold bites.  The projection multiplier yields a
Lagrange dual matrix nu = rho (A A^T)^{-1} A u whose rescaled version
certifies a duality gap via weak duality.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import RankDeficientError
from .loss import RANK_TOL, as_matrix, multitask_penalty
from .normalization import normalize_matrix


@dataclass(frozen=True)
class SolverConfig:
    """Splitting-solver hyperparameters.

    rho is the coupling penalty; eps_abs/eps_rel scale the standard
    primal/dual stopping thresholds; support_threshold is the relative
    row-norm cutoff used when reading a support off a coefficient matrix.
    """

    rho: float = 1.0
    eps_abs: float = 1e-7
    eps_rel: float = 1e-7
    max_iter: int = 50000
    support_threshold: float = 1e-6
    certify: bool = True
    adaptive_rho: bool = False

    def __post_init__(self):
        if self.rho <= 0 or self.eps_abs <= 0 or self.eps_rel <= 0:
            raise ValueError("rho and tolerances must be positive")
        if self.max_iter < 1:
            raise ValueError("max_iter must be at least 1")
        if self.support_threshold < 0:
            raise ValueError("support_threshold must be nonnegative")


@dataclass(frozen=True)
class Coefficients:
    """Solution pair: a feasible iterate and the exactly row-sparse iterate.

    beta satisfies A beta = Y to machine precision (it is an affine
    projection); sparse is the proximal iterate whose rows are exactly
    zero off the support.  Supports are read from sparse when present.
    """

    beta: np.ndarray
    sparse: np.ndarray | None = None

    @property
    def from_sparse_iterate(self) -> bool:
        return self.sparse is not None

    @property
    def support_source(self) -> np.ndarray:
        return self.beta if self.sparse is None else self.sparse


@dataclass
class SolveDiagnostics:
    iterations: int
    primal_residual: float
    dual_residual: float
    constraint_residual: float
    objective: float
    converged: bool
    duality_gap: float | None = None
    dual: np.ndarray | None = field(default=None, repr=False)

    def to_dict(self) -> dict:
        """Scalar fields only, for JSON run records."""
        return {
            "iterations": self.iterations,
            "primal_residual": self.primal_residual,
            "dual_residual": self.dual_residual,
            "constraint_residual": self.constraint_residual,
            "objective": self.objective,
            "duality_gap": self.duality_gap,
            "converged": self.converged,
        }


def _block_soft_threshold(W: np.ndarray, radius: float) -> np.ndarray:
    """Shrink each row of W toward zero by `radius` in 2-norm, exactly zeroing short rows."""
    norms = np.linalg.norm(W, axis=1)
    with np.errstate(divide="ignore", invalid="ignore"):
        scale = np.where(norms > radius, 1.0 - radius / norms, 0.0)
    return W * scale[:, None]


def _check_full_row_rank(A: np.ndarray) -> None:
    d, p = A.shape
    svals = np.linalg.svd(A, compute_uv=False)
    if p < d or svals[0] == 0.0 or svals[-1] <= RANK_TOL * svals[0]:
        raise RankDeficientError(
            f"constraint matrix is not full row rank (D={d}, P={p}, "
            f"smallest singular value {svals[-1]:.3e})"
        )


def solve_mbp(A, Y, config: SolverConfig | None = None):
    """Minimize ||beta||_{1,2} subject to A beta = Y.

    A is D x P with full row rank, Y is D x D (any right-hand side is
    accepted, not only the identity).  Returns (Coefficients,
    SolveDiagnostics); when the iteration cap is reached the best iterate
    is still returned, with converged=False in the diagnostics.
    """
    cfg = config or SolverConfig()
    A = as_matrix(A)
    Y = np.asarray(Y, dtype=float)
    if A.ndim != 2:
        raise ValueError(f"expected 2-d constraint matrix, got shape {A.shape}")
    d, p = A.shape
    if Y.shape != (d, d):
        raise ValueError(f"right-hand side must be {d}x{d}, got {Y.shape}")
    if not (np.all(np.isfinite(A)) and np.all(np.isfinite(Y))):
        raise ValueError("solver inputs must be finite")
    _check_full_row_rank(A)

    gram_inv = np.linalg.inv(A @ A.T)
    pinv = A.T @ gram_inv  # P x D, projection operator onto {A beta = Y}

    rho = cfg.rho
    z = np.zeros((p, d))
    u = np.zeros((p, d))
    beta = np.zeros((p, d))
    scale_floor = math.sqrt(p * d) * cfg.eps_abs
    r_norm = s_norm = math.inf
    converged = False
    iterations = 0

    for iterations in range(1, cfg.max_iter + 1):
        v = z - u
        beta = v - pinv @ (A @ v - Y)
        z_prev = z
        z = _block_soft_threshold(beta + u, 1.0 / rho)
        u = u + beta - z

        r_norm = float(np.linalg.norm(beta - z))
        s_norm = rho * float(np.linalg.norm(z - z_prev))
        eps_pri = scale_floor + cfg.eps_rel * max(
            float(np.linalg.norm(beta)), float(np.linalg.norm(z))
        )
        eps_dual = scale_floor + cfg.eps_rel * rho * float(np.linalg.norm(u))
        if r_norm <= eps_pri and s_norm <= eps_dual:
            converged = True
            break

        if cfg.adaptive_rho:
            # ratio-based x2 / /2 update; u is rescaled to keep rho*u fixed
            if r_norm > 10.0 * s_norm:
                rho *= 2.0
                u /= 2.0
            elif s_norm > 10.0 * r_norm:
                rho /= 2.0
                u *= 2.0

    nu = rho * gram_inv @ (A @ u)
    objective = multitask_penalty(beta)
    constraint_residual = float(np.linalg.norm(A @ beta - Y))

    gap = None
    if cfg.certify:
        gap = certify_optimality(A, beta, nu, Y)

    coeffs = Coefficients(beta=beta, sparse=z)
    diagnostics = SolveDiagnostics(
        iterations=iterations,
        primal_residual=r_norm,
        dual_residual=s_norm,
        constraint_residual=constraint_residual,
        objective=objective,
        converged=converged,
        duality_gap=gap,
        dual=nu,
    )
    return coeffs, diagnostics


def certify_optimality(A, beta, nu, Y=None) -> float:
    """Duality gap ||beta||_{1,2} - <nu_feas, Y> from a candidate dual nu.

    nu is rescaled by max(1, max_p ||(A^T nu)_{p.}||) so <nu_feas, Y> is a
    valid lower bound on the optimum; the gap is nonnegative up to
    round-off for any feasible beta.  Y defaults to A beta.
    """
    A = as_matrix(A)
    beta_arr = beta.beta if isinstance(beta, Coefficients) else np.asarray(beta, float)
    if Y is None:
        Y = A @ beta_arr
    row_norms = np.linalg.norm(A.T @ nu, axis=1)
    scale = max(1.0, float(row_norms.max()))
    lower_bound = float(np.tensordot(nu / scale, Y, axes=2))
    return multitask_penalty(beta_arr) - lower_bound


def extract_support(beta, tau: float = 1e-6) -> tuple[int, ...]:
    """Indices of rows whose norm exceeds tau times the largest row norm.

    On an exactly sparse iterate any tau >= 0 recovers the same support;
    tau guards against solvers that only push dropped rows near zero.
    An all-zero matrix yields the empty support.
    """
    if tau < 0:
        raise ValueError("tau must be nonnegative")
    rows = beta.support_source if isinstance(beta, Coefficients) else np.asarray(beta, float)
    norms = np.linalg.norm(rows, axis=1)
    top = float(norms.max()) if norms.size else 0.0
    return tuple(int(i) for i in np.flatnonzero(norms > tau * top))


def isometry_pursuit(X, c: float = 1.0, config: SolverConfig | None = None):
    """Normalize columns, then basis-pursue the identity.

    Returns (Coefficients, support, SolveDiagnostics) where the support
    holds the candidate columns surviving the convex stage.
    """
    cfg = config or SolverConfig()
    X = as_matrix(X)
    normalized = normalize_matrix(X, c)
    coeffs, diagnostics = solve_mbp(normalized.entries, np.eye(X.shape[0]), cfg)
    support = extract_support(coeffs, cfg.support_threshold)
    return coeffs, support, diagnostics
