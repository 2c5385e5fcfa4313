"""Subset selection over columns: brute force, greedy, and two-stage.

Brute force enumerates every D-subset (guarded by an evaluation cap),
greedy grows the subset one column at a time, and the two-stage method
prunes with the convex pursuit before brute-forcing the survivors.  Ties
always resolve to the lexicographically smallest subset so results are
reproducible.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    AllInfeasibleError,
    CombinatorialBlowupError,
    StuckError,
    SupportTooSmallError,
)
from .loss import as_matrix, isometry_loss, subset_penalty_loss
from .solver import SolveDiagnostics, SolverConfig, isometry_pursuit

# Beyond this many subset evaluations brute_search refuses to run.
DEFAULT_CAP = 2_000_000


@dataclass(frozen=True)
class Objective:
    """Subset objective: spectral loss ("isometry") or inverse row-norm penalty ("penalty")."""

    kind: str
    c: float = 1.0

    def __post_init__(self):
        if self.kind not in ("isometry", "penalty"):
            raise ValueError(f"unknown objective kind {self.kind!r}")
        if not self.c > 0:
            raise ValueError("objective exponent c must be positive")

    def evaluate(self, X: np.ndarray, cols) -> float:
        if self.kind == "isometry":
            return isometry_loss(X[:, list(cols)], self.c)
        return subset_penalty_loss(X, cols, self.c)


@dataclass(frozen=True)
class SelectionOutcome:
    support: tuple[int, ...]
    objective_value: float
    method: str
    evaluations: int
    intermediate_support: tuple[int, ...] | None = None
    diagnostics: SolveDiagnostics | None = None


def brute_search(X, objective: Objective, cap: int = DEFAULT_CAP) -> SelectionOutcome:
    """Exhaustive minimum of the objective over all D-subsets of columns.

    Enumeration follows standard combinations order, and the first
    minimizer found wins, so ties break to the lexicographically smallest
    index tuple.
    """
    X = as_matrix(X)
    d, p = X.shape
    if d > p:
        raise ValueError(f"cannot choose {d} columns from {p}")
    n_subsets = math.comb(p, d)
    if n_subsets > cap:
        raise CombinatorialBlowupError(n_subsets, cap)

    best_value = math.inf
    best_support = None
    evaluations = 0
    for subset in itertools.combinations(range(p), d):
        value = objective.evaluate(X, subset)
        evaluations += 1
        if value < best_value:
            best_value = value
            best_support = subset
    if best_support is None:
        raise AllInfeasibleError("every subset evaluated to +inf")
    return SelectionOutcome(
        support=best_support,
        objective_value=best_value,
        method="brute",
        evaluations=evaluations,
    )


def greedy_search(X, objective: Objective) -> SelectionOutcome:
    """Grow the subset one column at a time, locally minimizing the loss.

    Candidates scoring +inf are skipped; if nothing finite remains before
    the subset is complete the search is stuck.  Only the spectral
    objective extends to partial subsets, so the penalty objective is
    rejected.
    """
    if objective.kind == "penalty":
        raise ValueError(
            "the subset penalty is undefined on partial supports; "
            "greedy search requires the isometry objective"
        )
    X = as_matrix(X)
    d, p = X.shape
    if d > p:
        raise ValueError(f"cannot choose {d} columns from {p}")

    selected: list[int] = []
    evaluations = 0
    value = math.inf
    for _ in range(d):
        best_value = math.inf
        best_col = None
        for col in range(p):
            if col in selected:
                continue
            candidate = objective.evaluate(X, selected + [col])
            evaluations += 1
            if candidate < best_value:
                best_value = candidate
                best_col = col
        if best_col is None:
            raise StuckError(
                f"no finite-loss candidate at size {len(selected)}; "
                f"selected so far: {selected}"
            )
        selected.append(best_col)
        value = best_value
    return SelectionOutcome(
        support=tuple(sorted(selected)),
        objective_value=value,
        method="greedy",
        evaluations=evaluations,
    )


def two_stage_isometry_pursuit(
    X,
    c: float = 1.0,
    solver_config: SolverConfig | None = None,
    second_stage: Objective | None = None,
    cap: int = DEFAULT_CAP,
) -> SelectionOutcome:
    """Convex pruning followed by brute search over the surviving columns.

    Stage one runs the pursuit and keeps its support; stage two
    brute-forces D columns out of it, by default under the spectral loss
    (the penalty objective is available for comparing against brute
    penalty minimization).  Returned indices refer to the original
    columns.
    """
    X = as_matrix(X)
    d = X.shape[0]
    _, stage_one, diagnostics = isometry_pursuit(X, c, solver_config)
    if len(stage_one) < d:
        raise SupportTooSmallError(len(stage_one), d)
    objective = second_stage if second_stage is not None else Objective("isometry", c)
    inner = brute_search(X[:, list(stage_one)], objective, cap)
    support = tuple(stage_one[j] for j in inner.support)
    return SelectionOutcome(
        support=support,
        objective_value=inner.objective_value,
        method="two-stage",
        evaluations=inner.evaluations,
        intermediate_support=stage_one,
        diagnostics=diagnostics,
    )
