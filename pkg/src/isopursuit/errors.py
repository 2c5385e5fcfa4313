"""Exception types shared across the package."""


class IsometryPursuitError(Exception):
    """Base class for all package-specific failures."""


class ZeroColumnError(IsometryPursuitError):
    """A column with zero 2-norm cannot be normalized or selected."""

    def __init__(self, column=None):
        self.column = column
        if column is None:
            super().__init__("zero vector cannot be normalized")
        else:
            super().__init__(f"column {column} has zero norm")


class RankDeficientError(IsometryPursuitError):
    """The design matrix does not have full row rank."""


class NotConvergedError(IsometryPursuitError):
    """The splitting solver hit its iteration cap above tolerance."""


class CombinatorialBlowupError(IsometryPursuitError):
    """Brute-force enumeration would exceed the evaluation cap."""

    def __init__(self, n_subsets, cap):
        self.n_subsets = n_subsets
        self.cap = cap
        super().__init__(
            f"brute search over {n_subsets} subsets exceeds cap {cap}"
        )


class SupportTooSmallError(IsometryPursuitError):
    """Stage-one support has fewer columns than the target subset size."""

    def __init__(self, support_size, needed):
        self.support_size = support_size
        self.needed = needed
        super().__init__(
            f"stage-one support has {support_size} columns, need {needed}"
        )


class StuckError(IsometryPursuitError):
    """Greedy search ran out of finite-loss candidates before finishing."""


class AllInfeasibleError(IsometryPursuitError):
    """Every candidate subset evaluated to +inf."""


class ConstantRowError(IsometryPursuitError):
    """A feature row with zero variance cannot be standardized."""

    def __init__(self, row):
        self.row = row
        super().__init__(f"row {row} is constant; cannot standardize")
