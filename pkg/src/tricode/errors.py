"""Exception types shared across the package."""

from __future__ import annotations


class TriCodeError(Exception):
    """Base class for all library errors."""


class DimensionError(TriCodeError, ValueError):
    """Operands have incompatible lengths or shapes."""


class ParameterError(TriCodeError, ValueError):
    """An integer argument is out of its allowed range."""


class ValidationError(TriCodeError, ValueError):
    """A matrix or code does not have a required structural property."""


class RankError(ValidationError):
    """A matrix that must be full rank is rank deficient."""


class UndefinedDistanceError(TriCodeError, ValueError):
    """Minimum distance requested for a code with no nonzero codeword."""


class NoLogicalQubitsError(UndefinedDistanceError):
    """d_Z requested for a triorthogonal matrix without odd-weight rows."""


class UndefinedMetricError(TriCodeError, ValueError):
    """The distillation exponent is undefined for these parameters."""


class RecipeError(TriCodeError, ValueError):
    """A construction recipe is malformed."""


class BudgetExceededError(TriCodeError, RuntimeError):
    """An exhaustive enumeration would exceed the configured budget.

    ``upper_bound`` is the smallest weight seen in whatever part of the set
    was sampled before giving up. It is an upper bound on the true minimum
    and never a lower bound.
    """

    def __init__(self, needed: int, limit: int, upper_bound: int | None = None):
        self.needed = needed
        self.limit = limit
        self.upper_bound = upper_bound
        msg = f"enumeration of {needed} codewords exceeds limit {limit}"
        if upper_bound is not None:
            msg += f" (non-exact upper bound from sampled codewords: {upper_bound})"
        super().__init__(msg)
