"""Construction, search and evaluation of binary triorthogonal matrices."""

from .codeparams import CodeParams, exact_dz, gamma, params
from .errors import (
    BudgetExceededError,
    DimensionError,
    ParameterError,
    RankError,
    TriCodeError,
    ValidationError,
)
from .gf2core import BitMatrix, BitVector, LinearCode, dual, min_weight, rank, rref
from .triortho import TriMatrix, TriSpace, check_trimatrix, check_trispace, partition_rows

__version__ = "0.1.0"
