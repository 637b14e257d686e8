"""Triorthogonal matrices and triorthogonal spaces."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .errors import ParameterError, RankError, ValidationError
import random

from .gf2core import BitMatrix, BitVector, LinearCode, rank, rref, solve_affine


@dataclass(frozen=True)
class TriCheck:
    """Outcome of :func:`check_trimatrix`.

    ``first_violation`` holds 0-based row indices: a pair if some pair
    overlap is odd, else a triple if some triple overlap is odd.
    """

    pairwise_ok: bool
    triple_ok: bool
    first_violation: tuple[int, ...] | None = None

    @property
    def ok(self) -> bool:
        return self.pairwise_ok and self.triple_ok

    def __bool__(self) -> bool:
        return self.ok


def _odd(x: int) -> bool:
    return x.bit_count() & 1 == 1


def _first_odd_triple(rows: tuple[int, ...]) -> tuple[int, int, int] | None:
    for a, b in combinations(range(len(rows)), 2):
        ab = rows[a] & rows[b]
        if not ab:
            continue
        for c in range(b + 1, len(rows)):
            if _odd(ab & rows[c]):
                return a, b, c
    return None


def check_trimatrix(m: BitMatrix) -> TriCheck:
    """Check every pair and every triple of distinct rows for even overlap."""
    rows = m.rows
    bad_pair = next(
        ((a, b) for a, b in combinations(range(len(rows)), 2) if _odd(rows[a] & rows[b])),
        None,
    )
    bad_triple = _first_odd_triple(rows)
    return TriCheck(
        pairwise_ok=bad_pair is None,
        triple_ok=bad_triple is None,
        first_violation=bad_pair or bad_triple,
    )


def is_trimatrix(m: BitMatrix) -> bool:
    return check_trimatrix(m).ok


@dataclass(frozen=True)
class TriMatrix:
    """A full-rank triorthogonal matrix with its odd/even row split.

    ``stacked`` lists the odd rows (``G1``) above the even rows (``G0``), each
    block keeping the original relative order. ``source_columns`` optionally
    records which columns of some parent matrix the columns came from.
    """

    matrix: BitMatrix
    odd_rows: BitMatrix
    even_rows: BitMatrix
    odd_indices: tuple[int, ...]
    source_columns: tuple[int, ...] | None = field(default=None, compare=False)

    @property
    def k(self) -> int:
        return self.odd_rows.nrows

    @property
    def n(self) -> int:
        return self.matrix.ncols

    @property
    def m(self) -> int:
        return self.matrix.nrows

    @property
    def stacked(self) -> BitMatrix:
        return self.odd_rows.vstack(self.even_rows)


def partition_rows(m: BitMatrix, source_columns: tuple[int, ...] | None = None) -> TriMatrix:
    """Validate ``m`` and split it into odd-weight and even-weight rows."""
    report = check_trimatrix(m)
    if not report.ok:
        raise ValidationError(f"not triorthogonal: rows {report.first_violation} fail")
    r = rank(m)
    if r != m.nrows:
        raise RankError(f"rank {r} < {m.nrows} rows")
    odd = tuple(i for i, w in enumerate(m.row_weights()) if w & 1)
    even = tuple(i for i in range(m.nrows) if i not in set(odd))
    return TriMatrix(m, m.select_rows(odd), m.select_rows(even), odd, source_columns)


def as_matrix(g: BitMatrix | TriMatrix) -> BitMatrix:
    return g.matrix if isinstance(g, TriMatrix) else g


def check_trispace(c: LinearCode) -> bool:
    """Whether every triple of codewords has even overlap.

    Checking basis triples ``i <= j <= l`` suffices; the repeated-index cases
    cover even pair overlaps and even weights.
    """
    rows = c.basis.rows
    for i, a in enumerate(rows):
        if _odd(a):
            return False
        for j in range(i, len(rows)):
            ab = a & rows[j]
            if _odd(ab):
                return False
            for l in range(j, len(rows)):
                if _odd(ab & rows[l]):
                    return False
    return True


@dataclass(frozen=True)
class TriSpace:
    """A linear code in which every triple of codewords has even overlap."""

    code: LinearCode

    def __post_init__(self):
        if not check_trispace(self.code):
            raise ValidationError("code is not a triorthogonal space")

    @property
    def unital(self) -> bool:
        return ((1 << self.code.length) - 1) in self.code


def space_to_trimatrix(c: LinearCode, k: int) -> TriMatrix:
    """Turn a triorthogonal space into a triorthogonal matrix with odd rows.

    With the RREF basis written as ``[I_k O P1 ; O I_{r-k} P0]`` on its pivot
    columns, the first ``k`` pivot columns are deleted, leaving
    ``[O P1 ; I_{r-k} P0]`` on ``length - k`` columns. Remaining columns keep
    their original order, recorded in ``source_columns``. The result is
    validated rather than trusted; its ``k`` is the actual odd-row count.
    """
    if not 1 <= k <= c.dim:
        raise ParameterError(f"k={k} outside 1..{c.dim}")
    if not check_trispace(c):
        raise ValidationError("code is not a triorthogonal space")
    reduced, pivots = rref(c.basis)
    drop = set(pivots[:k])
    kept = tuple(j for j in range(c.length) if j not in drop)
    return partition_rows(reduced.select_columns(kept), source_columns=kept)


def random_trimatrix(n: int, odd: int, even: int, rng: random.Random, tries: int = 32) -> BitMatrix:
    """Random full-rank triorthogonal matrix with up to ``odd`` odd and ``even`` even rows.

    Each new row solves the linear conditions of even overlap with every
    row and every pair of rows so far, plus a weight-parity condition. Rows
    that cannot be placed are skipped, so the result may be smaller than
    asked for. Rows appear in random order.
    """
    if n < 1 or odd < 0 or even < 0:
        raise ParameterError("need n >= 1 and nonnegative row counts")
    ones = (1 << n) - 1
    rows: list[int] = []
    parities = [1] * odd + [0] * even
    rng.shuffle(parities)
    for parity in parities:
        cons = list(rows) + [a & b for a, b in combinations(rows, 2)] + [ones]
        rhs = BitVector(parity << (len(cons) - 1), len(cons))
        sol = solve_affine(BitMatrix(tuple(cons), n), rhs)
        if sol is None:
            continue
        span = LinearCode.span(rows, n)
        basis = sol.nullspace.rows
        for _ in range(tries):
            x = sol.particular
            for b in basis:
                if rng.getrandbits(1):
                    x ^= b
            if x and x not in span:
                rows.append(x)
                break
    return BitMatrix(tuple(rows), n)
