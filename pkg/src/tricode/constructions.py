"""Matrix-to-matrix constructions that preserve triorthogonality."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import DimensionError, ParameterError, ValidationError
from .gf2core import BitMatrix, BitVector, LinearCode, rank
from .triortho import TriMatrix, TriSpace, as_matrix, check_trimatrix, check_trispace, partition_rows


@dataclass(frozen=True)
class ShortenResult:
    """Rows of a matrix with 0 at one column, that column removed.

    ``kept_rows`` index the rows of the input matrix in their original order.
    The matrix is triorthogonal whenever the input was, but it may be rank
    deficient; ``warnings`` lists the hypotheses of the parameter rule
    ``[[n-1, odd_count]]`` that do not hold.
    """

    matrix: BitMatrix
    kept_rows: tuple[int, ...]
    odd_count: int
    even_count: int

    @property
    def full_rank(self) -> bool:
        return rank(self.matrix) == self.matrix.nrows

    @property
    def warnings(self) -> tuple[str, ...]:
        out = []
        if self.odd_count == 0:
            out.append("no odd-weight row survives shortening")
        if self.even_count == 0:
            out.append("no even-weight row survives shortening")
        if not self.full_rank:
            out.append("shortened rows are linearly dependent")
        return tuple(out)

    @property
    def parameter_rule_applies(self) -> bool:
        return not self.warnings


def _require_tri(g: TriMatrix | BitMatrix) -> BitMatrix:
    m = as_matrix(g)
    if not isinstance(g, TriMatrix):
        report = check_trimatrix(m)
        if not report.ok:
            raise ValidationError(f"not triorthogonal: rows {report.first_violation} fail")
    return m


def shorten(g: TriMatrix | BitMatrix, i: int) -> ShortenResult:
    m = as_matrix(g)
    if not 0 <= i < m.ncols:
        raise ParameterError(f"column {i} outside 0..{m.ncols - 1}")
    kept = tuple(r for r, row in enumerate(m.rows) if not (row >> i) & 1)
    short = m.select_rows(kept).delete_column(i)
    odd = sum(w & 1 for w in short.row_weights())
    return ShortenResult(short, kept, odd, len(kept) - odd)


def extend(g: TriMatrix | BitMatrix, i: int, append: bool = False) -> TriMatrix:
    """Attach the indicator column of row ``i``: ``[e_i | G]``.

    ``e_i`` has one entry per row. The new column goes in front unless
    ``append`` is set. Row ``i`` flips parity, so extending at an odd row
    lowers ``k`` by one and at an even row raises it by one.
    """
    m = as_matrix(g)
    if not 0 <= i < m.nrows:
        raise ParameterError(f"row {i} outside 0..{m.nrows - 1}")
    col = BitMatrix(tuple(int(r == i) for r in range(m.nrows)), 1)
    return partition_rows(m.hstack(col) if append else col.hstack(m))


def puncture(g: TriMatrix | BitMatrix, j: int) -> TriMatrix:
    """Delete column ``j``, which must contain at most one 1.

    This undoes :func:`extend`. Deleting a column with two or more 1s always
    makes some pair overlap odd, so it is rejected.
    """
    m = as_matrix(g)
    w = m.column(j).bit_count()
    if w > 1:
        raise ValidationError(f"column {j} has weight {w}; only weight <= 1 columns can be removed")
    return partition_rows(m.delete_column(j))


def concat_columns(a: TriMatrix | BitMatrix, b: TriMatrix | BitMatrix) -> BitMatrix:
    """``[A | B]`` for matrices with the same number of rows."""
    return as_matrix(a).hstack(as_matrix(b))


def block_diag(a: TriMatrix | BitMatrix, b: TriMatrix | BitMatrix) -> BitMatrix:
    """``[[A, O], [O, B]]``."""
    a, b = as_matrix(a), as_matrix(b)
    top = a.hstack(BitMatrix.zeros(a.nrows, b.ncols))
    bottom = BitMatrix.zeros(b.nrows, a.ncols).hstack(b)
    return BitMatrix(top.rows + bottom.rows, a.ncols + b.ncols)


def direct_sum(a: TriMatrix, b: TriMatrix) -> TriMatrix:
    """Block-diagonal sum; ``stacked`` is ``[A1 O; O B1; A0 O; O B0]``."""
    return partition_rows(block_diag(a, b))


def plotkin_variants(g: TriMatrix) -> tuple[BitMatrix, BitMatrix]:
    """``G' = [G1 G1; O G0]`` (all rows even) and ``G'' = [O G1; G0 G0]``."""
    g1, g0 = g.odd_rows, g.even_rows
    zeros1 = BitMatrix.zeros(g1.nrows, g.n)
    zeros0 = BitMatrix.zeros(g0.nrows, g.n)
    gprime = BitMatrix(g1.hstack(g1).rows + zeros0.hstack(g0).rows, 2 * g.n)
    gdouble = BitMatrix(zeros1.hstack(g1).rows + g0.hstack(g0).rows, 2 * g.n)
    return gprime, gdouble


def plotkin_sum(g1: BitMatrix, g2: BitMatrix) -> BitMatrix:
    """Generator ``[G1 G1; O G2]`` of the ``(u | u+v)`` code.

    A classical construction only: the result need not be triorthogonal
    even when both inputs are.
    """
    if g1.ncols != g2.ncols:
        raise DimensionError(f"length mismatch: {g1.ncols} != {g2.ncols}")
    top = g1.hstack(g1)
    bottom = BitMatrix.zeros(g2.nrows, g2.ncols).hstack(g2)
    return BitMatrix(top.rows + bottom.rows, 2 * g1.ncols)


def row_pair_sum(g0: TriMatrix | BitMatrix, idx_a: Sequence[int], idx_b: Sequence[int]) -> BitMatrix:
    """Rows ``g0[idx_a[t]] + g0[idx_b[t]]`` for disjoint index lists."""
    m = _require_tri(g0)
    if len(idx_a) != len(idx_b):
        raise ParameterError("index lists must have equal length")
    every = list(idx_a) + list(idx_b)
    if len(set(every)) != len(every):
        raise ParameterError("index lists must be disjoint and repeat-free")
    if any(not 0 <= i < m.nrows for i in every):
        raise ParameterError(f"row index outside 0..{m.nrows - 1}")
    return BitMatrix(tuple(m.rows[a] ^ m.rows[b] for a, b in zip(idx_a, idx_b)), m.ncols)


def building_up(g0: TriMatrix | BitMatrix, x: BitVector) -> BitMatrix:
    """``[1 0 x; y_i y_i g_i]`` with ``y_i = x AND g_i``.

    Columns come in three blocks of width ``m`` (the input width), in the
    order shown; the output has one more row than the input.
    """
    m = _require_tri(g0)
    if x.length != m.ncols:
        raise DimensionError(f"x has length {x.length}, matrix has {m.ncols} columns")
    w = m.ncols
    ones = (1 << w) - 1
    first = ones | (x.value << (2 * w))
    rows = [first]
    for g in m.rows:
        y = x.value & g
        rows.append(y | (y << w) | (g << (2 * w)))
    return BitMatrix(tuple(rows), 3 * w)


def repetition_pairs(t: int) -> BitMatrix:
    """``[I_t | I_t]``."""
    eye = BitMatrix.identity(t)
    return eye.hstack(eye)


def pad_with_block(a: TriMatrix, b: BitMatrix) -> TriMatrix:
    """``[[A, O], [O, B]]`` where ``B`` generates a self-dual triorthogonal space."""
    if a.k < 1:
        raise ParameterError("padding needs at least one odd-weight row")
    code = LinearCode.from_matrix(b)
    if 2 * code.dim != b.ncols or code.dim != b.nrows or not check_trispace(code):
        raise ValidationError("B must be a full-rank generator of a self-dual triorthogonal space")
    return partition_rows(block_diag(a, b))


def pad_with_selfdual(a: TriMatrix, t: int) -> TriMatrix:
    """Append ``t`` disjoint weight-2 rows on ``2t`` new columns; ``d_Z`` is unchanged."""
    if t < 1:
        raise ParameterError(f"t={t} must be >= 1")
    return pad_with_block(a, repetition_pairs(t))


def shorten_space(c: TriSpace | LinearCode, i: int) -> TriSpace:
    """Codewords with 0 at coordinate ``i``, with that coordinate removed.

    The dimension drops by one when some codeword has a 1 at ``i`` and is
    unchanged otherwise.
    """
    code = c.code if isinstance(c, TriSpace) else c
    if not 0 <= i < code.length:
        raise ParameterError(f"coordinate {i} outside 0..{code.length - 1}")
    rows = list(code.basis.rows)
    hit = [r for r in rows if (r >> i) & 1]
    if hit:
        first = hit[0]
        rows = [r ^ first if (r >> i) & 1 else r for r in rows if r != first]
    short = BitMatrix(tuple(rows), code.length).delete_column(i)
    return TriSpace(LinearCode.from_matrix(short))
