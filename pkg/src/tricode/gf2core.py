"""Bit-packed linear algebra over GF(2).

Vectors are Python ints: coordinate ``i`` is bit ``i``. Splitting an int
into 64-bit words (``BitVector.to_words``) gives the little-endian packed
layout, so coordinate 0 is bit 0 of word 0.

Exhaustive minimum-weight searches run on numpy ``uint64`` arrays, one row
per codeword and one column per 64-coordinate word.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import BudgetExceededError, DimensionError, UndefinedDistanceError, ValidationError

WORD_BITS = 64
DEFAULT_LIMIT = 1 << 26
# log2 of the number of codewords materialized at once by the numpy engine
BLOCK_BITS = 20


def _mask(n: int) -> int:
    return (1 << n) - 1


def _bits_to_int(bits: Iterable[int]) -> tuple[int, int]:
    value = 0
    n = 0
    for i, b in enumerate(bits):
        if b not in (0, 1, "0", "1"):
            raise ValidationError(f"not a binary coordinate: {b!r}")
        if int(b):
            value |= 1 << i
        n = i + 1
    return value, n


@dataclass(frozen=True)
class BitVector:
    """A binary word of fixed length."""

    value: int
    length: int

    def __post_init__(self):
        if self.length < 1:
            raise DimensionError("a BitVector needs length >= 1")
        if self.value < 0 or self.value >> self.length:
            raise DimensionError(f"value has bits beyond length {self.length}")

    @classmethod
    def from_bits(cls, bits: Iterable[int]) -> BitVector:
        value, n = _bits_to_int(bits)
        return cls(value, n)

    @classmethod
    def from_str(cls, text: str) -> BitVector:
        """Parse ``"0110"`` or ``"0,1,1,0"``; the first character is coordinate 0."""
        return cls.from_bits(c for c in text if c not in ", ")

    @classmethod
    def zeros(cls, n: int) -> BitVector:
        return cls(0, n)

    @classmethod
    def ones(cls, n: int) -> BitVector:
        return cls(_mask(n), n)

    @classmethod
    def unit(cls, n: int, i: int) -> BitVector:
        if not 0 <= i < n:
            raise DimensionError(f"coordinate {i} out of range for length {n}")
        return cls(1 << i, n)

    @classmethod
    def from_words(cls, words: Sequence[int], length: int) -> BitVector:
        value = 0
        for j, w in enumerate(words):
            value |= int(w) << (WORD_BITS * j)
        return cls(value, length)

    def to_words(self) -> list[int]:
        nwords = -(-self.length // WORD_BITS)
        return [(self.value >> (WORD_BITS * j)) & _mask(WORD_BITS) for j in range(nwords)]

    @property
    def weight(self) -> int:
        return self.value.bit_count()

    def __len__(self) -> int:
        return self.length

    def __getitem__(self, i: int) -> int:
        if not -self.length <= i < self.length:
            raise IndexError(i)
        return (self.value >> (i % self.length)) & 1

    def __iter__(self) -> Iterator[int]:
        return ((self.value >> i) & 1 for i in range(self.length))

    def __and__(self, other: BitVector) -> BitVector:
        return wedge(self, other)

    def __xor__(self, other: BitVector) -> BitVector:
        return add(self, other)

    __add__ = __xor__

    def __str__(self) -> str:
        return "".join(str(b) for b in self)


def _check_same_length(a: BitVector, b: BitVector) -> None:
    if a.length != b.length:
        raise DimensionError(f"length mismatch: {a.length} != {b.length}")


def wedge(a: BitVector, b: BitVector) -> BitVector:
    """Coordinatewise product (AND)."""
    _check_same_length(a, b)
    return BitVector(a.value & b.value, a.length)


def add(a: BitVector, b: BitVector) -> BitVector:
    """Coordinatewise sum (XOR)."""
    _check_same_length(a, b)
    return BitVector(a.value ^ b.value, a.length)


def weight(a: BitVector) -> int:
    return a.weight


@dataclass(frozen=True)
class BitMatrix:
    """An ordered list of rows of a common length ``ncols``.

    Rows are stored as ints. A matrix may have zero rows; its row span is
    the zero code.
    """

    rows: tuple[int, ...]
    ncols: int

    def __post_init__(self):
        if self.ncols < 0:
            raise DimensionError("ncols must be >= 0")
        object.__setattr__(self, "rows", tuple(int(r) for r in self.rows))
        for r in self.rows:
            if r < 0 or r >> self.ncols:
                raise DimensionError(f"row has bits beyond ncols={self.ncols}")

    @classmethod
    def from_lists(cls, rows: Sequence[Sequence[int]], ncols: int | None = None) -> BitMatrix:
        ints = []
        for row in rows:
            value, n = _bits_to_int(row)
            if ncols is None:
                ncols = n
            elif n != ncols:
                raise DimensionError(f"ragged rows: {n} != {ncols}")
            ints.append(value)
        return cls(tuple(ints), ncols or 0)

    @classmethod
    def from_strings(cls, rows: Sequence[str], ncols: int | None = None) -> BitMatrix:
        return cls.from_lists([[c for c in r if c not in ", "] for r in rows], ncols)

    @classmethod
    def from_vectors(cls, vectors: Sequence[BitVector], ncols: int | None = None) -> BitMatrix:
        if ncols is None:
            if not vectors:
                raise DimensionError("ncols is required for an empty list of vectors")
            ncols = vectors[0].length
        for v in vectors:
            if v.length != ncols:
                raise DimensionError(f"vector length {v.length} != {ncols}")
        return cls(tuple(v.value for v in vectors), ncols)

    @classmethod
    def identity(cls, k: int) -> BitMatrix:
        return cls(tuple(1 << i for i in range(k)), k)

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> BitMatrix:
        return cls((0,) * nrows, ncols)

    @classmethod
    def empty(cls, ncols: int = 0) -> BitMatrix:
        return cls((), ncols)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def __len__(self) -> int:
        return len(self.rows)

    def __getitem__(self, i: int) -> BitVector:
        return BitVector(self.rows[i], self.ncols)

    def __iter__(self) -> Iterator[BitVector]:
        return (BitVector(r, self.ncols) for r in self.rows)

    def row_weights(self) -> list[int]:
        return [r.bit_count() for r in self.rows]

    def column(self, j: int) -> int:
        """Column ``j`` as an int whose bit ``i`` is entry ``(i, j)``."""
        if not 0 <= j < self.ncols:
            raise DimensionError(f"column {j} out of range for {self.ncols} columns")
        col = 0
        for i, r in enumerate(self.rows):
            col |= ((r >> j) & 1) << i
        return col

    def select_rows(self, indices: Iterable[int]) -> BitMatrix:
        return BitMatrix(tuple(self.rows[i] for i in indices), self.ncols)

    def delete_column(self, j: int) -> BitMatrix:
        if not 0 <= j < self.ncols:
            raise DimensionError(f"column {j} out of range for {self.ncols} columns")
        low = _mask(j)
        rows = tuple((r & low) | ((r >> (j + 1)) << j) for r in self.rows)
        return BitMatrix(rows, self.ncols - 1)

    def select_columns(self, columns: Sequence[int]) -> BitMatrix:
        rows = tuple(
            sum(((r >> c) & 1) << t for t, c in enumerate(columns)) for r in self.rows
        )
        return BitMatrix(rows, len(columns))

    def vstack(self, other: BitMatrix) -> BitMatrix:
        if self.nrows and other.nrows and self.ncols != other.ncols:
            raise DimensionError(f"column mismatch: {self.ncols} != {other.ncols}")
        ncols = self.ncols if self.nrows else other.ncols
        return BitMatrix(self.rows + other.rows, ncols)

    def hstack(self, other: BitMatrix) -> BitMatrix:
        if self.nrows != other.nrows:
            raise DimensionError(f"row mismatch: {self.nrows} != {other.nrows}")
        rows = tuple(a | (b << self.ncols) for a, b in zip(self.rows, other.rows))
        return BitMatrix(rows, self.ncols + other.ncols)

    def to_lists(self) -> list[list[int]]:
        return [[(r >> j) & 1 for j in range(self.ncols)] for r in self.rows]

    def __str__(self) -> str:
        return "\n".join("".join(str((r >> j) & 1) for j in range(self.ncols)) for r in self.rows)


def _rref_rows(rows: Iterable[int], ncols: int) -> tuple[list[int], list[int]]:
    work = [r for r in rows if r]
    pivots: list[int] = []
    top = 0
    for col in range(ncols):
        if top == len(work):
            break
        bit = 1 << col
        pivot = next((i for i in range(top, len(work)) if work[i] & bit), None)
        if pivot is None:
            continue
        work[top], work[pivot] = work[pivot], work[top]
        p = work[top]
        for i in range(len(work)):
            if i != top and work[i] & bit:
                work[i] ^= p
        pivots.append(col)
        top += 1
    return work[:top], pivots


def rref(m: BitMatrix) -> tuple[BitMatrix, list[int]]:
    """Reduced row-echelon form with zero rows dropped, and its pivot columns.

    Pivots are chosen leftmost-column first, topmost row first, so equal row
    spans give identical results.
    """
    rows, pivots = _rref_rows(m.rows, m.ncols)
    return BitMatrix(tuple(rows), m.ncols), pivots


def rank(m: BitMatrix) -> int:
    return len(_rref_rows(m.rows, m.ncols)[1])


def _nullspace_rows(reduced: Sequence[int], pivots: Sequence[int], ncols: int) -> list[int]:
    pivot_set = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivot_set:
            continue
        x = 1 << f
        for row, p in zip(reduced, pivots):
            if (row >> f) & 1:
                x |= 1 << p
        basis.append(x)
    return basis


def nullspace(m: BitMatrix) -> BitMatrix:
    """Basis of ``{x : m x = 0}``, one vector per free column in increasing order."""
    reduced, pivots = _rref_rows(m.rows, m.ncols)
    return BitMatrix(tuple(_nullspace_rows(reduced, pivots, m.ncols)), m.ncols)


@dataclass(frozen=True)
class LinearCode:
    """A binary linear code stored by its canonical RREF basis."""

    basis: BitMatrix
    pivots: tuple[int, ...]

    @classmethod
    def from_matrix(cls, m: BitMatrix) -> LinearCode:
        reduced, pivots = rref(m)
        return cls(reduced, tuple(pivots))

    @classmethod
    def span(cls, rows: Iterable[int | BitVector], length: int) -> LinearCode:
        ints = [r.value if isinstance(r, BitVector) else int(r) for r in rows]
        return cls.from_matrix(BitMatrix(tuple(ints), length))

    @classmethod
    def zero(cls, length: int) -> LinearCode:
        return cls(BitMatrix.empty(length), ())

    @classmethod
    def full(cls, length: int) -> LinearCode:
        return cls(BitMatrix.identity(length), tuple(range(length)))

    @property
    def length(self) -> int:
        return self.basis.ncols

    @property
    def dim(self) -> int:
        return self.basis.nrows

    def reduce(self, v: int) -> int:
        """Residue of ``v`` after eliminating every pivot; zero iff ``v`` is in the code."""
        for row, p in zip(self.basis.rows, self.pivots):
            if (v >> p) & 1:
                v ^= row
        return v

    def __contains__(self, v: BitVector | int) -> bool:
        if isinstance(v, BitVector):
            if v.length != self.length:
                raise DimensionError(f"length mismatch: {v.length} != {self.length}")
            v = v.value
        return self.reduce(v) == 0

    def contains_code(self, other: LinearCode) -> bool:
        return all(r in self for r in other.basis.rows)

    def codewords(self, limit: int = DEFAULT_LIMIT) -> Iterator[BitVector]:
        return enumerate_codewords(self, limit)


def dual(c: LinearCode) -> LinearCode:
    rows = _nullspace_rows(c.basis.rows, c.pivots, c.length)
    return LinearCode.span(rows, c.length)


@dataclass(frozen=True)
class AffineSolution:
    """All solutions of a linear system: ``particular + span(nullspace)``."""

    particular: int
    nullspace: BitMatrix

    @property
    def nvars(self) -> int:
        return self.nullspace.ncols

    @property
    def dim(self) -> int:
        return self.nullspace.nrows

    def __iter__(self) -> Iterator[int]:
        """Particular solution first, then Gray-code combinations of the nullspace."""
        for v in gray_walk(self.nullspace.rows):
            yield self.particular ^ v

    def counter_order(self) -> Iterator[int]:
        """Particular solution plus the combination selected by the bits of ``i``, for ``i = 0, 1, ...``."""
        basis = self.nullspace.rows
        for i in range(1 << len(basis)):
            x = self.particular
            for j, b in enumerate(basis):
                if (i >> j) & 1:
                    x ^= b
            yield x

    def __contains__(self, x: int) -> bool:
        return (x ^ self.particular) in LinearCode.from_matrix(self.nullspace)


def solve_affine(constraints: BitMatrix, rhs: BitVector | None = None) -> AffineSolution | None:
    """Solve ``constraints @ x = rhs`` over GF(2).

    Row ``i`` of ``constraints`` is the coefficient vector of equation ``i``;
    ``rhs`` bit ``i`` is its right-hand side, and ``None`` means homogeneous.
    Returns ``None`` when the system is inconsistent. Free variables are set
    to zero in the particular solution.
    """
    n = constraints.ncols
    if rhs is not None and rhs.length != constraints.nrows:
        raise DimensionError(f"rhs length {rhs.length} != {constraints.nrows} equations")
    rhs_value = 0 if rhs is None else rhs.value
    augmented = [
        row | (((rhs_value >> i) & 1) << n) for i, row in enumerate(constraints.rows)
    ]
    reduced, pivots = _rref_rows(augmented, n + 1)
    if pivots and pivots[-1] == n:
        return None
    particular = 0
    for row, p in zip(reduced, pivots):
        if (row >> n) & 1:
            particular |= 1 << p
    coeffs = [row & _mask(n) for row in reduced]
    basis = _nullspace_rows(coeffs, pivots, n)
    return AffineSolution(particular, BitMatrix(tuple(basis), n))


def gray_walk(basis: Sequence[int]) -> Iterator[int]:
    """Every combination of ``basis``, each one XOR away from the previous.

    Step ``i`` is the combination selected by the bits of ``i ^ (i >> 1)``.
    """
    v = 0
    yield v
    for i in range(1, 1 << len(basis)):
        v ^= basis[(i & -i).bit_length() - 1]
        yield v


def enumerate_codewords(c: LinearCode, limit: int = DEFAULT_LIMIT) -> Iterator[BitVector]:
    """Yield all ``2**dim`` codewords of ``c`` in Gray-code order over its RREF basis."""
    if 1 << c.dim > limit:
        raise BudgetExceededError(1 << c.dim, limit)
    n = c.length
    return (BitVector(v, n) for v in gray_walk(c.basis.rows))


def _words(values: Sequence[int], nwords: int) -> np.ndarray:
    out = np.zeros((len(values), nwords), dtype=np.uint64)
    m = _mask(WORD_BITS)
    for i, v in enumerate(values):
        for j in range(nwords):
            out[i, j] = (v >> (WORD_BITS * j)) & m
    return out


def _span_table(vectors: np.ndarray) -> np.ndarray:
    """All combinations of the given word rows; entry ``j`` combines the bits of ``j``."""
    table = np.zeros((1, vectors.shape[1]), dtype=np.uint64)
    for v in vectors:
        table = np.concatenate([table, table ^ v])
    return table


def min_weight_outside(
    inner: Sequence[int],
    outer: Sequence[int],
    ncols: int,
    limit: int = DEFAULT_LIMIT,
) -> tuple[int, int]:
    """Minimum weight over ``span(inner + outer) \\ span(inner)``.

    ``inner + outer`` must be linearly independent and ``outer`` nonempty.
    Returns ``(weight, vector)`` for the first minimum met in enumeration
    order. The set has ``(2**len(outer) - 1) * 2**len(inner)`` elements and
    every one of them is visited unless a weight-1 vector turns up.
    """
    if not outer:
        raise UndefinedDistanceError("the set difference is empty")
    e, d = len(outer), len(inner) + len(outer)
    needed = ((1 << e) - 1) << len(inner)
    if needed > limit:
        raise BudgetExceededError(needed, limit, upper_bound=sampled_upper_bound(inner, outer, ncols))

    nwords = max(1, -(-ncols // WORD_BITS))
    combined = list(inner) + list(outer)
    low = min(d, BLOCK_BITS)
    table = _span_table(_words(combined[:low], nwords))
    table_weights = np.bitwise_count(table).sum(axis=1, dtype=np.int64)
    inner_in_table = min(len(inner), low)
    # table entries with a nonzero outer coefficient
    table_outside = (np.arange(len(table)) >> inner_in_table) != 0
    inner_in_offsets = max(len(inner) - low, 0)
    offsets = combined[low:]

    best_w, best_v = ncols + 1, 0
    big = np.int64(ncols + 1)
    offset = 0
    for i in range(1 << len(offsets)):
        if i:
            offset ^= offsets[(i & -i).bit_length() - 1]
        code = i ^ (i >> 1)
        outside = (code >> inner_in_offsets) != 0
        if offset:
            block = table ^ _words([offset], nwords)[0]
            weights = np.bitwise_count(block).sum(axis=1, dtype=np.int64)
        else:
            block, weights = table, table_weights
        if not outside:
            weights = np.where(table_outside, weights, big)
        j = int(np.argmin(weights))
        w = int(weights[j])
        if w < best_w:
            best_w = w
            best_v = BitVector.from_words([int(x) for x in block[j]], max(ncols, 1)).value
            if best_w == 1:
                break
    return best_w, best_v


def sampled_upper_bound(inner: Sequence[int], outer: Sequence[int], ncols: int, bits: int = 16) -> int:
    """Minimum weight over a small subset of ``span(inner + outer) \\ span(inner)``.

    Combinations of a prefix of ``inner`` with a nonzero combination of a
    prefix of ``outer`` all lie in the set, so this bounds its minimum from
    above.
    """
    sub_outer = list(outer[:bits])
    sub_inner = list(inner[: max(bits - len(sub_outer), 0)])
    return min_weight_outside(sub_inner, sub_outer, ncols, limit=1 << (bits + 1))[0]


def min_weight(c: LinearCode, limit: int = DEFAULT_LIMIT) -> int:
    """Exact minimum distance by exhaustive enumeration."""
    if c.dim == 0:
        raise UndefinedDistanceError("the zero code has no minimum distance")
    return min_weight_outside([], c.basis.rows, c.length, limit)[0]


def extend_basis(small: LinearCode, big: LinearCode) -> list[int]:
    """Rows of ``big`` that complete the basis of ``small`` to a basis of ``big``.

    ``small`` must be a subcode of ``big``.
    """
    if small.length != big.length:
        raise DimensionError(f"length mismatch: {small.length} != {big.length}")
    echelon: list[tuple[int, int]] = []

    def reduce(v: int) -> int:
        for row, p in echelon:
            if (v >> p) & 1:
                v ^= row
        return v

    for row in small.basis.rows:
        r = reduce(row)
        echelon.append((r, (r & -r).bit_length() - 1))
    extra = []
    for row in big.basis.rows:
        r = reduce(row)
        if r:
            echelon.append((r, (r & -r).bit_length() - 1))
            extra.append(row)
    if len(echelon) != big.dim:
        raise DimensionError("small is not contained in big")
    return extra
