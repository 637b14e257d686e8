"""Self-dual codes, their triorthogonality, and the greedy subspace search.

The greedy search grows a linearly independent set ``H`` inside a self-dual
code ``C``. Each step solves the homogeneous system

    |x & a & b| = 0 (mod 2)  for every pair a != b in H,
    |x & c| = 0 (mod 2)      for every basis vector c of C^perp,

whose solution space contains ``span(H)``, and adds a solution outside
``span(H)``. The search stops when there is none. Subsets of ``span(H)``
are always triorthogonal.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Iterator, Sequence

from .errors import DimensionError, ParameterError, ValidationError
from .gf2core import (
    DEFAULT_LIMIT,
    AffineSolution,
    BitMatrix,
    BitVector,
    LinearCode,
    dual,
    extend_basis,
    gray_walk,
    min_weight_outside,
    rank,
    solve_affine,
)
from .triortho import TriMatrix, check_trispace


def is_selfdual(m: BitMatrix) -> bool:
    """Rank ``ncols / 2`` and every pair of rows (including a row with itself) even."""
    if m.ncols % 2 or m.ncols == 0:
        return False
    rows = m.rows
    for i, a in enumerate(rows):
        for b in rows[i:]:
            if (a & b).bit_count() & 1:
                return False
    return rank(m) == m.ncols // 2


@dataclass(frozen=True)
class SelfDualCode:
    code: LinearCode
    generator: BitMatrix

    def __post_init__(self):
        if not is_selfdual(self.generator):
            raise ValidationError("generator does not span a self-dual code")
        if ((1 << self.length) - 1) not in self.code:
            raise ValidationError("a binary self-dual code must contain the all-one vector")

    @classmethod
    def from_matrix(cls, m: BitMatrix) -> SelfDualCode:
        return cls(LinearCode.from_matrix(m), m)

    @property
    def length(self) -> int:
        return self.code.length

    @property
    def k(self) -> int:
        return self.code.dim

    @property
    def ones(self) -> int:
        return (1 << self.length) - 1


def _as_selfdual(c: SelfDualCode | BitMatrix) -> SelfDualCode:
    return c if isinstance(c, SelfDualCode) else SelfDualCode.from_matrix(c)


def wedge_closure_witness(c: SelfDualCode | BitMatrix) -> tuple[int, int, BitVector] | None:
    """First basis pair ``i <= j`` whose product lies outside the code, or ``None``."""
    code = _as_selfdual(c).code
    rows = code.basis.rows
    for i, a in enumerate(rows):
        for j in range(i, len(rows)):
            v = a & rows[j]
            if v not in code:
                return i, j, BitVector(v, code.length)
    return None


def wedge_closed(c: SelfDualCode | BitMatrix) -> bool:
    """Whether ``x & y`` stays in the code; basis pairs are enough."""
    return wedge_closure_witness(c) is None


@dataclass(frozen=True)
class Classification:
    is_trispace: bool
    wedge_closed: bool
    permutation_witness: tuple[int, ...] | None
    pivots: tuple[int, ...]
    free_columns: tuple[int, ...]

    @property
    def consistent(self) -> bool:
        return self.is_trispace == self.wedge_closed == (self.permutation_witness is not None)


def permutation_witness(c: SelfDualCode | BitMatrix) -> tuple[int, ...] | None:
    """``perm`` with ``A[i, perm[i]] = 1`` if the systematic part ``A`` is a permutation.

    ``A`` is the RREF basis restricted to the non-pivot columns, so the
    code has generator ``[I_k | A]`` after moving pivot columns first.
    """
    code = _as_selfdual(c).code
    free = [j for j in range(code.length) if j not in set(code.pivots)]
    perm = []
    for row in code.basis.rows:
        hits = [t for t, j in enumerate(free) if (row >> j) & 1]
        if len(hits) != 1:
            return None
        perm.append(hits[0])
    if sorted(perm) != list(range(len(free))):
        return None
    return tuple(perm)


def classify_selfdual_triortho(c: SelfDualCode | BitMatrix) -> Classification:
    sd = _as_selfdual(c)
    free = tuple(j for j in range(sd.length) if j not in set(sd.code.pivots))
    return Classification(
        is_trispace=check_trispace(sd.code),
        wedge_closed=wedge_closed(sd),
        permutation_witness=permutation_witness(sd),
        pivots=sd.code.pivots,
        free_columns=free,
    )


def g0_never_selfdual_check(g: TriMatrix) -> bool | None:
    """Whether the even rows span a self-dual code; ``None`` if the shape does not apply.

    Applies when ``k > 0`` and the number of even rows is half the length.
    The expected answer is always ``False``.
    """
    if g.k == 0 or 2 * g.even_rows.nrows != g.n:
        return None
    return is_selfdual(g.even_rows)


# selection policies: given the solution space and span(H), pick a new vector


Policy = Callable[[AffineSolution, LinearCode], "int | None"]


def first_found(solutions: AffineSolution, span: LinearCode, limit: int = DEFAULT_LIMIT) -> int | None:
    """First solution outside ``span`` in counter order over the nullspace basis.

    For a homogeneous system this is the first nullspace basis vector not in
    ``span``.
    """
    if solutions.dim <= span.dim:
        return None
    for count, x in enumerate(solutions.counter_order()):
        if x not in span:
            return x
        if count >= limit:
            break
    return None


def min_weight_policy(solutions: AffineSolution, span: LinearCode, limit: int = DEFAULT_LIMIT) -> int | None:
    """Lowest-weight solution outside ``span`` (first in enumeration order on ties)."""
    if solutions.dim <= span.dim:
        return None
    space = LinearCode.from_matrix(solutions.nullspace)
    inner = extend_basis(LinearCode.zero(space.length), span)
    outer = extend_basis(span, space)
    return min_weight_outside(inner, outer, space.length, limit)[1]


def seeded_policy(seed: int) -> Policy:
    rng = random.Random(seed)

    def pick(solutions: AffineSolution, span: LinearCode) -> int | None:
        if solutions.dim <= span.dim:
            return None
        basis = solutions.nullspace.rows
        while True:
            x = 0
            for b in basis:
                if rng.getrandbits(1):
                    x ^= b
            if x not in span:
                return x

    return pick


def parse_policy(spec: str) -> Policy:
    """``first``, ``minweight`` or ``seeded:N``."""
    if spec == "first":
        return first_found
    if spec == "minweight":
        return min_weight_policy
    if spec.startswith("seeded:"):
        try:
            return seeded_policy(int(spec.split(":", 1)[1]))
        except ValueError:
            raise ParameterError(f"bad seed in policy {spec!r}") from None
    raise ParameterError(f"unknown policy {spec!r}")


@dataclass(frozen=True)
class SearchStep:
    size: int
    equations: int
    system_rank: int
    solution_dim: int
    chosen: int | None


@dataclass
class SearchState:
    H: list[int]
    length: int
    trace: list[SearchStep] = field(default_factory=list)

    @property
    def span(self) -> LinearCode:
        return LinearCode.span(self.H, self.length)

    @property
    def size(self) -> int:
        return len(self.H)

    @property
    def unital(self) -> bool:
        return ((1 << self.length) - 1) in self.span

    def vectors(self) -> list[BitVector]:
        return [BitVector(h, self.length) for h in self.H]

    def matrix(self) -> BitMatrix:
        return BitMatrix(tuple(self.H), self.length)


def search_system(c: SelfDualCode, H: Sequence[int]) -> BitMatrix:
    """Coefficient rows of the homogeneous system solved at each step."""
    pair_rows = [a & b for a, b in combinations(H, 2)]
    return BitMatrix(tuple(pair_rows) + dual(c.code).basis.rows, c.length)


def greedy_search(
    c: SelfDualCode | BitMatrix,
    y: BitVector | int,
    z: BitVector | int,
    policy: Policy | str = "first",
) -> SearchState:
    """Greedy growth of a triorthogonal subspace of a self-dual code from ``{y, z}``."""
    sd = _as_selfdual(c)
    pick = parse_policy(policy) if isinstance(policy, str) else policy
    start = []
    for v in (y, z):
        if isinstance(v, BitVector):
            if v.length != sd.length:
                raise DimensionError(f"start vector length {v.length} != {sd.length}")
            v = v.value
        if v == 0 or v not in sd.code:
            raise ValidationError("starting codewords must be nonzero codewords")
        start.append(v)
    if start[0] == start[1]:
        raise ValidationError("starting codewords must differ")

    state = SearchState(H=list(start), length=sd.length)
    while True:
        system = search_system(sd, state.H)
        solutions = solve_affine(system)
        span = state.span
        chosen = pick(solutions, span)
        state.trace.append(
            SearchStep(
                size=state.size,
                equations=system.nrows,
                system_rank=rank(system),
                solution_dim=solutions.dim,
                chosen=chosen,
            )
        )
        if chosen is None:
            return state
        state.H.append(chosen)


def start_pairs(c: SelfDualCode) -> Iterator[tuple[int, int]]:
    """All-one vector with each basis codeword first, then basis pairs in order."""
    basis = c.code.basis.rows
    seen = set()
    for b in basis:
        if b != c.ones:
            seen.add((c.ones, b))
            yield c.ones, b
    for a, b in combinations(basis, 2):
        if (a, b) not in seen:
            yield a, b


def greedy_search_all_starts(
    c: SelfDualCode | BitMatrix, budget: int, policy: Policy | str = "first"
) -> SearchState:
    """Best of up to ``budget`` runs; ties go to the earliest run."""
    if budget < 1:
        raise ParameterError("budget must be >= 1")
    sd = _as_selfdual(c)
    best = None
    for run, (y, z) in enumerate(start_pairs(sd)):
        if run >= budget:
            break
        state = greedy_search(sd, y, z, policy)
        if best is None or state.size > best.size:
            best = state
    if best is None:
        raise ParameterError("the code has no pair of distinct nonzero codewords")
    return best


def bound_lower(k: int, unital: bool = False) -> int:
    """Smallest ``h`` the output size can take for a ``[2k, k]`` code.

    General runs satisfy ``k <= C(h+1, 2)``; runs started from the all-one
    vector satisfy ``k <= C(h, 2) + 1``.
    """
    if k < 1:
        raise ParameterError("k must be >= 1")
    h = 1
    if unital:
        while math.comb(h, 2) + 1 < k:
            h += 1
    else:
        while math.comb(h + 1, 2) < k:
            h += 1
    return h


def min_k_for_dimension(r: int, unital: bool = False) -> int:
    """Least ``k`` guaranteeing an ``r``-dimensional triorthogonal subspace."""
    if r < 3:
        raise ParameterError("r must be >= 3")
    return math.comb(r - 1, 2) + 2 if unital else math.comb(r, 2) + 1


# generating self-dual codes


def build_up_selfdual(g: BitMatrix, x: int) -> BitMatrix:
    """Self-dual ``[2n+2, n+1]`` generator from a self-dual ``[2n, n]`` one.

    ``x`` must have odd weight. Rows are ``(1, 0, x)`` and ``(y_i, y_i, g_i)``
    with ``y_i`` the inner product of ``x`` and ``g_i``.
    """
    if not x.bit_count() & 1:
        raise ValidationError("x must have odd weight")
    n = g.ncols
    rows = [1 | (x << 2)]
    for r in g.rows:
        y = (x & r).bit_count() & 1
        rows.append(y | (y << 1) | (r << 2))
    return BitMatrix(tuple(rows), n + 2)


def permute_columns(m: BitMatrix, perm: Sequence[int]) -> BitMatrix:
    """Column ``j`` of the result is column ``perm[j]`` of ``m``."""
    return m.select_columns(perm)


def random_selfdual(k: int, rng: random.Random) -> BitMatrix:
    """Generator of a random self-dual ``[2k, k]`` code.

    Starts from ``[I_1 | I_1]`` and applies building-up steps with random
    odd-weight vectors, then a random column permutation and row mixing.
    """
    if k < 1:
        raise ParameterError("k must be >= 1")
    g = BitMatrix((0b11,), 2)
    while g.nrows < k:
        while True:
            x = rng.getrandbits(g.ncols)
            if x.bit_count() & 1:
                break
        g = build_up_selfdual(g, x)
    perm = list(range(g.ncols))
    rng.shuffle(perm)
    g = permute_columns(g, perm)
    rows = list(g.rows)
    for _ in range(2 * k):
        i, j = rng.randrange(k), rng.randrange(k)
        if i != j:
            rows[i] ^= rows[j]
    return BitMatrix(tuple(rows), g.ncols)


def all_selfdual_codes(n: int) -> list[LinearCode]:
    """Every self-dual code of length ``n`` (distinct codes, not classes).

    Grows self-orthogonal codes one even-weight orthogonal vector at a time
    and deduplicates on the canonical RREF basis.
    """
    if n % 2 or n < 2:
        raise ParameterError("length must be a positive even number")
    evens = [v for v in range(1, 1 << n) if not v.bit_count() & 1]
    level = {LinearCode.zero(n)}
    for _ in range(n // 2):
        nxt = set()
        for code in level:
            rows = code.basis.rows
            for v in evens:
                if v in code:
                    continue
                if any((v & r).bit_count() & 1 for r in rows):
                    continue
                nxt.add(LinearCode.span(rows + (v,), n))
        level = nxt
    return sorted(level, key=lambda c: c.basis.rows)
