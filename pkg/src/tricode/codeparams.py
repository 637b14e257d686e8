"""Parameters ``[[n, k, d_Z]]`` of triorthogonal codes.

``d_Z`` is the minimum weight over ``G0^perp \\ G^perp``: vectors orthogonal
to every even-weight row but not to every row. It is computed exactly by
enumerating ``G0^perp`` split as ``G^perp`` plus ``k`` complementary vectors,
so that the excluded subcode is recognised from the enumeration index alone.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from importlib import resources
from typing import Iterable, Union

from .constructions import block_diag, direct_sum, pad_with_selfdual
from .errors import (
    BudgetExceededError,
    NoLogicalQubitsError,
    ParameterError,
    RecipeError,
    UndefinedMetricError,
)
from .gf2core import (
    DEFAULT_LIMIT,
    BitMatrix,
    BitVector,
    LinearCode,
    dual,
    extend_basis,
    min_weight,
    min_weight_outside,
    sampled_upper_bound,
)
from .triortho import TriMatrix, partition_rows


@dataclass(frozen=True)
class CodeParams:
    """``[[n, k, d_Z]]``; ``dz`` is ``None`` when unknown.

    ``dz_lower`` carries a proven lower bound when the exact value is not
    known.
    """

    n: int
    k: int
    dz: int | None = None
    dz_lower: int | None = None

    def __post_init__(self):
        if self.n < 1 or self.k < 0:
            raise ParameterError(f"invalid parameters n={self.n}, k={self.k}")
        if self.dz is not None and self.dz < 1:
            raise ParameterError(f"d_Z={self.dz} must be >= 1")

    @property
    def exact(self) -> bool:
        return self.dz is not None

    @property
    def gamma(self) -> float | None:
        try:
            return gamma(self)
        except UndefinedMetricError:
            return None

    def __str__(self) -> str:
        if self.dz is not None:
            d = str(self.dz)
        elif self.dz_lower is not None:
            d = f">={self.dz_lower}"
        else:
            d = "?"
        return f"[[{self.n},{self.k},{d}]]"


def logical_count(g: TriMatrix) -> int:
    return g.k


def _dz_split(g: TriMatrix) -> tuple[LinearCode, list[int]]:
    """``G^perp`` and vectors completing it to a basis of ``G0^perp``."""
    dual_all = dual(LinearCode.from_matrix(g.matrix))
    dual_even = dual(LinearCode.from_matrix(g.even_rows))
    return dual_all, extend_basis(dual_all, dual_even)


def exact_dz_witness(g: TriMatrix, limit: int = DEFAULT_LIMIT) -> tuple[int, BitVector]:
    """``d_Z`` and one logical operator of that weight."""
    if g.k < 1:
        raise NoLogicalQubitsError("no odd-weight rows, so no logical qubits")
    inner, outer = _dz_split(g)
    total = 1 << (inner.dim + len(outer))
    if total > limit:
        bound = sampled_upper_bound(inner.basis.rows, outer, g.n)
        raise BudgetExceededError(total, limit, upper_bound=bound)
    w, v = min_weight_outside(inner.basis.rows, outer, g.n, limit=total)
    return w, BitVector(v, g.n)


def exact_dz(g: TriMatrix, limit: int = DEFAULT_LIMIT) -> int:
    return exact_dz_witness(g, limit)[0]


def dz_enumeration_size(g: TriMatrix) -> int:
    """``log2`` of the number of vectors :func:`exact_dz` enumerates."""
    return g.n - LinearCode.from_matrix(g.even_rows).dim


def params(g: TriMatrix, limit: int = DEFAULT_LIMIT) -> CodeParams:
    return CodeParams(g.n, g.k, exact_dz(g, limit) if g.k else None)


def plotkin_dz_bound(g: TriMatrix, limit: int = DEFAULT_LIMIT) -> int:
    """Minimum distance of the dual of ``rowspan [G0 | G0]``.

    This lower-bounds ``d_Z`` of ``[O G1; G0 G0]``.
    """
    doubled = g.even_rows.hstack(g.even_rows)
    return min_weight(dual(LinearCode.from_matrix(BitMatrix(doubled.rows, 2 * g.n))), limit)


def direct_sum_params(pa: CodeParams, pb: CodeParams) -> CodeParams:
    if pa.k < 1 or pb.k < 1:
        raise ParameterError("the direct-sum rule needs k >= 1 on both sides")
    dz = None if pa.dz is None or pb.dz is None else min(pa.dz, pb.dz)
    return CodeParams(pa.n + pb.n, pa.k + pb.k, dz)


def gamma(p: CodeParams) -> float:
    """Distillation exponent ``log(n/k) / log(d_Z)``."""
    if p.k < 1 or p.dz is None or p.dz < 2:
        raise UndefinedMetricError(f"gamma undefined for {p}")
    return math.log(p.n / p.k) / math.log(p.dz)


def gamma_family(k: int) -> float:
    """``log2((3k + 8) / k)``, the exponent of the ``[[3k+8, k, 2]]`` family."""
    if k < 1:
        raise UndefinedMetricError("gamma undefined for k < 1")
    return math.log2((3 * k + 8) / k)


# Construction trees. Leaves carry known parameters and optionally the
# matrix itself, so the same tree can be folded into parameters or built.


@dataclass(frozen=True)
class Leaf:
    params: CodeParams
    name: str = ""
    matrix: TriMatrix | None = None


@dataclass(frozen=True)
class DSum:
    left: "Recipe"
    right: "Recipe"


@dataclass(frozen=True)
class Pad:
    child: "Recipe"
    t: int


@dataclass(frozen=True)
class Extend:
    """Extension at one row; ``odd_row`` says whether that row had odd weight."""

    child: "Recipe"
    odd_row: bool = True


@dataclass(frozen=True)
class Shorten:
    """Shortening that keeps ``k`` odd-weight rows."""

    child: "Recipe"
    k: int


Recipe = Union[Leaf, DSum, Pad, Extend, Shorten]


def compositional_dz(recipe: Recipe) -> CodeParams:
    """Fold the parameter rules over a construction tree.

    Direct sums take the minimum distance and padding keeps it. Extension
    and shortening have no distance rule, so their ``dz`` is ``None``.
    """
    match recipe:
        case Leaf(params=p):
            return p
        case DSum(left=a, right=b):
            return direct_sum_params(compositional_dz(a), compositional_dz(b))
        case Pad(child=c, t=t):
            if t < 1:
                raise RecipeError(f"pad needs t >= 1, got {t}")
            p = compositional_dz(c)
            if p.k < 1:
                raise RecipeError("padding needs k >= 1")
            return CodeParams(p.n + 2 * t, p.k, p.dz)
        case Extend(child=c, odd_row=odd):
            p = compositional_dz(c)
            k = p.k - 1 if odd else p.k + 1
            if k < 0:
                raise RecipeError("extension at an odd row needs k >= 1")
            return CodeParams(p.n + 1, k)
        case Shorten(child=c, k=k):
            p = compositional_dz(c)
            if not 0 <= k <= p.k or p.n < 2:
                raise RecipeError(f"shortening cannot keep {k} odd rows of {p}")
            return CodeParams(p.n - 1, k)
    raise RecipeError(f"not a recipe node: {recipe!r}")


def build_matrix(recipe: Recipe) -> TriMatrix:
    """Materialize a tree of leaves, direct sums and pads."""
    match recipe:
        case Leaf(matrix=m) if m is not None:
            return m
        case DSum(left=a, right=b):
            return direct_sum(build_matrix(a), build_matrix(b))
        case Pad(child=c, t=t):
            return pad_with_selfdual(build_matrix(c), t)
    raise RecipeError(f"cannot build a matrix for {recipe!r}")


def describe(recipe: Recipe) -> str:
    match recipe:
        case Leaf(params=p, name=name):
            return name or str(p)
        case DSum(left=a, right=b):
            return f"dsum({describe(a)}, {describe(b)})"
        case Pad(child=c, t=t):
            return f"pad({describe(c)}, {t})"
        case Extend(child=c):
            return f"extend({describe(c)})"
        case Shorten(child=c, k=k):
            return f"shorten({describe(c)}, k={k})"
    raise RecipeError(f"not a recipe node: {recipe!r}")


# rebuilding the reference table


def reference_table() -> dict[tuple[int, int], int]:
    """Shipped ``(n, k) -> d_Z`` values of the comparison table."""
    text = resources.files("tricode.data").joinpath("reference_table.csv").read_text()
    return {(int(r["n"]), int(r["k"])): int(r["dz"]) for r in csv.DictReader(text.splitlines())}


def default_seeds() -> list[Leaf]:
    """The ``[[15,1,3]]`` and ``[[14,2,2]]`` matrices from the worked example."""
    from .fixtures import load_fixture

    seeds = []
    for name in ("g2_15", "g3_14"):
        tri = partition_rows(load_fixture(name))
        seeds.append(Leaf(params(tri), name, tri))
    return seeds


@dataclass(frozen=True)
class TableCell:
    n: int
    k: int
    dz: int | None
    recipe: Recipe | None
    reference_dz: int | None = None
    verified: bool | None = None

    @property
    def status(self) -> str:
        if self.reference_dz is None:
            return "extra"
        if self.dz is None:
            return "unreachable"
        if self.dz == self.reference_dz:
            return "match"
        return "below" if self.dz < self.reference_dz else "above"

    @property
    def derivable(self) -> bool:
        """Whether the reference value is reached from the in-repo seeds."""
        return self.dz is not None and self.reference_dz is not None and self.dz >= self.reference_dz


def _pad(node: Recipe, t: int) -> Recipe:
    if t == 0:
        return node
    if isinstance(node, Pad):
        return Pad(node.child, node.t + t)
    return Pad(node, t)


def close_under_dsum_and_pad(
    seeds: Iterable[Leaf], max_n: int, max_k: int
) -> dict[tuple[int, int], tuple[int, Recipe]]:
    """Best ``d_Z`` per ``(n, k)`` reachable by direct sums and padding.

    Padding commutes with direct sums, so the closure is every pad of the
    direct-sum closure of the seeds. Ties keep the least padding, then the
    first construction found in order of increasing ``n`` and ``k``.
    """
    core: dict[tuple[int, int], tuple[int, Recipe]] = {}
    for leaf in seeds:
        p = leaf.params
        if p.dz is None or p.k < 1:
            raise RecipeError(f"seed {leaf.name or p} needs exact params with k >= 1")
        key = (p.n, p.k)
        if p.n <= max_n and p.k <= max_k and (key not in core or core[key][0] < p.dz):
            core[key] = (p.dz, leaf)
    for n in range(1, max_n + 1):
        for k in range(1, max_k + 1):
            best = core.get((n, k))
            for (n1, k1) in sorted(core):
                n2, k2 = n - n1, k - k1
                if (n1, k1) > (n2, k2) or (n2, k2) not in core:
                    continue
                d = min(core[(n1, k1)][0], core[(n2, k2)][0])
                if best is None or d > best[0]:
                    best = (d, DSum(core[(n1, k1)][1], core[(n2, k2)][1]))
            if best is not None:
                core[(n, k)] = best
    closed: dict[tuple[int, int], tuple[int, int, Recipe]] = {}
    for (n, k), (d, node) in sorted(core.items()):
        for t in range(0, (max_n - n) // 2 + 1):
            key = (n + 2 * t, k)
            old = closed.get(key)
            if old is None or (d, -t) > (old[0], -old[1]):
                closed[key] = (d, t, _pad(node, t))
    return {key: (d, node) for key, (d, _, node) in closed.items()}


def reference_table_pipeline(
    max_n: int = 66,
    max_k: int = 7,
    seeds: Iterable[Leaf] | None = None,
    verify_max_log2: int = 24,
    verify: bool = True,
) -> list[TableCell]:
    """Derived cells for every ``(n, k)`` reached plus every reference cell.

    Derived entries whose ``d_Z`` enumeration has at most
    ``2**verify_max_log2`` vectors are rebuilt and checked with
    :func:`exact_dz`; ``verified`` is ``None`` for the rest.
    """
    closed = close_under_dsum_and_pad(default_seeds() if seeds is None else seeds, max_n, max_k)
    reference = {key: d for key, d in reference_table().items() if key[0] <= max_n and key[1] <= max_k}
    cells = []
    for key in sorted(set(closed) | set(reference)):
        d, node = closed.get(key, (None, None))
        verified = None
        if verify and node is not None:
            tri = build_matrix(node)
            if dz_enumeration_size(tri) <= verify_max_log2:
                verified = exact_dz(tri, limit=1 << verify_max_log2) == d
        cells.append(TableCell(key[0], key[1], d, node, reference.get(key), verified))
    return cells
