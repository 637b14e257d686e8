"""Line-based construction recipes.

A recipe is a list of lines, one definition each::

    # comment
    leaf G = g16.txt
    node G1 = rref G
    node G2 = puncture G1 0
    node G4 = dsum G2 G2

Leaf paths are relative to the recipe file; a bare fixture name such as
``g16`` also works. Nodes may only refer to ids defined on earlier lines,
so recipes are acyclic by construction.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable

from . import constructions as cons
from .codeparams import CodeParams, direct_sum_params, dz_enumeration_size, params
from .errors import BudgetExceededError, RecipeError, TriCodeError
from .fixtures import FIXTURE_NAMES, load_fixture
from .gf2core import DEFAULT_LIMIT, BitMatrix, BitVector, LinearCode, rank, rref
from .matfile import read_matrix, write_matrix
from .triortho import TriMatrix, check_trimatrix, partition_rows, space_to_trimatrix


@dataclass(frozen=True)
class Step:
    id: str
    op: str
    args: tuple[str, ...]
    line: int


@dataclass
class NodeResult:
    id: str
    op: str
    matrix: BitMatrix
    params: CodeParams | None = None
    method: str = ""
    warnings: list[str] = field(default_factory=list)
    path: Path | None = None


@dataclass
class RecipeRun:
    nodes: list[NodeResult]

    def __getitem__(self, node_id: str) -> NodeResult:
        for r in self.nodes:
            if r.id == node_id:
                return r
        raise KeyError(node_id)


def parse_recipe(text: str) -> list[Step]:
    steps: list[Step] = []
    seen: set[str] = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, sep, body = line.partition("=")
        words = head.split()
        if not sep or len(words) != 2 or words[0] not in ("leaf", "node"):
            raise RecipeError(f"line {lineno}: expected 'leaf <id> = <path>' or 'node <id> = <op> ...'")
        kind, node_id = words
        rhs = body.split()
        if not rhs:
            raise RecipeError(f"line {lineno}: nothing after '='")
        if node_id in seen:
            raise RecipeError(f"line {lineno}: id {node_id!r} defined twice")
        if kind == "leaf":
            if len(rhs) != 1:
                raise RecipeError(f"line {lineno}: a leaf takes exactly one path")
            step = Step(node_id, "leaf", tuple(rhs), lineno)
        else:
            op, args = rhs[0], tuple(rhs[1:])
            if op not in OPS:
                raise RecipeError(f"line {lineno}: unknown operation {op!r}")
            arity, kinds = OPS[op][0], OPS[op][1]
            if len(args) != arity:
                raise RecipeError(f"line {lineno}: {op} takes {arity} arguments, got {len(args)}")
            for a, is_ref in zip(args, kinds):
                if is_ref and a not in seen:
                    raise RecipeError(f"line {lineno}: {a!r} is not defined on an earlier line")
            step = Step(node_id, op, args, lineno)
        seen.add(node_id)
        steps.append(step)
    return steps


def _int(s: str) -> int:
    try:
        return int(s)
    except ValueError:
        raise RecipeError(f"expected an integer, got {s!r}") from None


def _pairs(spec: str) -> tuple[list[int], list[int]]:
    """``0:1,2:3`` -> ``([0, 2], [1, 3])``."""
    a, b = [], []
    for item in spec.split(","):
        x, _, y = item.partition(":")
        a.append(_int(x))
        b.append(_int(y))
    return a, b


def _tri(m: BitMatrix) -> TriMatrix:
    return partition_rows(m)


def _shorten(m: BitMatrix, i: str, warnings: list[str]) -> BitMatrix:
    res = cons.shorten(m, _int(i))
    warnings.extend(res.warnings)
    return res.matrix


def _plotkin(m: BitMatrix, which: str, warnings: list[str]) -> BitMatrix:
    if which not in ("prime", "doubleprime"):
        raise RecipeError(f"plotkin variant must be prime or doubleprime, got {which!r}")
    gp, gpp = cons.plotkin_variants(_tri(m))
    return gp if which == "prime" else gpp


# op -> (arity, which args are node references, builder(inputs..., warnings))
OPS: dict[str, tuple[int, tuple[bool, ...], Callable[..., BitMatrix]]] = {
    "rref": (1, (True,), lambda m, w: rref(m)[0]),
    "fromspace": (2, (True, False), lambda m, k, w: space_to_trimatrix(LinearCode.from_matrix(m), _int(k)).matrix),
    "shorten": (2, (True, False), _shorten),
    "extend": (2, (True, False), lambda m, r, w: cons.extend(m, _int(r)).matrix),
    "puncture": (2, (True, False), lambda m, j, w: cons.puncture(m, _int(j)).matrix),
    "dsum": (2, (True, True), lambda a, b, w: cons.direct_sum(_tri(a), _tri(b)).matrix),
    "concat": (2, (True, True), lambda a, b, w: cons.concat_columns(a, b)),
    "plotkin": (2, (True, False), _plotkin),
    "buildup": (2, (True, False), lambda m, x, w: cons.building_up(m, BitVector.from_str(x))),
    "pad": (2, (True, False), lambda m, t, w: cons.pad_with_selfdual(_tri(m), _int(t)).matrix),
    "rowsum": (2, (True, False), lambda m, spec, w: cons.row_pair_sum(m, *_pairs(spec))),
}


def _evaluate(step: Step, m: BitMatrix, done: dict[str, NodeResult], limit: int) -> tuple[CodeParams | None, str]:
    """Parameters of a node result and how they were obtained."""
    report = check_trimatrix(m)
    if not report.ok:
        return None, f"n/a: not triorthogonal (rows {report.first_violation})"
    if rank(m) != m.nrows:
        return None, "n/a: rank deficient"
    tri = partition_rows(m)
    if tri.k == 0:
        return CodeParams(tri.n, 0), "n/a: no odd-weight rows"
    try:
        return params(tri, limit), "exact"
    except BudgetExceededError as exc:
        bound = exc.upper_bound
    # fall back to the composition rules where one applies
    inputs = [done[a].params for a in step.args if a in done]
    if step.op == "dsum" and all(p is not None and p.dz is not None for p in inputs):
        return direct_sum_params(*inputs), "compositional"
    if step.op == "pad" and inputs[0] is not None and inputs[0].dz is not None:
        return CodeParams(tri.n, tri.k, inputs[0].dz), "compositional"
    note = f"budget exceeded (2^{dz_enumeration_size(tri)} vectors)"
    if bound is not None:
        note += f"; sampled upper bound {bound}"
    return CodeParams(tri.n, tri.k), note


def _load_leaf(ref: str, base: Path | None) -> BitMatrix:
    path = Path(ref) if base is None else base / ref
    if path.is_file():
        return read_matrix(path)
    if ref in FIXTURE_NAMES:
        return load_fixture(ref)
    raise RecipeError(f"matrix file {str(path)!r} does not exist")


def run_steps(
    steps: list[Step],
    base: Path | None = None,
    outdir: Path | None = None,
    limit: int = DEFAULT_LIMIT,
) -> RecipeRun:
    done: dict[str, NodeResult] = {}
    for step in steps:
        warnings: list[str] = []
        where = f"line {step.line}: node {step.id} = {step.op} {' '.join(step.args)}".rstrip()
        try:
            if step.op == "leaf":
                m = _load_leaf(step.args[0], base)
            else:
                arity, kinds, build = OPS[step.op]
                args = [done[a].matrix if ref else a for a, ref in zip(step.args, kinds)]
                m = build(*args, warnings)
            p, method = _evaluate(step, m, done, limit)
        except TriCodeError as exc:
            raise RecipeError(f"{where}: {exc}") from exc
        if method.startswith("n/a: rank"):
            warnings.append("result is rank deficient; parameters not applicable")
        res = NodeResult(step.id, step.op, m, p, method, warnings)
        if outdir is not None:
            outdir.mkdir(parents=True, exist_ok=True)
            res.path = outdir / f"{step.id}.txt"
            write_matrix(res.path, m, comment=where)
        done[step.id] = res
    return RecipeRun(list(done.values()))


def run_recipe(path: str | Path, outdir: str | Path | None = None, limit: int = DEFAULT_LIMIT) -> RecipeRun:
    """Execute a recipe file top to bottom, optionally writing every node's matrix."""
    path = Path(path)
    steps = parse_recipe(path.read_text())
    return run_steps(steps, base=path.parent, outdir=None if outdir is None else Path(outdir), limit=limit)


def format_run(run: RecipeRun, fmt: str = "text") -> str:
    lines = []
    if fmt == "csv":
        lines.append("node,op,nrows,ncols,n,k,dz,method")
    for r in run.nodes:
        p = r.params
        if fmt == "csv":
            n, k, d = ("", "", "") if p is None else (p.n, p.k, "" if p.dz is None else p.dz)
            lines.append(f"{r.id},{r.op},{r.matrix.nrows},{r.matrix.ncols},{n},{k},{d},{r.method}")
        else:
            shown = "-" if p is None else str(p)
            shape = f"{r.matrix.nrows}x{r.matrix.ncols}"
            lines.append(f"{r.id:<8} {r.op:<9} {shape:<7} {shown:<14} {r.method}")
            lines.extend(f"  warning: {w}" for w in r.warnings)
    return "\n".join(lines)
