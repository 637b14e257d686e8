"""``trio``: command-line front end.

Exit codes: 0 success, 1 validation failure, 2 usage error, 3 enumeration
budget exceeded.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Sequence

from . import constructions as cons
from .acceptance import reproduce_fixtures
from .codeparams import CodeParams, describe, exact_dz_witness, params, reference_table_pipeline
from .errors import BudgetExceededError, ParameterError, RecipeError, TriCodeError
from .gf2core import DEFAULT_LIMIT, BitMatrix, BitVector
from .matfile import format_matrix, read_matrix, write_matrix
from .recipe import format_run, run_recipe
from .selfdual_search import (
    SelfDualCode,
    greedy_search,
    greedy_search_all_starts,
    bound_lower,
    classify_selfdual_triortho,
    is_selfdual,
    parse_policy,
)
from .triortho import check_trimatrix, check_trispace, partition_rows

EXIT_OK, EXIT_INVALID, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _limit(text: str) -> int:
    """``67108864``, ``2^26`` or ``2**26``."""
    t = text.replace("**", "^")
    try:
        if "^" in t:
            base, exp = t.split("^", 1)
            return int(base) ** int(exp)
        return int(t)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer or power: {text!r}") from None


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--limit", type=_limit, default=argparse.SUPPRESS, help="enumeration budget (default 2^26)")
    p.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="seed for randomized commands (default 0)")
    p.add_argument("--policy", default=argparse.SUPPRESS, help="first, minweight, seeded or seeded:N")
    p.add_argument("--format", choices=("text", "csv"), default=argparse.SUPPRESS, help="report format")
    return p


def _out_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("-o", "--output", type=Path, help="write the matrix here instead of stdout")
    p.add_argument("--params", action="store_true", help="also report [[n,k,d_Z]]")


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="trio", description="Construct, search and evaluate binary triorthogonal matrices.", parents=[common])
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    def add(name: str, help: str) -> argparse.ArgumentParser:
        return sub.add_parser(name, help=help, parents=[common], description=help)

    p = add("check", "check that a matrix is triorthogonal")
    p.add_argument("file", type=Path)

    p = add("shorten", "keep rows with 0 at a column and delete it")
    p.add_argument("file", type=Path)
    p.add_argument("-i", "--index", type=int, required=True)
    _out_options(p)

    p = add("extend", "prepend the indicator column of one row")
    p.add_argument("file", type=Path)
    p.add_argument("-r", "--row", type=int, required=True)
    p.add_argument("--append", action="store_true", help="add the column at the end instead")
    _out_options(p)

    p = add("puncture", "delete a column with at most one 1")
    p.add_argument("file", type=Path)
    p.add_argument("-j", "--column", type=int, required=True)
    _out_options(p)

    p = add("dsum", "block-diagonal direct sum of two matrices")
    p.add_argument("a", type=Path)
    p.add_argument("b", type=Path)
    _out_options(p)

    p = add("plotkin", "doubled matrices [G1 G1; O G0] and [O G1; G0 G0]")
    p.add_argument("file", type=Path)
    p.add_argument("--variant", choices=("prime", "doubleprime"), default="doubleprime")
    _out_options(p)

    p = add("buildup", "three-block construction from an even-weight-block matrix and a vector")
    p.add_argument("file", type=Path)
    p.add_argument("-x", required=True, help="bit string with one character per column")
    _out_options(p)

    p = add("pad", "append t disjoint weight-2 rows on 2t new columns")
    p.add_argument("file", type=Path)
    p.add_argument("-t", type=int, required=True)
    _out_options(p)

    p = add("params", "print n, k, d_Z and the distillation exponent")
    p.add_argument("file", type=Path)

    p = add("search", "greedy triorthogonal subspace of a self-dual code")
    p.add_argument("file", type=Path)
    p.add_argument("--start", help="two codewords 'a,b' as bit strings; 'ones' is the all-one vector")
    p.add_argument("--all", action="store_true", help="try many starting pairs and keep the best")
    p.add_argument("--budget", type=int, default=32, help="number of starting pairs with --all")
    p.add_argument("-o", "--output", type=Path, help="write H as a matrix file")

    p = add("classify", "self-dual and triorthogonal properties of a generator")
    p.add_argument("file", type=Path)

    p = add("table", "rebuild the comparison table from the shipped seeds")
    p.add_argument("--max-n", type=int, default=66)
    p.add_argument("--max-k", type=int, default=7)
    p.add_argument("--verify-log2", type=int, default=24, help="cross-check cells up to 2^N enumerations")
    p.add_argument("--no-verify", action="store_true")

    p = add("recipe", "run a construction recipe")
    p.add_argument("file", type=Path)
    p.add_argument("-o", "--outdir", type=Path, help="write every node's matrix here")

    p = add("reproduce", "run the fixture regression checks")
    p.add_argument("--fixtures", type=Path, help="fixture directory (default: shipped data)")
    return parser


def _read(path: Path) -> BitMatrix:
    if not path.is_file():
        raise UsageError(f"no such file: {path}")
    return read_matrix(path)


def _emit_matrix(args: argparse.Namespace, m: BitMatrix, what: str) -> None:
    comment = what
    if getattr(args, "params", False):
        try:
            p = params(partition_rows(m), args.limit)
            comment += f"; params {p}"
        except BudgetExceededError as exc:
            comment += f"; params [[{m.ncols},?,?]] ({exc})"
        except TriCodeError as exc:
            comment += f"; params not applicable ({exc})"
    if args.output is None:
        sys.stdout.write(format_matrix(m, comment))
    else:
        write_matrix(args.output, m, comment)
        print(f"wrote {args.output}: {comment}")


def cmd_check(args: argparse.Namespace) -> int:
    m = _read(args.file)
    report = check_trimatrix(m)
    odd = sum(w & 1 for w in m.row_weights())
    if args.format == "csv":
        verdict = "PASS" if report.ok else "FAIL"
        viol = "" if report.first_violation is None else " ".join(map(str, report.first_violation))
        print("verdict,odd_rows,even_rows,violation")
        print(f"{verdict},{odd},{m.nrows - odd},{viol}")
    else:
        print("PASS" if report.ok else "FAIL")
        print(f"odd rows: {odd}, even rows: {m.nrows - odd}")
        if not report.ok:
            kind = "pair" if len(report.first_violation) == 2 else "triple"
            print(f"first violating {kind}: {report.first_violation}")
    return EXIT_OK if report.ok else EXIT_INVALID


def cmd_shorten(args: argparse.Namespace) -> int:
    res = cons.shorten(_read(args.file), args.index)
    for w in res.warnings:
        print(f"warning: {w}", file=sys.stderr)
    _emit_matrix(args, res.matrix, f"shortened at column {args.index}")
    return EXIT_OK


def cmd_extend(args: argparse.Namespace) -> int:
    g = cons.extend(partition_rows(_read(args.file)), args.row, append=args.append)
    _emit_matrix(args, g.matrix, f"extended at row {args.row}")
    return EXIT_OK


def cmd_puncture(args: argparse.Namespace) -> int:
    g = cons.puncture(_read(args.file), args.column)
    _emit_matrix(args, g.matrix, f"column {args.column} removed")
    return EXIT_OK


def cmd_dsum(args: argparse.Namespace) -> int:
    g = cons.direct_sum(partition_rows(_read(args.a)), partition_rows(_read(args.b)))
    _emit_matrix(args, g.matrix, "direct sum")
    return EXIT_OK


def cmd_plotkin(args: argparse.Namespace) -> int:
    gp, gpp = cons.plotkin_variants(partition_rows(_read(args.file)))
    label = "[G1 G1; O G0]" if args.variant == "prime" else "[O G1; G0 G0]"
    _emit_matrix(args, gp if args.variant == "prime" else gpp, label)
    return EXIT_OK


def cmd_buildup(args: argparse.Namespace) -> int:
    m = _read(args.file)
    x = BitVector.from_str(args.x)
    _emit_matrix(args, cons.building_up(m, x), f"built up with x={args.x}")
    return EXIT_OK


def cmd_pad(args: argparse.Namespace) -> int:
    g = cons.pad_with_selfdual(partition_rows(_read(args.file)), args.t)
    _emit_matrix(args, g.matrix, f"padded with t={args.t}")
    return EXIT_OK


def cmd_params(args: argparse.Namespace) -> int:
    tri = partition_rows(_read(args.file))
    if tri.k == 0:
        print("k = 0: no odd-weight rows, d_Z undefined", file=sys.stderr)
        return EXIT_INVALID
    d, witness = exact_dz_witness(tri, args.limit)
    p = CodeParams(tri.n, tri.k, d)
    g = p.gamma
    g_text = "undefined" if g is None else f"{g:.4f}"
    if args.format == "csv":
        print("n,k,dz,gamma")
        print(f"{p.n},{p.k},{p.dz},{'' if g is None else f'{g:.6f}'}")
    else:
        print(f"{p}  n={p.n} k={p.k} d_Z={p.dz} gamma={g_text}")
        print(f"minimum-weight logical operator: {witness}")
    return EXIT_OK


def _parse_start(text: str, sd: SelfDualCode) -> tuple[int, int]:
    parts = text.split(",")
    if len(parts) != 2:
        raise UsageError("--start takes two comma-separated codewords")
    out = []
    for s in parts:
        s = s.strip()
        out.append(sd.ones if s == "ones" else BitVector.from_str(s).value)
    return out[0], out[1]


def cmd_search(args: argparse.Namespace) -> int:
    sd = SelfDualCode.from_matrix(_read(args.file))
    policy = args.policy
    if args.all:
        state = greedy_search_all_starts(sd, args.budget, policy)
    else:
        if args.start:
            y, z = _parse_start(args.start, sd)
        else:
            y = sd.ones
            z = next(b for b in sd.code.basis.rows if b != sd.ones)
        state = greedy_search(sd, y, z, policy)
    k = sd.k
    print(f"H ({state.size} vectors):")
    for v in state.vectors():
        print(f"  {v}")
    print(f"|H| = {state.size}")
    print(f"triorthogonal span: {'yes' if check_trispace(state.span) else 'no'}")
    print(f"unital: {'yes' if state.unital else 'no'}")
    print(f"bounds: {bound_lower(k)} <= |H| <= {k} (general), {bound_lower(k, unital=True)} <= |H| (all-one start)")
    if args.output is not None:
        write_matrix(args.output, state.matrix(), f"greedy subspace, |H| = {state.size}")
        print(f"wrote {args.output}")
    return EXIT_OK


def cmd_classify(args: argparse.Namespace) -> int:
    m = _read(args.file)
    sd = is_selfdual(m)
    print(f"self-dual: {'yes' if sd else 'no'}")
    if not sd:
        return EXIT_INVALID
    c = classify_selfdual_triortho(m)
    print(f"triorthogonal space: {'yes' if c.is_trispace else 'no'}")
    print(f"closed under coordinatewise product: {'yes' if c.wedge_closed else 'no'}")
    if c.permutation_witness is None:
        print("permutation witness: none")
    else:
        print(f"permutation witness: pivots {c.pivots} -> {tuple(c.free_columns[i] for i in c.permutation_witness)}")
    return EXIT_OK


def cmd_table(args: argparse.Namespace) -> int:
    cells = reference_table_pipeline(args.max_n, args.max_k, verify_max_log2=args.verify_log2, verify=not args.no_verify)
    if args.format == "csv":
        print("n,k,dz,reference_dz,status,derivable,verified,recipe")
    else:
        print(f"{'n':>3} {'k':>2} {'d_Z':>4} {'table':>5}  {'status':<11} {'derivable?':<10} {'checked':<7} recipe")
    for c in cells:
        d = "" if c.dz is None else str(c.dz)
        pd = "" if c.reference_dz is None else str(c.reference_dz)
        der = "yes" if c.derivable else ("no" if c.reference_dz is not None else "")
        ver = {True: "yes", False: "MISMATCH", None: ""}[c.verified]
        rec = "" if c.recipe is None else describe(c.recipe)
        if args.format == "csv":
            print(f'{c.n},{c.k},{d},{pd},{c.status},{der},{ver},"{rec}"')
        else:
            print(f"{c.n:>3} {c.k:>2} {d or '-':>4} {pd or '-':>5}  {c.status:<11} {der or '-':<10} {ver or '-':<7} {rec}")
    return EXIT_INVALID if any(c.verified is False for c in cells) else EXIT_OK


def cmd_recipe(args: argparse.Namespace) -> int:
    if not args.file.is_file():
        raise UsageError(f"no such file: {args.file}")
    run = run_recipe(args.file, args.outdir, args.limit)
    text = format_run(run, args.format)
    if text:
        print(text)
    return EXIT_OK


def cmd_reproduce(args: argparse.Namespace) -> int:
    results = reproduce_fixtures(args.fixtures, seed=args.seed)
    if args.format == "csv":
        print("verdict,check,detail")
    for r in results:
        if args.format == "csv":
            print(f'{"PASS" if r.ok else "FAIL"},{r.name},"{r.detail}"')
        else:
            print(r.line())
    return EXIT_OK if all(r.ok for r in results) else EXIT_INVALID


COMMANDS = {
    "check": cmd_check,
    "shorten": cmd_shorten,
    "extend": cmd_extend,
    "puncture": cmd_puncture,
    "dsum": cmd_dsum,
    "plotkin": cmd_plotkin,
    "buildup": cmd_buildup,
    "pad": cmd_pad,
    "params": cmd_params,
    "search": cmd_search,
    "classify": cmd_classify,
    "table": cmd_table,
    "recipe": cmd_recipe,
    "reproduce": cmd_reproduce,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    args.limit = getattr(args, "limit", DEFAULT_LIMIT)
    args.seed = getattr(args, "seed", 0)
    args.format = getattr(args, "format", "text")
    policy = getattr(args, "policy", "first")
    args.policy = f"seeded:{args.seed}" if policy == "seeded" else policy
    try:
        parse_policy(args.policy)
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"trio: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceededError as exc:
        print(f"trio: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except RecipeError as exc:
        print(f"trio: {exc}", file=sys.stderr)
        return EXIT_BUDGET if isinstance(exc.__cause__, BudgetExceededError) else EXIT_INVALID
    except ParameterError as exc:
        print(f"trio: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except TriCodeError as exc:
        print(f"trio: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
