"""Fixture-driven regression checks with one verdict line each.

Every check takes the fixture directory so a modified copy of the shipped
data can be checked the same way. Randomized checks take an explicit seed.
"""

from __future__ import annotations

import csv
import math
import random
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Callable

from .codeparams import dz_enumeration_size, exact_dz, params, reference_table_pipeline
from .constructions import (
    block_diag,
    building_up,
    concat_columns,
    direct_sum,
    extend,
    pad_with_selfdual,
    plotkin_variants,
    row_pair_sum,
    shorten,
)
from .errors import TriCodeError
from .fixtures import fixture_dir, load_fixture
from .gf2core import BitMatrix, BitVector
from .recipe import run_recipe
from .selfdual_search import (
    SelfDualCode,
    greedy_search,
    all_selfdual_codes,
    bound_lower,
    classify_selfdual_triortho,
    min_k_for_dimension,
    random_selfdual,
)
from .triortho import TriMatrix, check_trimatrix, check_trispace, partition_rows, random_trimatrix

TRI_FIXTURES = ("g14_bh", "g15_ext", "g16", "g1_16", "g2_15", "g3_14")

PIPELINE_EXPECTED = {"G2": "[[15,1,3]]", "G3": "[[14,2,2]]", "G4": "[[29,3,2]]", "G5": "[[30,2,3]]"}

DIMENSION_TABLE = {
    3: (4, 3), 4: (7, 5), 5: (11, 8), 6: (16, 12),
    7: (22, 17), 8: (29, 23), 9: (37, 30), 10: (46, 38),
}

REQUIRED_CELLS = {(30, 2): 3, (38, 2): 3, (40, 2): 3, (41, 3): 2, (44, 2): 3, (45, 3): 3, (60, 4): 3}

SEARCH_START = "1000101001"
SEARCH_MEMBER = "0000010100"


@dataclass(frozen=True)
class CheckResult:
    name: str
    ok: bool
    detail: str = ""

    def line(self) -> str:
        verdict = "PASS" if self.ok else "FAIL"
        return f"{verdict} {self.name}" + (f": {self.detail}" if self.detail else "")


class MissingFixture(Exception):
    pass


def _dir(directory: str | Path | None) -> Path:
    return fixture_dir() if directory is None else Path(directory)


def _load(name: str, directory: str | Path | None) -> BitMatrix:
    path = _dir(directory) / f"{name}.txt"
    if not path.is_file():
        raise MissingFixture(str(path))
    return load_fixture(name, _dir(directory))


def _permuted(m: BitMatrix, rng: random.Random) -> BitMatrix:
    perm = list(range(m.ncols))
    rng.shuffle(perm)
    return m.select_columns(perm)


def random_small_trimatrix(
    rng: random.Random, pool: list[BitMatrix], max_n: int = 16, max_log2: int = 11
) -> TriMatrix:
    """A random triorthogonal matrix with ``k >= 1`` and a cheap ``d_Z`` enumeration.

    Half the draws are column permutations of ``pool`` members, the rest
    come from :func:`random_trimatrix`.
    """
    while True:
        if pool and rng.random() < 0.5:
            m = _permuted(rng.choice(pool), rng)
        else:
            n = rng.randint(4, max_n)
            m = random_trimatrix(n, rng.randint(1, 3), rng.randint(1, 5), rng)
        tri = partition_rows(m)
        if tri.k >= 1 and tri.n <= max_n and dz_enumeration_size(tri) <= max_log2:
            return tri


def check_fixture_trimatrix(name: str, directory: str | Path | None = None) -> CheckResult:
    report = check_trimatrix(_load(name, directory))
    detail = "" if report.ok else f"rows {report.first_violation} have odd overlap"
    return CheckResult(f"check_trimatrix {name}", report.ok, detail)


def check_fixture_params(directory: str | Path | None = None) -> list[CheckResult]:
    path = _dir(directory) / "expected_params.csv"
    if not path.is_file():
        raise MissingFixture(str(path))
    out = []
    with path.open() as fh:
        for row in csv.DictReader(fh):
            name = row["name"]
            want = (int(row["n"]), int(row["k"]), int(row["dz"]))
            try:
                p = params(partition_rows(_load(name, directory)))
                got = (p.n, p.k, p.dz)
            except TriCodeError as exc:
                out.append(CheckResult(f"params {name}", False, str(exc)))
                continue
            out.append(CheckResult(f"params {name}", got == want, f"got [[{got[0]},{got[1]},{got[2]}]]"))
    return out


def check_pipeline(directory: str | Path | None = None) -> CheckResult:
    path = _dir(directory) / "worked_example.recipe"
    if not path.is_file():
        raise MissingFixture(str(path))
    try:
        run = run_recipe(path)
    except TriCodeError as exc:
        return CheckResult("recipe pipeline", False, str(exc))
    got = {}
    for node_id in PIPELINE_EXPECTED:
        r = run[node_id]
        got[node_id] = str(r.params) if r.params is not None and r.method == "exact" else "n/a"
    ok = got == PIPELINE_EXPECTED
    return CheckResult("recipe pipeline", ok, " ".join(f"{k}={v}" for k, v in got.items()))


def _pool(directory: str | Path | None) -> list[BitMatrix]:
    return [_load(name, directory) for name in ("g14_bh", "g15_ext", "g2_15", "g3_14")]


def check_direct_sum_rule(directory: str | Path | None = None, seed: int = 0, pairs: int = 50) -> CheckResult:
    rng = random.Random(seed)
    pool = _pool(directory)
    bad = 0
    for _ in range(pairs):
        a, b = random_small_trimatrix(rng, pool), random_small_trimatrix(rng, pool)
        if exact_dz(direct_sum(a, b)) != min(exact_dz(a), exact_dz(b)):
            bad += 1
    return CheckResult("direct sum rule", bad == 0, f"{bad} failures in {pairs} pairs")


def check_padding_rule(directory: str | Path | None = None, seed: int = 0, count: int = 20) -> CheckResult:
    a = partition_rows(_load("g2_15", directory))
    example = exact_dz(pad_with_selfdual(a, 3))
    rng = random.Random(seed)
    pool = _pool(directory)
    bad = 0
    for _ in range(count):
        r = random_small_trimatrix(rng, pool)
        d = exact_dz(r)
        bad += sum(exact_dz(pad_with_selfdual(r, t)) != d for t in (1, 2, 3))
    ok = example == 3 and bad == 0
    return CheckResult("padding rule", ok, f"example d_Z={example}, {bad} failures in {3 * count} cases")


def check_dimension_table() -> CheckResult:
    wrong = [
        r for r, (gen, uni) in DIMENSION_TABLE.items()
        if (min_k_for_dimension(r), min_k_for_dimension(r, unital=True)) != (gen, uni)
    ]
    return CheckResult("dimension table", not wrong, f"{16 - 2 * len(wrong)}/16 cells" if wrong else "16/16 cells")


def check_search_fixture(directory: str | Path | None = None) -> CheckResult:
    sd = SelfDualCode.from_matrix(_load("selfdual10", directory))
    y = BitVector.from_str(SEARCH_START).value
    w = BitVector.from_str(SEARCH_MEMBER).value
    state = greedy_search(sd, sd.ones, y, "first")
    span = state.span
    ok = (
        state.size == 4
        and check_trispace(span)
        and sd.ones in state.H
        and w in state.H
        and bound_lower(sd.k) == 3
        and bound_lower(sd.k) <= state.size <= sd.k
    )
    for policy in ("minweight", "seeded:0", "seeded:1"):
        ok = ok and greedy_search(sd, sd.ones, y, policy).size >= 4
    return CheckResult("greedy search fixture", ok, "H = {" + ", ".join(map(str, state.vectors())) + "}")


def check_selfdual_classification(max_length: int = 8) -> CheckResult:
    disagree = 0
    counts = []
    for n in range(2, max_length + 1, 2):
        positives = 0
        for code in all_selfdual_codes(n):
            c = classify_selfdual_triortho(code.basis)
            disagree += not c.consistent
            positives += c.is_trispace
        counts.append(positives)
        # the positives are exactly the pairings of the n coordinates
        disagree += positives != math.prod(range(1, n, 2))
    return CheckResult("self-dual classification", disagree == 0, f"trispace counts {counts}, {disagree} disagreements")


def check_search_bounds(seed: int = 0, codes: int = 200) -> CheckResult:
    rng = random.Random(seed)
    bad = 0
    for _ in range(codes):
        k = rng.randint(5, 12)
        sd = SelfDualCode.from_matrix(random_selfdual(k, rng))
        basis = [b for b in sd.code.basis.rows if b != sd.ones]
        runs = [(sd.ones, rng.choice(basis), True)]
        a, b = rng.sample(sd.code.basis.rows, 2)
        runs.append((a, b, sd.ones in (a, b)))
        for y, z, unital in runs:
            h = greedy_search(sd, y, z).size
            bad += not bound_lower(k, unital) <= h <= k
            bad += k > math.comb(h + 1, 2)
            bad += unital and k > math.comb(h, 2) + 1
    return CheckResult("search bounds", bad == 0, f"{bad} violations in {2 * codes} runs")


def check_reference_cells(max_log2: int = 24) -> CheckResult:
    cells = {(c.n, c.k): c for c in reference_table_pipeline(verify_max_log2=max_log2)}
    problems = []
    for key, d in REQUIRED_CELLS.items():
        c = cells.get(key)
        if c is None or c.dz != d or c.verified is False:
            problems.append(key)
    unreachable = sorted((c.n, c.k) for c in cells.values() if c.reference_dz is not None and not c.derivable)
    checked = sum(c.verified is True for c in cells.values())
    detail = f"{len(REQUIRED_CELLS) - len(problems)}/{len(REQUIRED_CELLS)} required cells"
    detail += f", {checked} cross-checked, {len(unreachable)} cells need external seeds"
    return CheckResult("reference table cells", not problems, detail)


def _closure_case(rng: random.Random) -> BitMatrix:
    op = rng.choice(("shorten", "extend", "concat", "block_diag", "plotkin", "row_pair_sum", "building_up"))
    n = rng.randint(3, 14)
    g = BitMatrix((), n)
    while g.nrows == 0:
        g = random_trimatrix(n, rng.randint(0, 3), rng.randint(1, 5), rng)
    if op == "shorten":
        return shorten(g, rng.randrange(n)).matrix
    if op == "extend":
        return extend(g, rng.randrange(g.nrows)).matrix
    if op in ("concat", "block_diag"):
        if op == "concat":
            h = random_trimatrix(rng.randint(3, 14), g.nrows, 0, rng)
            # give h the same row count as g by padding with zero rows
            h = BitMatrix(h.rows + (0,) * (g.nrows - h.nrows), h.ncols)
            return concat_columns(g, h)
        return block_diag(g, random_trimatrix(rng.randint(3, 14), 2, 2, rng))
    if op == "plotkin":
        return plotkin_variants(partition_rows(g))[rng.randrange(2)]
    if op == "row_pair_sum":
        idx = list(range(g.nrows))
        rng.shuffle(idx)
        r = rng.randint(0, g.nrows // 2)
        return row_pair_sum(g, idx[:r], idx[r : 2 * r])
    return building_up(g, BitVector(rng.getrandbits(n), n))


def check_closure(seed: int = 0, count: int = 1000, seconds: float = 30.0) -> CheckResult:
    rng = random.Random(seed)
    start = time.perf_counter()
    bad = sum(not check_trimatrix(_closure_case(rng)).ok for _ in range(count))
    fast = time.perf_counter() - start < seconds
    detail = f"{bad} failures in {count} applications" + ("" if fast else f", over {seconds:g} s")
    return CheckResult("construction closure", bad == 0 and fast, detail)


def reproduce_fixtures(directory: str | Path | None = None, seed: int = 0) -> list[CheckResult]:
    """Run every check; a missing file becomes a failing report line."""
    jobs: list[tuple[str, Callable[[], CheckResult | list[CheckResult]]]] = []
    for name in TRI_FIXTURES:
        jobs.append((f"check_trimatrix {name}", lambda name=name: check_fixture_trimatrix(name, directory)))
    jobs += [
        ("params", lambda: check_fixture_params(directory)),
        ("recipe pipeline", lambda: check_pipeline(directory)),
        ("direct sum rule", lambda: check_direct_sum_rule(directory, seed)),
        ("padding rule", lambda: check_padding_rule(directory, seed)),
        ("dimension table", check_dimension_table),
        ("greedy search fixture", lambda: check_search_fixture(directory)),
        ("self-dual classification", check_selfdual_classification),
        ("search bounds", lambda: check_search_bounds(seed)),
        ("reference table cells", check_reference_cells),
        ("construction closure", lambda: check_closure(seed)),
    ]
    results: list[CheckResult] = []
    for name, job in jobs:
        try:
            out = job()
        except MissingFixture as exc:
            results.append(CheckResult(name, False, f"missing fixture file {exc}"))
            continue
        except TriCodeError as exc:
            results.append(CheckResult(name, False, f"{type(exc).__name__}: {exc}"))
            continue
        results.extend(out if isinstance(out, list) else [out])
    return results
