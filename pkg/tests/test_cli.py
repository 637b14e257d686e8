from __future__ import annotations

import shutil

import pytest

from tricode.cli import main
from tricode.fixtures import fixture_dir, load_fixture
from tricode.matfile import parse_matrix, read_matrix

DATA = fixture_dir()


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_help(capsys):
    code, out, _ = run(capsys, "--help")
    assert code == 0 and "reproduce" in out


def test_params(capsys):
    code, out, _ = run(capsys, "params", DATA / "g14_bh.txt")
    assert code == 0
    assert out.startswith("[[14,2,2]]")
    code, out, _ = run(capsys, "params", DATA / "g15_ext.txt", "--format", "csv")
    assert out.splitlines() == ["n,k,dz,gamma", "15,1,3,2.464974"]


def test_params_without_odd_rows(capsys):
    code, _, err = run(capsys, "params", DATA / "g16.txt")
    assert code == 1 and "k = 0" in err


def test_check(capsys):
    code, out, _ = run(capsys, "check", DATA / "g14_bh.txt")
    assert code == 0 and out.startswith("PASS")
    code, out, _ = run(capsys, "check", DATA / "selfdual8.txt")
    assert code == 1
    assert "first violating triple: (0, 1, 2)" in out


def test_exit_codes(capsys, tmp_path):
    assert run(capsys, "frobnicate")[0] == 2
    assert run(capsys, "params", tmp_path / "missing.txt")[0] == 2
    bad = tmp_path / "bad.txt"
    bad.write_text("2 3\n101\n")
    assert run(capsys, "params", bad)[0] == 1
    code, _, err = run(capsys, "params", DATA / "g2_15.txt", "--limit", "2^6")
    assert code == 3 and "exceeds limit 64" in err
    # an out-of-range column is a bad argument
    assert run(capsys, "shorten", DATA / "g14_bh.txt", "-i", "99")[0] == 2
    assert run(capsys, "search", DATA / "selfdual10.txt", "--policy", "nonsense")[0] == 2
    assert run(capsys, "buildup", DATA / "g14_bh.txt", "-x", "10x")[0] == 1


def test_matrix_commands_round_trip(capsys, tmp_path):
    code, out, _ = run(capsys, "extend", DATA / "g14_bh.txt", "-r", "0", "--params")
    assert code == 0
    assert "params [[15,1,3]]" in out.splitlines()[0]
    assert parse_matrix(out).ncols == 15

    target = tmp_path / "sum.txt"
    code, out, _ = run(capsys, "dsum", DATA / "g2_15.txt", DATA / "g3_14.txt", "-o", target, "--params")
    assert code == 0 and "[[29,3,2]]" in out
    assert read_matrix(target).ncols == 29

    code, out, _ = run(capsys, "puncture", DATA / "g16.txt", "-j", "0", "--params")
    assert code == 0 and parse_matrix(out).ncols == 15
    # without row reduction the weight-1 column is still the first one
    assert parse_matrix(out).rows[1:] == load_fixture("g2_15").rows[1:]

    code, out, _ = run(capsys, "pad", DATA / "g2_15.txt", "-t", "3", "--params")
    assert "[[21,1,3]]" in out

    code, out, err = run(capsys, "shorten", DATA / "g14_bh.txt", "-i", "0")
    assert code == 0 and parse_matrix(out).ncols == 13

    code, out, _ = run(capsys, "plotkin", DATA / "g14_bh.txt", "--variant", "prime")
    assert code == 0 and parse_matrix(out).ncols == 28


def test_search(capsys):
    code, out, _ = run(capsys, "search", DATA / "selfdual10.txt", "--start", "ones,1000101001")
    assert code == 0
    assert "|H| = 4" in out
    assert "  0000010100" in out
    assert "triorthogonal span: yes" in out
    code, out, _ = run(capsys, "search", DATA / "selfdual10.txt", "--all", "--budget", "8")
    assert code == 0 and "triorthogonal span: yes" in out


def test_classify(capsys):
    code, out, _ = run(capsys, "classify", DATA / "selfdual8.txt")
    assert code == 0 and "triorthogonal space: no" in out
    code, out, _ = run(capsys, "classify", DATA / "g14_bh.txt")
    assert code == 1 and "self-dual: no" in out


def test_recipe_command(capsys, tmp_path):
    code, out, _ = run(capsys, "recipe", DATA / "worked_example.recipe", "--format", "csv", "-o", tmp_path)
    assert code == 0
    assert "G5,dsum,10,30,30,2,3,exact" in out.splitlines()
    assert (tmp_path / "G4.txt").is_file()


def test_table_command(capsys):
    code, out, _ = run(capsys, "table", "--max-n", "45", "--max-k", "3", "--format", "csv", "--verify-log2", "16")
    assert code == 0
    assert any(line.startswith("44,2,3,3,match") for line in out.splitlines())


@pytest.mark.parametrize(
    "argv",
    [
        ("params", DATA / "g14_bh.txt"),
        ("search", DATA / "selfdual10.txt", "--policy", "seeded", "--seed", "4"),
        ("reproduce",),
    ],
)
def test_deterministic(capsys, argv):
    a = run(capsys, *argv)
    b = run(capsys, *argv)
    assert a == b


def test_reproduce(capsys):
    code, out, _ = run(capsys, "reproduce")
    assert code == 0
    lines = out.splitlines()
    assert lines and all(line.startswith("PASS ") for line in lines)


def test_reproduce_catches_a_flipped_bit(capsys, tmp_path):
    shutil.copytree(DATA, tmp_path / "data")
    path = tmp_path / "data" / "g14_bh.txt"
    lines = path.read_text().splitlines()
    row = next(i for i, line in enumerate(lines) if set(line) <= {"0", "1"} and len(line) == 14)
    lines[row] = ("1" if lines[row][0] == "0" else "0") + lines[row][1:]
    path.write_text("\n".join(lines) + "\n")
    code, out, _ = run(capsys, "reproduce", "--fixtures", tmp_path / "data")
    assert code == 1
    assert any(line.startswith("FAIL check_trimatrix g14_bh") for line in out.splitlines())


def test_reproduce_reports_missing_file(capsys, tmp_path):
    shutil.copytree(DATA, tmp_path / "data")
    (tmp_path / "data" / "selfdual10.txt").unlink()
    code, out, _ = run(capsys, "reproduce", "--fixtures", tmp_path / "data")
    assert code == 1
    assert any("FAIL greedy search fixture: missing fixture file" in line for line in out.splitlines())
