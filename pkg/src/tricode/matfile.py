"""Plain-text matrix files.

Format: optional ``#`` comment lines, a header line ``nrows ncols``, then
``nrows`` lines of exactly ``ncols`` characters from ``{0, 1}``. Blank lines
are ignored. The first character of a row is coordinate 0.
"""

from __future__ import annotations

from pathlib import Path

from .errors import ValidationError
from .gf2core import BitMatrix


class MatrixFormatError(ValidationError):
    pass


def parse_matrix(text: str) -> BitMatrix:
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise MatrixFormatError("missing 'nrows ncols' header")
    header = lines[0].split()
    if len(header) != 2 or not all(h.isdigit() for h in header):
        raise MatrixFormatError(f"bad header {lines[0]!r}")
    nrows, ncols = int(header[0]), int(header[1])
    body = lines[1:]
    if len(body) != nrows:
        raise MatrixFormatError(f"header says {nrows} rows, found {len(body)}")
    rows = []
    for lineno, line in enumerate(body, start=1):
        if len(line) != ncols:
            raise MatrixFormatError(f"row {lineno}: expected {ncols} characters, got {len(line)}")
        bad = set(line) - {"0", "1"}
        if bad:
            raise MatrixFormatError(f"row {lineno}: invalid characters {sorted(bad)}")
        rows.append(int(line[::-1], 2))
    return BitMatrix(tuple(rows), ncols)


def format_matrix(m: BitMatrix, comment: str | None = None) -> str:
    out = []
    if comment:
        out.extend(f"# {ln}" for ln in comment.splitlines())
    out.append(f"{m.nrows} {m.ncols}")
    out.extend("".join(str((r >> j) & 1) for j in range(m.ncols)) for r in m.rows)
    return "\n".join(out) + "\n"


def read_matrix(path: str | Path) -> BitMatrix:
    return parse_matrix(Path(path).read_text())


def write_matrix(path: str | Path, m: BitMatrix, comment: str | None = None) -> None:
    Path(path).write_text(format_matrix(m, comment))
