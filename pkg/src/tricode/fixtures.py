"""Matrices from the worked examples, shipped as package data."""

from __future__ import annotations

from importlib import resources
from pathlib import Path

from .gf2core import BitMatrix
from .matfile import parse_matrix

FIXTURE_NAMES = (
    "g14_bh",
    "g15_ext",
    "g16",
    "g1_16",
    "g2_15",
    "g3_14",
    "selfdual8",
    "selfdual10",
)


def fixture_dir() -> Path:
    return Path(str(resources.files("tricode.data")))


def load_fixture(name: str, directory: str | Path | None = None) -> BitMatrix:
    base = fixture_dir() if directory is None else Path(directory)
    return parse_matrix((base / f"{name}.txt").read_text())
