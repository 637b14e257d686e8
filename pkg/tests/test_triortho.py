from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from tricode.errors import ParameterError, RankError, ValidationError
from tricode.fixtures import load_fixture
from tricode.gf2core import BitMatrix, LinearCode
from tricode.triortho import (
    TriSpace,
    check_trimatrix,
    check_trispace,
    is_trimatrix,
    partition_rows,
    random_trimatrix,
    space_to_trimatrix,
)


def pairs(k: int) -> BitMatrix:
    eye = BitMatrix.identity(k)
    return eye.hstack(eye)


@st.composite
def trimatrices(draw, max_n=14):
    seed = draw(st.integers(0, 2**32 - 1))
    n = draw(st.integers(1, max_n))
    rng = random.Random(seed)
    return random_trimatrix(n, draw(st.integers(0, 3)), draw(st.integers(0, 4)), rng)


class TestCheckTrimatrix:
    def test_repetition_pairs_pass(self):
        assert check_trimatrix(pairs(4)).ok

    def test_selfdual8_fails_on_first_triple(self):
        report = check_trimatrix(load_fixture("selfdual8"))
        assert report.pairwise_ok and not report.triple_ok
        assert report.first_violation == (0, 1, 2)
        assert not report

    def test_fixtures_pass(self):
        for name in ("g14_bh", "g15_ext", "g16", "g1_16", "g2_15", "g3_14"):
            assert is_trimatrix(load_fixture(name)), name

    def test_pair_violation_reported_first(self):
        m = BitMatrix.from_strings(["110", "011", "111"])
        report = check_trimatrix(m)
        assert not report.pairwise_ok
        assert report.first_violation == (0, 1)

    def test_trivial_matrices(self):
        assert check_trimatrix(BitMatrix.empty(3)).ok
        assert check_trimatrix(BitMatrix.from_strings(["1"])).ok

    @settings(max_examples=80)
    @given(st.integers(1, 9).flatmap(lambda n: st.lists(st.integers(0, (1 << n) - 1), max_size=5).map(lambda r: BitMatrix(tuple(r), n))))
    def test_matches_oracle(self, m):
        assert check_trimatrix(m).ok == oracles.is_triorthogonal(oracles.to_lists(m))

    @given(trimatrices(), st.data())
    def test_row_subsets_stay_triorthogonal(self, m, data):
        keep = data.draw(st.lists(st.integers(0, max(m.nrows - 1, 0)), unique=True)) if m.nrows else []
        assert check_trimatrix(m.select_rows(sorted(keep))).ok


class TestPartition:
    def test_g14_bh(self):
        tri = partition_rows(load_fixture("g14_bh"))
        assert tri.k == 2 and tri.odd_indices == (0, 1)
        assert tri.n == 14 and tri.m == 5

    def test_pairs_have_no_odd_rows(self):
        assert partition_rows(pairs(3)).k == 0

    def test_g2_15(self):
        assert partition_rows(load_fixture("g2_15")).k == 1

    def test_errors(self):
        with pytest.raises(ValidationError):
            partition_rows(load_fixture("selfdual8"))
        dup = BitMatrix.from_strings(["1100", "1100"])
        with pytest.raises(RankError):
            partition_rows(dup)

    @given(trimatrices())
    def test_stacking_keeps_rows(self, m):
        tri = partition_rows(m)
        assert sorted(tri.stacked.rows) == sorted(m.rows)
        assert all(w % 2 for w in tri.odd_rows.row_weights())
        assert not any(w % 2 for w in tri.even_rows.row_weights())
        # odd rows keep their original relative order
        assert list(tri.odd_rows.rows) == [m.rows[i] for i in tri.odd_indices]


class TestTrispace:
    def test_examples(self):
        assert check_trispace(LinearCode.from_matrix(pairs(3)))
        assert not check_trispace(LinearCode.from_matrix(load_fixture("selfdual8")))
        assert check_trispace(LinearCode.zero(5))
        assert check_trispace(LinearCode.from_matrix(load_fixture("g16")))

    def test_odd_codeword_rejected(self):
        assert not check_trispace(LinearCode.span([0b111], 3))
        with pytest.raises(ValidationError):
            TriSpace(LinearCode.span([0b111], 3))

    def test_unital(self):
        assert TriSpace(LinearCode.from_matrix(pairs(2))).unital
        assert not TriSpace(LinearCode.span([0b0011], 4)).unital

    @settings(max_examples=60)
    @given(trimatrices(max_n=10), st.data())
    def test_invariant_under_basis_change(self, m, data):
        evens = [r for r in m.rows if not r.bit_count() & 1]
        c = LinearCode.span(evens, m.ncols)
        rows = list(c.basis.rows)
        for _ in range(data.draw(st.integers(0, 5))):
            if len(rows) > 1:
                i, j = data.draw(st.sampled_from([(a, b) for a in range(len(rows)) for b in range(len(rows)) if a != b]))
                rows[i] ^= rows[j]
        assert check_trispace(LinearCode.span(rows, m.ncols)) == check_trispace(c)
        # an even-row triorthogonal matrix spans a triorthogonal space
        assert check_trispace(c)

    @settings(max_examples=40)
    @given(st.integers(1, 7).flatmap(lambda n: st.lists(st.integers(0, (1 << n) - 1), max_size=4).map(lambda r: (r, n))))
    def test_matches_all_triples(self, data):
        rows, n = data
        c = LinearCode.span(rows, n)
        words = [list(w) for w in oracles.span(oracles.to_lists(c.basis), n)]
        brute = all(
            sum(a * b * d for a, b, d in zip(x, y, z)) % 2 == 0 for x in words for y in words for z in words
        )
        assert check_trispace(c) == brute


class TestSpaceToTrimatrix:
    def test_pairs_k1(self):
        tri = space_to_trimatrix(LinearCode.from_matrix(pairs(2)), 1)
        # RREF rows 1010 and 0101; column 0 goes away
        assert tri.matrix == BitMatrix.from_strings(["010", "101"])
        assert tri.k == 1
        assert tri.source_columns == (1, 2, 3)

    def test_full_k_has_no_identity_block(self):
        tri = space_to_trimatrix(LinearCode.from_matrix(pairs(3)), 3)
        assert tri.matrix == BitMatrix.identity(3)
        assert tri.k == 3

    def test_worked_example(self):
        c = LinearCode.from_matrix(load_fixture("g16"))
        assert space_to_trimatrix(c, 1).matrix == load_fixture("g2_15")
        assert space_to_trimatrix(c, 2).matrix == load_fixture("g3_14")

    def test_errors(self):
        c = LinearCode.from_matrix(pairs(2))
        with pytest.raises(ParameterError):
            space_to_trimatrix(c, 0)
        with pytest.raises(ParameterError):
            space_to_trimatrix(c, 3)
        with pytest.raises(ValidationError):
            space_to_trimatrix(LinearCode.from_matrix(load_fixture("selfdual8")), 1)

    @settings(max_examples=60)
    @given(trimatrices(max_n=12), st.data())
    def test_every_top_row_is_odd(self, m, data):
        c = LinearCode.span([r for r in m.rows if not r.bit_count() & 1], m.ncols)
        if c.dim == 0:
            return
        k = data.draw(st.integers(1, c.dim))
        tri = space_to_trimatrix(c, k)
        assert tri.k == k
        assert tri.n == c.length - k


class TestRandomTrimatrix:
    @given(st.integers(0, 2**32 - 1), st.integers(1, 16), st.integers(0, 4), st.integers(0, 5))
    def test_output_is_valid(self, seed, n, odd, even):
        m = random_trimatrix(n, odd, even, random.Random(seed))
        tri = partition_rows(m)
        assert tri.k <= odd and tri.m - tri.k <= even

    def test_deterministic(self):
        a = random_trimatrix(12, 2, 3, random.Random(7))
        b = random_trimatrix(12, 2, 3, random.Random(7))
        assert a == b

    def test_bad_arguments(self):
        with pytest.raises(ParameterError):
            random_trimatrix(0, 1, 1, random.Random(0))
