from __future__ import annotations

import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tricode.errors import DimensionError, ParameterError, ValidationError
from tricode.fixtures import load_fixture
from tricode.gf2core import BitMatrix, BitVector, LinearCode, dual, solve_affine
from tricode.selfdual_search import (
    SelfDualCode,
    greedy_search,
    greedy_search_all_starts,
    all_selfdual_codes,
    bound_lower,
    build_up_selfdual,
    classify_selfdual_triortho,
    g0_never_selfdual_check,
    is_selfdual,
    min_k_for_dimension,
    parse_policy,
    permutation_witness,
    random_selfdual,
    search_system,
    start_pairs,
    wedge_closed,
    wedge_closure_witness,
)
from tricode.triortho import check_trispace, partition_rows, random_trimatrix


def pairs(k: int) -> BitMatrix:
    eye = BitMatrix.identity(k)
    return eye.hstack(eye)


def vec(s: str) -> int:
    return BitVector.from_str(s).value


class TestIsSelfdual:
    def test_examples(self):
        assert is_selfdual(pairs(3))
        assert is_selfdual(load_fixture("selfdual8"))
        assert is_selfdual(load_fixture("selfdual10"))
        assert not is_selfdual(BitMatrix.identity(2).hstack(BitMatrix.from_strings(["11", "11"])))
        assert not is_selfdual(BitMatrix.from_strings(["110"]))
        assert not is_selfdual(BitMatrix.from_strings(["1100"]))

    def test_code_wrapper_rejects_non_selfdual(self):
        with pytest.raises(ValidationError):
            SelfDualCode.from_matrix(BitMatrix.from_strings(["1100", "1100"]))

    @settings(max_examples=40)
    @given(st.integers(0, 2**32 - 1), st.integers(1, 10))
    def test_random_selfdual_is_selfdual(self, seed, k):
        g = random_selfdual(k, random.Random(seed))
        assert g.nrows == k and g.ncols == 2 * k
        assert is_selfdual(g)
        code = LinearCode.from_matrix(g)
        assert dual(code) == code

    def test_build_up_needs_odd_vector(self):
        with pytest.raises(ValidationError):
            build_up_selfdual(pairs(1), 0b11)
        assert is_selfdual(build_up_selfdual(pairs(2), 0b0001))


class TestClassification:
    def test_extended_hamming_is_not_closed(self):
        i, j, v = wedge_closure_witness(load_fixture("selfdual8"))
        assert (i, j) == (0, 1)
        assert v.value == 0b11000000
        assert not wedge_closed(load_fixture("selfdual8"))
        c = classify_selfdual_triortho(load_fixture("selfdual8"))
        assert c.consistent and not c.is_trispace and c.permutation_witness is None

    def test_identity_pairing(self):
        c = classify_selfdual_triortho(pairs(4))
        assert c.is_trispace and c.wedge_closed
        assert c.permutation_witness == (0, 1, 2, 3)
        assert c.pivots == (0, 1, 2, 3) and c.free_columns == (4, 5, 6, 7)

    def test_swapped_pairing(self):
        m = BitMatrix.from_strings(["1001", "0110"])
        assert permutation_witness(m) == (1, 0)
        assert classify_selfdual_triortho(m).consistent

    def test_counts_by_length(self):
        # distinct self-dual codes of length 2m number prod_{i<m} (2^i + 1)
        assert [len(all_selfdual_codes(n)) for n in (2, 4, 6, 8)] == [1, 3, 15, 135]
        with pytest.raises(ParameterError):
            all_selfdual_codes(5)

    def test_positives_are_pairings(self):
        for n in (2, 4, 6):
            codes = all_selfdual_codes(n)
            found = [classify_selfdual_triortho(c.basis) for c in codes]
            assert all(c.consistent for c in found)
            assert sum(c.is_trispace for c in found) == math.prod(range(1, n, 2))


class TestG0NeverSelfdual:
    def test_shape_does_not_apply(self):
        assert g0_never_selfdual_check(partition_rows(pairs(3))) is None
        assert g0_never_selfdual_check(partition_rows(load_fixture("g14_bh"))) is None

    @settings(max_examples=60)
    @given(st.integers(0, 2**32 - 1), st.integers(2, 10))
    def test_never_selfdual(self, seed, half):
        rng = random.Random(seed)
        g = partition_rows(random_trimatrix(2 * half, 2, half, rng))
        assert g0_never_selfdual_check(g) in (None, False)


class TestGreedySearch:
    fixture = SelfDualCode.from_matrix(load_fixture("selfdual10"))
    start = vec("1000101001")

    def test_default_policy(self):
        state = greedy_search(self.fixture, self.fixture.ones, self.start)
        assert state.size == 4
        assert check_trispace(state.span)
        assert self.fixture.ones in state.H and vec("0000010100") in state.H
        assert [str(v) for v in state.vectors()] == ["1111111111", "1000101001", "1101100000", "0000010100"]
        assert state.trace[-1].chosen is None
        assert state.unital

    def test_start_order_does_not_matter(self):
        a = greedy_search(self.fixture, self.start, self.fixture.ones)
        assert a.size == 4 and vec("0000010100") in a.H

    @pytest.mark.parametrize("policy", ["first", "minweight", "seeded:0", "seeded:5"])
    def test_every_policy(self, policy):
        state = greedy_search(self.fixture, BitVector.ones(10), BitVector.from_str("1000101001"), policy)
        assert state.size >= 4
        assert check_trispace(state.span)
        assert bound_lower(5, unital=True) <= state.size <= 5

    def test_min_weight_policy_vectors(self):
        state = greedy_search(self.fixture, self.fixture.ones, self.start, "minweight")
        assert vec("0000010100") in state.H and state.size == 4

    def test_first_step_system_contains_member(self):
        system = search_system(self.fixture, [self.fixture.ones, self.start])
        sol = solve_affine(system)
        # one pair product plus the five dual basis rows
        assert system.nrows == 6
        assert vec("0000010100") in LinearCode.from_matrix(sol.nullspace)

    def test_pairs_code_reaches_k(self):
        c = SelfDualCode.from_matrix(pairs(5))
        state = greedy_search(c, c.ones, c.code.basis.rows[0])
        assert state.size == 5

    def test_bad_starts(self):
        with pytest.raises(ValidationError):
            greedy_search(self.fixture, 0, self.start)
        with pytest.raises(ValidationError):
            greedy_search(self.fixture, self.start, self.start)
        with pytest.raises(ValidationError):
            greedy_search(self.fixture, 0b1, self.start)
        with pytest.raises(DimensionError):
            greedy_search(self.fixture, BitVector.ones(8), self.start)

    def test_all_starts(self):
        best = greedy_search_all_starts(self.fixture, budget=100)
        assert best.size >= 4
        runs = list(start_pairs(self.fixture))
        assert runs[0][0] == self.fixture.ones
        assert len(runs) == len(set(runs))
        with pytest.raises(ParameterError):
            greedy_search_all_starts(self.fixture, budget=0)

    def test_deterministic(self):
        a = greedy_search(self.fixture, self.fixture.ones, self.start, "seeded:3")
        b = greedy_search(self.fixture, self.fixture.ones, self.start, "seeded:3")
        assert a.H == b.H

    @settings(max_examples=40, deadline=None)
    @given(st.integers(0, 2**32 - 1), st.integers(3, 10))
    def test_output_is_triorthogonal_and_bounded(self, seed, k):
        rng = random.Random(seed)
        c = SelfDualCode.from_matrix(random_selfdual(k, rng))
        y, z = rng.sample(c.code.basis.rows, 2)
        state = greedy_search(c, y, z, "seeded:%d" % seed)
        assert check_trispace(state.span)
        assert state.span.dim == state.size
        assert bound_lower(k) <= state.size <= k


class TestBounds:
    @pytest.mark.parametrize("k", range(1, 60))
    def test_against_closed_forms(self, k):
        assert bound_lower(k) == max(1, math.ceil((math.sqrt(8 * k + 1) - 1) / 2))
        if k >= 2:
            assert bound_lower(k, unital=True) == math.ceil((math.sqrt(8 * k - 7) + 1) / 2)

    def test_fixture_value(self):
        assert bound_lower(5) == 3
        assert bound_lower(5, unital=True) == 4

    def test_min_k(self):
        assert [min_k_for_dimension(r) for r in range(3, 11)] == [4, 7, 11, 16, 22, 29, 37, 46]
        assert [min_k_for_dimension(r, True) for r in range(3, 11)] == [3, 5, 8, 12, 17, 23, 30, 38]
        with pytest.raises(ParameterError):
            min_k_for_dimension(2)
        with pytest.raises(ParameterError):
            bound_lower(0)


def test_parse_policy():
    assert parse_policy("first").__name__ == "first_found"
    assert callable(parse_policy("seeded:12"))
    for bad in ("best", "seeded:x", ""):
        with pytest.raises(ParameterError):
            parse_policy(bad)
