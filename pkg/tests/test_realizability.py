from itertools import combinations_with_replacement, product

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from buchstaber.constructions import construct_uniform, matrix_4x8
from buchstaber.gf2 import Gf2Mat, Gf2Vec, rank_bits
from buchstaber.realizability import (
    ConstraintProblem,
    MatrixFormatError,
    MultiplicityVector,
    feasible,
    format_matrix_text,
    hyperplane_sums,
    incidence,
    matrix_to_multiplicities,
    multiplicities_to_matrix,
    pad_to,
    parse_matrix_text,
    realizes_fast,
    realizes_naive,
    slack_profile,
    violating_hyperplanes,
)

E1, E2, E3 = 1, 2, 4


def mat(k, bits):
    return Gf2Mat.from_bits(k, bits)


# --- worked examples


def test_basis_plus_sum_any_three_of_four():
    A = mat(3, [E1, E2, E3, E1 ^ E2 ^ E3])
    assert realizes_naive(A, 3)
    assert realizes_fast(A, 3)


def test_explicit_4x8_any_five_columns():
    A = matrix_4x8()
    assert A.dim == 4 and A.m == 8
    assert realizes_naive(A, 5) and realizes_fast(A, 5)
    # four columns can share a hyperplane, so p = 4 fails
    assert not realizes_fast(A, 4)


@pytest.mark.parametrize("p", range(2, 7))
def test_rank2_blocks(p):
    A = mat(2, [1, 2, 3] * (p - 1))
    assert realizes_fast(A, p) and realizes_naive(A, p)
    assert not realizes_fast(A, p - 1)


def test_uniform_counts_to_matrix():
    for k, Q in [(3, 1), (4, 2), (2, 5)]:
        A = multiplicities_to_matrix(construct_uniform(k, Q))
        assert A.m == ((1 << k) - 1) * Q


def test_feasibility_examples():
    assert feasible(MultiplicityVector(2, (2, 2, 2)), 2)
    mv = construct_uniform(3, 1)
    assert feasible(mv, 3) and mv.total == 7
    for k, Q in [(3, 2), (4, 1), (5, 3)]:
        b = ((1 << (k - 1)) - 1) * Q
        assert np.all(slack_profile(construct_uniform(k, Q), b) == 0)


def test_hyperplane_sums_match_incidence():
    rng = np.random.default_rng(0)
    for k in range(2, 7):
        counts = rng.integers(0, 5, (1 << k) - 1)
        assert np.array_equal(hyperplane_sums(counts, k), incidence(k) @ counts)


# --- oracle agreement


@pytest.mark.parametrize("k", [2, 3])
def test_fast_equals_naive_exhaustive(k):
    # realizability ignores column order, so multisets cover every matrix up to permutation
    checked = 0
    for m in range(1, 7):
        for cols in combinations_with_replacement(range(1 << k), m):
            A = mat(k, cols)
            for p in range(1, m + 1):
                assert realizes_fast(A, p) == realizes_naive(A, p), (cols, p)
                checked += 1
    assert checked > 1000


@settings(max_examples=300, deadline=None)
@given(
    st.integers(2, 5).flatmap(
        lambda k: st.tuples(st.just(k), st.lists(st.integers(0, (1 << k) - 1), min_size=1, max_size=10))
    ),
    st.data(),
)
def test_fast_equals_naive_random(kc, data):
    k, cols = kc
    p = data.draw(st.integers(1, len(cols)))
    A = mat(k, cols)
    assert realizes_fast(A, p) == realizes_naive(A, p)


@pytest.mark.parametrize("k, expected_cases", [(2, 90), (3, 80000)])
def test_feasible_iff_realizes_exhaustive(k, expected_cases):
    n = (1 << k) - 1
    seen = 0
    for b in range(0, 4):
        for counts in product(range(b + 2), repeat=n):
            mv = MultiplicityVector(k, counts)
            if mv.total < b + 1:
                continue
            assert feasible(mv, b) == realizes_fast(multiplicities_to_matrix(mv), b + 1)
            seen += 1
    assert seen >= expected_cases


# --- invariances


# images of e_1, e_2, e_3 under every element of GL(3, 2)
GL3 = [img for img in product(range(1, 8), repeat=3) if rank_bits(img) == 3]


def test_gl3_order():
    assert len(GL3) == 168


@settings(max_examples=200, deadline=None)
@given(st.lists(st.integers(0, 7), min_size=1, max_size=9), st.sampled_from(GL3), st.data())
def test_gl_invariance(cols, img, data):
    def apply(v):
        out = 0
        for i in range(3):
            if (v >> i) & 1:
                out ^= img[i]
        return out

    p = data.draw(st.integers(1, len(cols)))
    assert realizes_fast(mat(3, cols), p) == realizes_fast(mat(3, [apply(c) for c in cols]), p)


def test_zero_column_sits_in_every_hyperplane():
    A = mat(2, [0, 1, 2, 3])
    assert not realizes_fast(A, 2)
    assert all(count >= 2 for _, count in violating_hyperplanes(A, 2))
    assert realizes_fast(A, 3) == realizes_naive(A, 3)
    mv, zeros = matrix_to_multiplicities(A)
    assert zeros == 1 and mv.counts == (1, 1, 1)


def test_p_out_of_range():
    A = mat(2, [1, 2])
    with pytest.raises(ValueError):
        realizes_fast(A, 3)
    with pytest.raises(ValueError):
        realizes_naive(A, 0)


# --- representation


def test_multiplicity_vector_validation():
    with pytest.raises(ValueError):
        MultiplicityVector(2, (1, 2))
    with pytest.raises(ValueError):
        MultiplicityVector(2, (1, -1, 0))
    with pytest.raises(KeyError):
        MultiplicityVector.zeros(2)[0]
    mv = MultiplicityVector.from_mapping(3, {7: 2, 1: 1})
    assert mv[7] == 2 and mv[Gf2Vec(3, 1)] == 1 and mv.support() == [1, 7]


def test_constraint_problem_period():
    cp = ConstraintProblem(4, 23)
    assert (cp.period, cp.Q, cp.R) == (7, 3, 2)


def test_pad_to_keeps_feasibility():
    mv = construct_uniform(3, 2)
    small = pad_to(mv, 9)
    assert small.total == 9 and feasible(small, 6)
    with pytest.raises(ValueError):
        pad_to(mv, 15)


def test_matrix_text_round_trip():
    A = matrix_4x8()
    B, p = parse_matrix_text(format_matrix_text(A, 5))
    assert B == A and p == 5
    empty, p0 = parse_matrix_text("3 0 0\n")
    assert empty.m == 0 and p0 == 0


@pytest.mark.parametrize(
    "text",
    ["", "2 2\n1 0\n0 1\n", "2 2 1\n1 0\n", "2 2 1\n1 0\n0 2\n", "2 2 1\n1 0 1\n0 1\n", "17 1 1\n" + "1\n" * 17],
)
def test_malformed_text(text):
    with pytest.raises(MatrixFormatError):
        parse_matrix_text(text)
