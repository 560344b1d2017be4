import pytest
from hypothesis import given, settings, strategies as st

from buchstaber.constructions import (
    CertificateError,
    combine,
    construct_odd_weight_indicator,
    construct_subspace_point,
    construct_trivial,
    construct_uniform,
    extend_by_sum,
    lift_period,
    matrix_4x8,
    matrix_basis_plus_sum,
    matrix_rank2_blocks,
    matrix_two_deficient,
    odd_weight_indicator_target,
    period,
    subspace_window,
    two_deficient_dim,
    two_deficient_point,
)
from buchstaber.gf2 import Gf2Vec
from buchstaber.realizability import (
    MultiplicityVector,
    feasible,
    matrix_to_multiplicities,
    realizes_fast,
    realizes_naive,
)


def test_uniform_examples():
    mv = construct_uniform(3, 1)
    assert mv.total == 7 and feasible(mv, 3)
    mv = construct_uniform(2, 5)
    assert mv.total == 15 and feasible(mv, 5)
    with pytest.raises(ValueError):
        construct_uniform(3, -1)


def test_trivial_examples():
    assert construct_trivial(3, 4).total == 8
    assert construct_trivial(2, 2).counts == (2, 2, 2)
    assert construct_trivial(5, 0).total == 0


def test_subspace_point_examples():
    mv = construct_subspace_point(5, 0, 8)
    assert mv.total == 16 and feasible(mv, 8)
    assert construct_subspace_point(3, 0, 2).counts == (1, 0, 1, 0, 1, 0, 1)


def _windows(k):
    half = 1 << (k - 1)
    for ell in range(k - 1):
        lo, hi = half - (half >> ell), half - (half >> (ell + 1))
        for R in range(lo, min(hi, period(k))):
            yield ell, lo, R


@pytest.mark.parametrize("k", range(2, 7))
def test_subspace_point_every_window(k):
    n = (1 << k) - 1
    for ell, lo, R in _windows(k):
        assert subspace_window(k, R) == ell
        for Q in range(3):
            mv = construct_subspace_point(k, Q, R)
            assert feasible(mv, period(k) * Q + R)
            assert mv.total == n * Q + R + lo
            if R == lo:
                # window start: the point reaches (2^k - 1) Q + 2R
                assert mv.total == n * Q + 2 * R


def test_subspace_point_custom_subspace():
    # v_dual = e_1, U = span(e_2): l = 1 window for k = 4 is R in [4, 6)
    mv = construct_subspace_point(4, 1, 5, Gf2Vec.basis(4, 1), [Gf2Vec.basis(4, 2)])
    assert feasible(mv, 12) and mv.total == 15 + 5 + 4
    with pytest.raises(ValueError):
        construct_subspace_point(4, 0, 5, Gf2Vec.basis(4, 2), [Gf2Vec.basis(4, 2)])
    with pytest.raises(ValueError):
        construct_subspace_point(4, 0, 2, Gf2Vec.basis(4, 1), [Gf2Vec.basis(4, 2)])


@pytest.mark.parametrize("k", range(3, 9))
def test_odd_weight_indicator_sums(k):
    half = 1 << (k - 1)
    expected = {1: half - k, 2: half - k - (1 if k % 2 else 2)}
    if k % 2 == 0:
        expected[4] = half - 2 * k
    for q, total in expected.items():
        mv = construct_odd_weight_indicator(k, q)
        assert mv.total == total
        assert feasible(mv, (1 << (k - 2)) - q)
        assert odd_weight_indicator_target(k, q) == ((1 << (k - 2)) - q, total)
    if k % 2:
        with pytest.raises(ValueError):
            construct_odd_weight_indicator(k, 4)


def test_odd_weight_examples():
    mv = construct_odd_weight_indicator(5, 1)
    assert (mv.total, feasible(mv, 7)) == (11, True)
    mv = construct_odd_weight_indicator(6, 4)
    assert (mv.total, feasible(mv, 12)) == (20, True)


def test_lift_examples():
    mv = lift_period(MultiplicityVector.zeros(4), 0, 0)
    assert mv.dim == 5 and mv.total == 16 and feasible(mv, 8)
    assert mv.counts[:15] == (0,) * 15 and mv.counts[15:] == (1,) * 16
    mv = lift_period(MultiplicityVector.from_mapping(3, {1: 1}), 0, 1)
    assert mv.dim == 4 and mv.total == 9 and feasible(mv, 5)


@settings(max_examples=100, deadline=None)
@given(st.integers(2, 5), st.integers(0, 3), st.data())
def test_lift_of_trivial_point(k, Q, data):
    R = data.draw(st.integers(0, period(k) - 1))
    base = construct_trivial(k, R)
    mv = lift_period(base, Q, R)
    assert feasible(mv, ((1 << k) - 1) * Q + (1 << (k - 1)) + R)


def test_lift_rejects_infeasible_input():
    with pytest.raises(ValueError):
        lift_period(MultiplicityVector(2, (3, 0, 0)), 0, 0)


@settings(max_examples=200, deadline=None)
@given(st.integers(2, 5), st.integers(0, 20), st.integers(0, 20))
def test_combine_is_feasible_at_sum(k, b1, b2):
    mv = combine(construct_trivial(k, b1), construct_trivial(k, b2))
    assert feasible(mv, b1 + b2)


# --- matrices


@pytest.mark.parametrize("m", [2, 3, 4, 6, 9])
def test_basis_plus_sum(m):
    A = matrix_basis_plus_sum(m)
    assert (A.dim, A.m) == (m - 1, m)
    assert realizes_naive(A, m - 1)


def test_rank2_blocks_shapes():
    assert (matrix_rank2_blocks(3).dim, matrix_rank2_blocks(3).m) == (2, 6)
    assert matrix_rank2_blocks(2).m == 3
    assert matrix_rank2_blocks(1).m == 0


def test_matrix_4x8_point():
    mv, zeros = matrix_to_multiplicities(matrix_4x8())
    assert zeros == 0 and mv.total == 8 and feasible(mv, 4)


@pytest.mark.parametrize("m", range(3, 15))
def test_two_deficient_matrix(m):
    k = two_deficient_dim(m)
    assert m + 1 <= 1 << (m - k) and m + 1 > 1 << (m - k - 1)
    if k >= 1:
        A = matrix_two_deficient(m)
        assert (A.dim, A.m) == (k, m)
        assert realizes_fast(A, m - 2)
        if m <= 12:
            assert realizes_naive(A, m - 2)


@pytest.mark.parametrize("m", [5, 7, 9, 12])
def test_extend_by_sum_keeps_realizing(m):
    A = extend_by_sum(matrix_two_deficient(m), m - 2)
    assert A.m == m + 1 and realizes_fast(A, m - 2)
    with pytest.raises(ValueError):
        extend_by_sum(A, m - 2)


@pytest.mark.parametrize("k", range(2, 12))
def test_two_deficient_point_reaches_k_plus_5(k):
    mv = two_deficient_point(k, k + 1)
    assert mv is not None and mv.total == k + 5 and feasible(mv, k + 1)


def test_two_deficient_point_absent_when_too_wide():
    assert two_deficient_point(12, 13) is None


def test_certificate_error_is_raised_on_bad_claim():
    from buchstaber.constructions import _verified

    with pytest.raises(CertificateError):
        _verified(construct_uniform(3, 1), 2, 7)
    with pytest.raises(CertificateError):
        _verified(construct_uniform(3, 1), 3, 8)
