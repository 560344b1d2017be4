from itertools import product

import pytest
from hypothesis import given, strategies as st

from buchstaber.gf2 import (
    DimensionError,
    Gf2Mat,
    Gf2Vec,
    check_dim,
    dot,
    dot_bits,
    nonzero_vectors,
    perp_members,
    rank,
    rank_bits,
    spans_full,
    subspace_members,
)


def vec(k):
    return st.integers(0, (1 << k) - 1).map(lambda b: Gf2Vec(k, b))


dims = st.integers(2, 8)


def test_basis_encoding():
    assert Gf2Vec.basis(4, 1).bits == 1
    assert Gf2Vec.basis(4, 4).bits == 8
    assert Gf2Vec.from_coords([1, 0, 1]).bits == 0b101
    assert str(Gf2Vec(3, 0b110)) == "011"


def test_rejects_out_of_range():
    with pytest.raises(ValueError):
        Gf2Vec(3, 8)
    with pytest.raises(ValueError):
        Gf2Vec.from_coords([0, 2])
    with pytest.raises(DimensionError):
        Gf2Vec(2, 1) + Gf2Vec(3, 1)
    with pytest.raises(DimensionError):
        check_dim(17)
    with pytest.raises(DimensionError):
        Gf2Mat(3, (Gf2Vec(2, 1),))


@given(dims.flatmap(lambda k: st.tuples(vec(k), vec(k), vec(k))))
def test_dot_is_bilinear_and_symmetric(uvw):
    u, v, w = uvw
    assert dot(u, v) == dot(v, u)
    assert dot(u, v + w) == dot(u, v) ^ dot(u, w)


@given(dims.flatmap(lambda k: st.lists(vec(k), max_size=10)))
def test_rank_bounds_and_invariance(vs):
    r = rank(vs)
    assert 0 <= r <= min(len(vs), vs[0].dim if vs else 0)
    if len(vs) >= 2:
        # elementary column operation keeps the span
        moved = [vs[0] + vs[1]] + vs[1:]
        assert rank(moved) == r


@pytest.mark.parametrize("k", range(2, 7))
def test_counting_facts(k):
    vs = nonzero_vectors(k)
    assert len(vs) == (1 << k) - 1
    for u in range(1, 1 << k):
        # a hyperplane holds 2^(k-1) - 1 nonzero vectors
        assert len(perp_members(u, k)) == (1 << (k - 1)) - 1
    # each nonzero v lies in 2^(k-1) - 1 hyperplanes
    v = 1
    assert sum(1 for u in range(1, 1 << k) if dot_bits(u, v) == 0) == (1 << (k - 1)) - 1


def test_subspace_members():
    basis = [Gf2Vec.basis(4, 1), Gf2Vec.basis(4, 2)]
    members = {v.bits for v in subspace_members(basis)}
    assert members == {0, 1, 2, 3}
    assert [v.bits for v in subspace_members([], 3)] == [0]
    with pytest.raises(ValueError):
        subspace_members([Gf2Vec(3, 1), Gf2Vec(3, 1)])


def test_spans_full_exhaustive_k2():
    for cols in product(range(4), repeat=2):
        vs = [Gf2Vec(2, c) for c in cols]
        expected = cols[0] and cols[1] and cols[0] != cols[1]
        assert spans_full(vs, 2) == bool(expected)


def test_rank_bits_matches_rank():
    assert rank_bits([1, 2, 3]) == 2
    assert rank_bits([]) == 0
    assert rank_bits([0, 0]) == 0


def test_matrix_rows_round_trip():
    A = Gf2Mat.from_rows([[1, 0, 1], [0, 1, 1]])
    assert A.bits == (1, 2, 3)
    assert A.rows() == [[1, 0, 1], [0, 1, 1]]
    assert A.m == 3
