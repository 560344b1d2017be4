"""Explicit feasible points and realizing matrices.

Every constructor checks its own output (feasibility for the claimed b and
the claimed total) before returning, and raises CertificateError otherwise.
"""

from __future__ import annotations

from typing import Sequence

from .gf2 import Gf2Mat, Gf2Vec, check_dim, dot_bits, rank_bits
from .realizability import (
    MultiplicityVector,
    feasible,
    matrix_to_multiplicities,
    realizes_fast,
)


class CertificateError(RuntimeError):
    """A constructed point failed its own feasibility or sum check."""


def _verified(mv: MultiplicityVector, b: int, total: int) -> MultiplicityVector:
    if mv.total != total:
        raise CertificateError(f"constructed sum {mv.total}, expected {total}")
    if not feasible(mv, b):
        raise CertificateError(f"constructed point is infeasible for b={b}")
    return mv


def period(k: int) -> int:
    return (1 << (k - 1)) - 1


def construct_uniform(k: int, Q: int) -> MultiplicityVector:
    """Q on every nonzero vector: tight at b = (2^(k-1) - 1) Q, total (2^k - 1) Q."""
    check_dim(k)
    if Q < 0:
        raise ValueError("Q must be non-negative")
    n = (1 << k) - 1
    return _verified(MultiplicityVector(k, (Q,) * n), period(k) * Q, n * Q)


def construct_trivial(k: int, b: int) -> MultiplicityVector:
    """Q + R on e_1 and Q elsewhere, where b = (2^(k-1) - 1) Q + R."""
    check_dim(k)
    if b < 0:
        raise ValueError("b must be non-negative")
    Q, R = divmod(b, period(k))
    counts = [Q] * ((1 << k) - 1)
    counts[0] += R
    return _verified(MultiplicityVector(k, tuple(counts)), b, ((1 << k) - 1) * Q + R)


def subspace_window(k: int, R: int) -> int:
    """The l in 0..k-2 with 2^(k-1) - 2^(k-1-l) <= R < 2^(k-1) - 2^(k-2-l)."""
    check_dim(k)
    if not 0 <= R <= period(k) - 1:
        raise ValueError(f"R must lie in [0, {period(k) - 1}] for k={k}")
    half = 1 << (k - 1)
    for ell in range(k - 1):
        if half - (half >> ell) <= R < half - (half >> (ell + 1)):
            return ell
    raise AssertionError("windows cover every admissible R")


def construct_subspace_point(
    k: int,
    Q: int,
    R: int,
    v_dual: Gf2Vec | None = None,
    u_basis: Sequence[Gf2Vec] | None = None,
) -> MultiplicityVector:
    """Lattice point of total (2^k - 1) Q + R + 2^(k-1) - 2^(k-1-l), feasible at b = (2^(k-1) - 1) Q + R.

    V is the hyperplane orthogonal to ``v_dual`` and U = span(``u_basis``) is an
    l-dimensional subspace of V; l must match the window containing R.  With
    r = R - 2^(k-1) + 2^(k-1-l) the point is Q + r at v_dual, Q at every
    other v orthogonal to all of U, and Q + 1 elsewhere.  Defaults:
    v_dual = e_k and U = span(e_1, ..., e_l).
    """
    check_dim(k)
    if Q < 0:
        raise ValueError("Q must be non-negative")
    ell = subspace_window(k, R) if u_basis is None else len(u_basis)
    if not 0 <= ell <= k - 2:
        raise ValueError(f"subspace dimension l={ell} must lie in [0, {k - 2}]")
    half = 1 << (k - 1)
    lo, hi = half - (half >> ell), half - (half >> (ell + 1))
    if not lo <= R < hi:
        raise ValueError(f"R={R} is outside the window [{lo}, {hi}) for l={ell}")
    if v_dual is None:
        v_dual = Gf2Vec.basis(k, k)
    if u_basis is None:
        u_basis = [Gf2Vec.basis(k, i) for i in range(1, ell + 1)]
    if v_dual.dim != k or v_dual.is_zero():
        raise ValueError("v_dual must be a nonzero vector of dimension k")
    ubits = [u.bits for u in u_basis]
    if any(u.dim != k for u in u_basis) or rank_bits(ubits) != ell:
        raise ValueError("u_basis must be linearly independent in dimension k")
    if any(dot_bits(u, v_dual.bits) for u in ubits):
        raise ValueError("U must lie inside the hyperplane orthogonal to v_dual")
    r = R - lo
    counts = []
    for v in range(1, 1 << k):
        if v == v_dual.bits:
            counts.append(Q + r)
        elif all(dot_bits(u, v) == 0 for u in ubits):
            counts.append(Q)
        else:
            counts.append(Q + 1)
    b = period(k) * Q + R
    return _verified(MultiplicityVector(k, tuple(counts)), b, ((1 << k) - 1) * Q + R + lo)


def odd_weight_indicator_target(k: int, q: int) -> tuple[int, int]:
    """(b, total) reached by construct_odd_weight_indicator(k, q)."""
    b = (1 << (k - 2)) - q
    half = 1 << (k - 1)
    if q == 1:
        return b, half - k
    if q == 2:
        return b, half - k - (1 if k % 2 else 2)
    if q == 4:
        return b, half - 2 * k
    raise ValueError("q must be 1, 2 or 4")


def construct_odd_weight_indicator(k: int, q: int) -> MultiplicityVector:
    """Indicator of the odd-weight vectors outside an excluded set V_q, feasible at b = 2^(k-2) - q.

    V_1 is the standard basis.  V_2 adds the all-ones vector u0 when k is odd,
    or u0 + e_1 and u0 + e_2 when k is even.  V_4 (k even only) adds every
    u0 + e_i.
    """
    check_dim(k)
    if k < 3:
        raise ValueError("k must be at least 3")
    if q not in (1, 2, 4):
        raise ValueError("q must be 1, 2 or 4")
    if q == 4 and k % 2:
        raise ValueError("q=4 needs k even")
    u0 = (1 << k) - 1
    excluded = {1 << i for i in range(k)}
    if q == 2:
        excluded |= {u0} if k % 2 else {u0 ^ 1, u0 ^ 2}
    elif q == 4:
        excluded |= {u0 ^ (1 << i) for i in range(k)}
    counts = tuple(
        1 if dot_bits(u0, v) and v not in excluded else 0 for v in range(1, 1 << k)
    )
    b, total = odd_weight_indicator_target(k, q)
    return _verified(MultiplicityVector(k, counts), b, total)


def lift_period(mv: MultiplicityVector, Q: int, R: int) -> MultiplicityVector:
    """Lift a point feasible at R in dimension k to dimension k + 1.

    Old vectors (top coordinate 0) get Q + a_v and the 2^k new vectors get
    Q + 1.  The result is feasible at (2^k - 1) Q + 2^(k-1) + R with total
    (2^(k+1) - 1) Q + 2^k + sum(a).
    """
    k = mv.dim
    if k + 1 > 16:
        raise ValueError("lifting past dimension 16")
    if Q < 0:
        raise ValueError("Q must be non-negative")
    if not 0 <= R <= period(k) - 1:
        raise ValueError(f"R must lie in [0, {period(k) - 1}] for k={k}")
    if not feasible(mv, R):
        raise ValueError(f"input point is infeasible for R={R}")
    counts = [Q + a for a in mv.counts] + [Q + 1] * (1 << k)
    b = ((1 << k) - 1) * Q + (1 << (k - 1)) + R
    total = ((1 << (k + 1)) - 1) * Q + (1 << k) + mv.total
    return _verified(MultiplicityVector(k + 1, tuple(counts)), b, total)


def combine(mv1: MultiplicityVector, mv2: MultiplicityVector) -> MultiplicityVector:
    """Pointwise sum; feasible at b1 + b2 when the inputs are feasible at b1 and b2."""
    if mv1.dim != mv2.dim:
        raise ValueError(f"dimension mismatch: {mv1.dim} vs {mv2.dim}")
    return MultiplicityVector(mv1.dim, tuple(x + y for x, y in zip(mv1.counts, mv2.counts)))


# ------------------------------------------------------------------ matrices


def _verified_matrix(A: Gf2Mat, p: int) -> Gf2Mat:
    if A.m >= p >= 1 and not realizes_fast(A, p):
        raise CertificateError(f"constructed {A.dim}x{A.m} matrix does not realize p={p}")
    return A


def matrix_basis_plus_sum(m: int) -> Gf2Mat:
    """(e_1, ..., e_(m-1), e_1 + ... + e_(m-1)): every m - 1 columns span."""
    if m < 2:
        raise ValueError("m must be at least 2")
    k = m - 1
    cols = [1 << i for i in range(k)] + [(1 << k) - 1]
    return _verified_matrix(Gf2Mat.from_bits(k, cols), m - 1)


def matrix_rank2_blocks(p: int) -> Gf2Mat:
    """p - 1 copies of (e_1, e_2, e_1 + e_2): every p columns span (Z/2)^2."""
    if p < 1:
        raise ValueError("p must be positive")
    return _verified_matrix(Gf2Mat.from_bits(2, [1, 2, 3] * (p - 1)), p)


_ROWS_4X8 = ("10000111", "01001011", "00101101", "00011110")


def matrix_4x8() -> Gf2Mat:
    """A 4 x 8 matrix in which every 5 columns span (Z/2)^4."""
    A = Gf2Mat.from_rows([[int(c) for c in row] for row in _ROWS_4X8])
    return _verified_matrix(A, 5)


def two_deficient_dim(m: int) -> int:
    """Largest k with m + 1 <= 2^(m-k); the exact s_R(m, m - 2) for m >= 3."""
    if m < 3:
        raise ValueError("m must be at least 3")
    k = 0
    while m + 1 <= 1 << (m - k - 1):
        k += 1
    return k


def _deficient_supports(n: int, k: int) -> list[int]:
    """k distinct subsets of {0..n-1}, each of size >= 2, jointly covering all n points."""
    if n < 2 or k > (1 << n) - 1 - n:
        raise ValueError(f"cannot pick {k} distinct subsets of size >= 2 from {n} points")
    if 2 * k <= n:
        # disjoint blocks, the last one taking the remainder
        sets = [0b11 << (2 * i) for i in range(k - 1)]
        sets.append(((1 << n) - 1) ^ sum(sets))
        return sets
    sets = [0b11 << (2 * i) for i in range(n // 2)]
    if n % 2:
        sets.append(0b11 << (n - 2))
    for s in range(3, 1 << n):
        if len(sets) == k:
            break
        if s.bit_count() >= 2 and s not in sets:
            sets.append(s)
    return sets


def matrix_two_deficient(m: int, k: int | None = None) -> Gf2Mat:
    """A k x m matrix in which every m - 2 columns span (Z/2)^k.

    The first k columns are the standard basis; row i of the remaining
    m - k columns is the indicator of a subset A(i).  Every m - 2 columns
    span exactly when the A(i) are distinct and each has at least two
    elements.  The subsets also cover every extra column so none is zero.
    ``k`` defaults to the largest dimension this allows.
    """
    if k is None:
        k = two_deficient_dim(m)
    if k < 1:
        raise ValueError("k must be positive")
    n = m - k
    supports = _deficient_supports(n, k)
    cols = [1 << i for i in range(k)]
    for j in range(n):
        cols.append(sum(1 << i for i, s in enumerate(supports) if s >> j & 1))
    return _verified_matrix(Gf2Mat.from_bits(k, cols), m - 2)


def extend_by_sum(A: Gf2Mat, p: int) -> Gf2Mat:
    """Append the sum of all columns.  Preserves realizing p when m - p is even."""
    if (A.m - p) % 2:
        raise ValueError("extending by the column sum needs m - p even")
    total = 0
    for c in A.bits:
        total ^= c
    return _verified_matrix(Gf2Mat.from_bits(A.dim, list(A.bits) + [total]), p)


def two_deficient_point(k: int, b: int) -> MultiplicityVector | None:
    """Feasible point of total b + 4 at b, from a two-deficient matrix with m = b + 3 plus its column sum.

    Exists when b + 4 <= 2^(b + 3 - k); returns None otherwise.
    """
    check_dim(k)
    m = b + 3
    n = m - k
    if n < 2 or k > (1 << n) - 1 - n:
        return None
    A = extend_by_sum(matrix_two_deficient(m, k), m - 2)
    mv, zeros = matrix_to_multiplicities(A)
    if zeros:
        return None
    return _verified(mv, b, b + 4)
