"""Matrix and multiplicity formulations of realizability, and the bridge between them.

A k x m matrix realizes (m, p) when every p of its columns span (Z/2)^k.
Only the multiset of columns matters, which gives the multiplicity vector
{a_v}; realizability becomes the hyperplane constraints

    sum of a_v over v in u-perp  <=  p - 1      for every nonzero u.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Sequence

import numpy as np

from .gf2 import MAX_DIM, Gf2Mat, Gf2Vec, check_dim, rank_bits

MAX_TOTAL = 2**31 - 1


@dataclass(frozen=True)
class MultiplicityVector:
    """Non-negative column multiplicities indexed by the nonzero vectors of (Z/2)^dim.

    ``counts[j]`` is the multiplicity of the vector whose encoding is ``j + 1``.
    """

    dim: int
    counts: tuple[int, ...]

    def __post_init__(self) -> None:
        check_dim(self.dim)
        counts = tuple(int(c) for c in self.counts)
        if len(counts) != (1 << self.dim) - 1:
            raise ValueError(f"expected {(1 << self.dim) - 1} counts for dim {self.dim}, got {len(counts)}")
        if any(c < 0 for c in counts):
            raise ValueError("multiplicities must be non-negative")
        if sum(counts) > MAX_TOTAL:
            raise ValueError("total multiplicity exceeds 2^31 - 1")
        object.__setattr__(self, "counts", counts)

    @classmethod
    def zeros(cls, k: int) -> "MultiplicityVector":
        return cls(k, (0,) * ((1 << check_dim(k)) - 1))

    @classmethod
    def from_mapping(cls, k: int, mapping: dict[int, int]) -> "MultiplicityVector":
        """Build from ``{encoding: count}``; missing vectors get zero."""
        counts = [0] * ((1 << check_dim(k)) - 1)
        for v, c in mapping.items():
            if not 1 <= v < (1 << k):
                raise ValueError(f"vector encoding {v} out of range for k={k}")
            counts[v - 1] += c
        return cls(k, tuple(counts))

    @property
    def total(self) -> int:
        return sum(self.counts)

    def __getitem__(self, v: int | Gf2Vec) -> int:
        if isinstance(v, Gf2Vec):
            if v.dim != self.dim:
                raise ValueError("dimension mismatch")
            v = v.bits
        if v == 0:
            raise KeyError("the zero vector carries no multiplicity")
        return self.counts[v - 1]

    def support(self) -> list[int]:
        return [j + 1 for j, c in enumerate(self.counts) if c]

    def as_array(self) -> np.ndarray:
        return np.array(self.counts, dtype=np.int64)


@dataclass(frozen=True)
class ConstraintProblem:
    """The integer program max sum(a_v) subject to every hyperplane sum <= b."""

    k: int
    b: int

    def __post_init__(self) -> None:
        check_dim(self.k)
        if self.b < 0:
            raise ValueError("b must be non-negative")

    @property
    def period(self) -> int:
        """2^(k-1) - 1: how many hyperplanes contain a given nonzero vector."""
        return (1 << (self.k - 1)) - 1

    @property
    def Q(self) -> int:
        return self.b // self.period

    @property
    def R(self) -> int:
        return self.b % self.period


def walsh_hadamard(values: np.ndarray) -> np.ndarray:
    """Unnormalized transform W(u) = sum_v values[v] * (-1)^(u, v) over all 2^k indices."""
    f = np.asarray(values, dtype=np.int64).copy()
    size = f.shape[0]
    h = 1
    while h < size:
        f = f.reshape(-1, 2, h)
        f = np.stack((f[:, 0, :] + f[:, 1, :], f[:, 0, :] - f[:, 1, :]), axis=1)
        h *= 2
    return f.reshape(size)


def hyperplane_sums(counts: Sequence[int] | np.ndarray, k: int) -> np.ndarray:
    """For each nonzero u in canonical order, the sum of counts over v in u-perp."""
    f = np.zeros(1 << k, dtype=np.int64)
    f[1:] = counts
    w = walsh_hadamard(f)
    return (int(f.sum()) + w[1:]) // 2


@lru_cache(maxsize=16)
def incidence(k: int) -> np.ndarray:
    """0/1 matrix whose row u-1 marks the v with (u, v) = 0 (u, v nonzero)."""
    v = np.arange(1, 1 << k)
    par = np.array([bin(x).count("1") & 1 for x in range(1 << k)], dtype=np.int8)
    return (par[np.bitwise_and.outer(v, v)] == 0).astype(np.int8)


def feasible(mv: MultiplicityVector, b: int) -> bool:
    if b < 0:
        raise ValueError("b must be non-negative")
    return bool(np.all(hyperplane_sums(mv.counts, mv.dim) <= b))


def slack_profile(mv: MultiplicityVector, b: int) -> np.ndarray:
    """b minus each hyperplane sum, u in canonical order; negative entries mark violations."""
    return b - hyperplane_sums(mv.counts, mv.dim)


def _column_counts(A: Gf2Mat) -> tuple[np.ndarray, int]:
    """Multiplicities as a plain array plus the zero-column count; any matrix dim >= 1."""
    counts = np.zeros((1 << A.dim) - 1, dtype=np.int64)
    zeros = 0
    for c in A.columns:
        if c.bits:
            counts[c.bits - 1] += 1
        else:
            zeros += 1
    return counts, zeros


def matrix_to_multiplicities(A: Gf2Mat) -> tuple[MultiplicityVector, int]:
    check_dim(A.dim)
    counts, zeros = _column_counts(A)
    return MultiplicityVector(A.dim, tuple(counts.tolist())), zeros


def multiplicities_to_matrix(mv: MultiplicityVector) -> Gf2Mat:
    cols: list[int] = []
    for j, c in enumerate(mv.counts):
        cols.extend([j + 1] * c)
    return Gf2Mat.from_bits(mv.dim, cols)


def _check_p(A: Gf2Mat, p: int) -> None:
    if not 1 <= A.dim <= MAX_DIM:
        raise ValueError(f"matrix must have between 1 and {MAX_DIM} rows, got {A.dim}")
    if not 1 <= p <= A.m:
        raise ValueError(f"p must satisfy 1 <= p <= m = {A.m}, got {p}")


def realizes_naive(A: Gf2Mat, p: int) -> bool:
    """Every p-subset of columns has full rank, by enumerating all C(m, p) subsets."""
    _check_p(A, p)
    return all(rank_bits(sub) == A.dim for sub in combinations(A.bits, p))


def violating_hyperplanes(A: Gf2Mat, p: int) -> list[tuple[int, int]]:
    """Pairs (u, count) for every hyperplane u-perp holding at least p columns.

    Zero columns sit in every hyperplane and are counted.
    """
    _check_p(A, p)
    counts, zeros = _column_counts(A)
    sums = hyperplane_sums(counts, A.dim) + zeros
    bad = np.nonzero(sums > p - 1)[0]
    return [(int(j) + 1, int(sums[j])) for j in bad]


def realizes_fast(A: Gf2Mat, p: int) -> bool:
    """Hyperplane test: no u-perp contains p or more columns."""
    _check_p(A, p)
    counts, zeros = _column_counts(A)
    return bool(np.all(hyperplane_sums(counts, A.dim) + zeros <= p - 1))


# ---------------------------------------------------------------- text format


class MatrixFormatError(ValueError):
    pass


def parse_matrix_text(text: str) -> tuple[Gf2Mat, int]:
    """Parse ``"k m p"`` followed by k rows of m space-separated 0/1 digits."""
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise MatrixFormatError("empty matrix file")
    header = lines[0].split()
    if len(header) != 3 or not all(t.isdigit() for t in header):
        raise MatrixFormatError(f"header must be three non-negative integers 'k m p', got {lines[0]!r}")
    k, m, p = (int(t) for t in header)
    if k == 0 or k > MAX_DIM:
        raise MatrixFormatError(f"k must be between 1 and {MAX_DIM}")
    rows = lines[1:]
    if m == 0 and not rows:
        # blank rows are stripped above, so an empty matrix has no row lines
        return Gf2Mat(k, ()), p
    if len(rows) != k:
        raise MatrixFormatError(f"expected {k} rows, found {len(rows)}")
    parsed: list[list[int]] = []
    for i, row in enumerate(rows, start=1):
        tokens = row.split()
        if len(tokens) != m:
            raise MatrixFormatError(f"row {i} has {len(tokens)} entries, expected {m}")
        for t in tokens:
            if t not in ("0", "1"):
                raise MatrixFormatError(f"row {i}: token {t!r} is not 0 or 1")
        parsed.append([int(t) for t in tokens])
    return Gf2Mat.from_rows(parsed), p


def format_matrix_text(A: Gf2Mat, p: int) -> str:
    lines = [f"{A.dim} {A.m} {p}"]
    lines += [" ".join(str(x) for x in row) for row in A.rows()]
    return "\n".join(lines) + "\n"


def pad_to(mv: MultiplicityVector, m: int) -> MultiplicityVector:
    """Drop multiplicity from the back of the canonical order until the total is m.

    Removing columns never breaks the hyperplane constraints, so the result
    stays feasible for whatever b the input was feasible for.
    """
    if m > mv.total:
        raise ValueError(f"cannot shrink a total of {mv.total} up to {m}")
    counts = list(mv.counts)
    excess = mv.total - m
    for j in range(len(counts) - 1, -1, -1):
        if excess == 0:
            break
        take = min(counts[j], excess)
        counts[j] -= take
        excess -= take
    return MultiplicityVector(mv.dim, tuple(counts))
