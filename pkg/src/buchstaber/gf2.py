"""Linear algebra over Z/2 with vectors packed into Python ints.

Coordinate i (1-based) of a vector lives in bit i-1, so e_1 is 0b1, e_2 is
0b10 and e_1 + e_3 is 0b101.  Matrix columns use the same encoding.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

MIN_DIM = 2
MAX_DIM = 16


class DimensionError(ValueError):
    """Raised for an out-of-range dimension or mixed dimensions."""


def check_dim(k: int) -> int:
    if not isinstance(k, int) or not MIN_DIM <= k <= MAX_DIM:
        raise DimensionError(f"dimension k must be an integer in [{MIN_DIM}, {MAX_DIM}], got {k!r}")
    return k


@dataclass(frozen=True, order=True)
class Gf2Vec:
    """An element of (Z/2)^dim."""

    dim: int
    bits: int

    def __post_init__(self) -> None:
        if self.dim < 1:
            raise ValueError("dim must be positive")
        if not 0 <= self.bits < (1 << self.dim):
            raise ValueError(f"bits {self.bits} out of range for dim {self.dim}")

    @classmethod
    def basis(cls, dim: int, i: int) -> "Gf2Vec":
        """The standard basis vector e_i (1-based)."""
        if not 1 <= i <= dim:
            raise ValueError(f"basis index {i} out of range for dim {dim}")
        return cls(dim, 1 << (i - 1))

    @classmethod
    def from_coords(cls, coords: Sequence[int]) -> "Gf2Vec":
        bits = 0
        for i, c in enumerate(coords):
            if c not in (0, 1):
                raise ValueError(f"coordinate {c!r} is not 0 or 1")
            bits |= c << i
        return cls(len(coords), bits)

    def coords(self) -> tuple[int, ...]:
        return tuple((self.bits >> i) & 1 for i in range(self.dim))

    def is_zero(self) -> bool:
        return self.bits == 0

    def __add__(self, other: "Gf2Vec") -> "Gf2Vec":
        _same_dim(self, other)
        return Gf2Vec(self.dim, self.bits ^ other.bits)

    __sub__ = __add__

    def __str__(self) -> str:
        return "".join(str(c) for c in self.coords())


def _same_dim(u: Gf2Vec, v: Gf2Vec) -> None:
    if u.dim != v.dim:
        raise DimensionError(f"dimension mismatch: {u.dim} vs {v.dim}")


def _common_dim(vectors: Sequence[Gf2Vec]) -> int | None:
    dims = {v.dim for v in vectors}
    if len(dims) > 1:
        raise DimensionError(f"vectors of mixed dimensions {sorted(dims)}")
    return dims.pop() if dims else None


@dataclass(frozen=True)
class Gf2Mat:
    """A dim x m matrix over Z/2 stored as its ordered columns."""

    dim: int
    columns: tuple[Gf2Vec, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "columns", tuple(self.columns))
        for c in self.columns:
            if c.dim != self.dim:
                raise DimensionError(f"column of dim {c.dim} in a matrix of dim {self.dim}")

    @classmethod
    def from_bits(cls, dim: int, bits: Iterable[int]) -> "Gf2Mat":
        return cls(dim, tuple(Gf2Vec(dim, b) for b in bits))

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "Gf2Mat":
        dim = len(rows)
        if dim == 0:
            raise ValueError("a matrix needs at least one row")
        m = len(rows[0])
        if any(len(r) != m for r in rows):
            raise ValueError("inconsistent row lengths")
        cols = [Gf2Vec.from_coords([rows[i][j] for i in range(dim)]) for j in range(m)]
        return cls(dim, tuple(cols))

    @property
    def m(self) -> int:
        return len(self.columns)

    @property
    def bits(self) -> tuple[int, ...]:
        return tuple(c.bits for c in self.columns)

    def rows(self) -> list[list[int]]:
        return [[(c.bits >> i) & 1 for c in self.columns] for i in range(self.dim)]

    def __str__(self) -> str:
        return "\n".join(" ".join(str(x) for x in row) for row in self.rows())


def dot(u: Gf2Vec, v: Gf2Vec) -> int:
    """The standard bilinear form: parity of the common support."""
    _same_dim(u, v)
    return (u.bits & v.bits).bit_count() & 1


def dot_bits(u: int, v: int) -> int:
    return (u & v).bit_count() & 1


def rank_bits(vectors: Iterable[int]) -> int:
    """Rank of packed vectors, by elimination against a pivot-indexed basis."""
    pivots: dict[int, int] = {}
    for x in vectors:
        while x:
            top = x.bit_length() - 1
            if top not in pivots:
                pivots[top] = x
                break
            x ^= pivots[top]
    return len(pivots)


def rank(vectors: Sequence[Gf2Vec]) -> int:
    _common_dim(vectors)
    return rank_bits(v.bits for v in vectors)


def spans_full(vectors: Sequence[Gf2Vec], k: int) -> bool:
    dim = _common_dim(vectors)
    if dim is not None and dim != k:
        raise DimensionError(f"vectors have dim {dim}, expected {k}")
    return rank(vectors) == k


def nonzero_vectors(k: int) -> list[Gf2Vec]:
    """All 2^k - 1 nonzero vectors in increasing order of their encoding.

    This order is the index order of every multiplicity vector and of every
    list of hyperplane constraints in the package.
    """
    check_dim(k)
    return [Gf2Vec(k, b) for b in range(1, 1 << k)]


def subspace_members(basis: Sequence[Gf2Vec], dim: int | None = None) -> list[Gf2Vec]:
    """All 2^d elements of the span of an independent basis, zero included.

    Members are listed by coefficient pattern: index j combines the basis
    vectors selected by the bits of j.
    """
    d = _common_dim(basis)
    if d is None:
        if dim is None:
            raise ValueError("dim is required when the basis is empty")
        d = dim
    elif dim is not None and dim != d:
        raise DimensionError(f"basis has dim {d}, expected {dim}")
    if rank(basis) != len(basis):
        raise ValueError("basis vectors are linearly dependent")
    members = [0]
    for b in basis:
        members += [x ^ b.bits for x in members]
    return [Gf2Vec(d, x) for x in members]


def perp_members(u: int, k: int) -> list[int]:
    """Nonzero v in (Z/2)^k with (u, v) = 0, as packed ints in canonical order."""
    return [v for v in range(1, 1 << k) if not dot_bits(u, v)]
