"""Certified bounds on m_k(b) and s_R(m, p) from closed forms, constructions and recursions.

Lower bounds are always witnessed by a certificate unless a closed form is
the only source, in which case the provenance says ``asserted``.  Upper bounds
come from the LP floor, parity, the k -> k-1 recursion, k-monotonicity and the
exclusion of S = 2R off the special remainders.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import NamedTuple

import numpy as np

from . import constructions as cons
from .gf2 import MAX_DIM, Gf2Mat, check_dim
from .realizability import (
    MultiplicityVector,
    feasible,
    matrix_to_multiplicities,
    multiplicities_to_matrix,
    pad_to,
    realizes_fast,
)

DP_CAP = 512


def period(k: int) -> int:
    return (1 << (k - 1)) - 1


def _check_kb(k: int, b: int) -> None:
    check_dim(k)
    if not isinstance(b, (int, np.integer)) or b < 0:
        raise ValueError(f"b must be a non-negative integer, got {b!r}")


def _parity_down(x: int, b: int) -> int:
    return x - ((x - b) & 1)


def _parity_up(x: int, b: int) -> int:
    return x + ((x - b) & 1)


# ----------------------------------------------------------------- intervals


@dataclass(frozen=True)
class BoundInterval:
    """Certified bracket lo <= m_k(b) <= hi.

    ``lo`` is the total of a witnessed point (not parity-adjusted); ``hi`` is
    parity-normalized.  Since m_k(b) = b (mod 2), the value is pinned down
    as soon as ``parity_lo == hi``.
    """

    k: int
    b: int
    lo: int
    hi: int
    lo_provenance: tuple[str, ...] = ()
    hi_provenance: tuple[str, ...] = ()
    certificate: MultiplicityVector | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        if self.lo > self.hi:
            raise ValueError(f"empty bracket [{self.lo}, {self.hi}] for m_{self.k}({self.b})")
        cert = self.certificate
        if cert is not None:
            if cert.dim != self.k or cert.total != self.lo or not feasible(cert, self.b):
                raise ValueError("certificate must be feasible for b and sum to lo")

    @property
    def parity_lo(self) -> int:
        return _parity_up(self.lo, self.b)

    @property
    def exact(self) -> bool:
        return self.parity_lo == self.hi

    @property
    def value(self) -> int | None:
        return self.hi if self.exact else None

    def shifted(self, Q: int, tag: str) -> "BoundInterval":
        """The bracket for b + (2^(k-1) - 1) Q under an exact periodicity step."""
        n = (1 << self.k) - 1
        cert = None
        if self.certificate is not None:
            cert = cons.combine(self.certificate, cons.construct_uniform(self.k, Q))
        return BoundInterval(
            self.k,
            self.b + period(self.k) * Q,
            self.lo + n * Q,
            self.hi + n * Q,
            self.lo_provenance + (tag,),
            self.hi_provenance + (tag,),
            cert,
        )

    def __str__(self) -> str:
        if self.exact:
            return str(self.hi)
        return f"[{self.parity_lo},{self.hi}]"


@dataclass(frozen=True)
class InvariantResult:
    """Value or bracket for s_R(m, p), with a realizing matrix for the lower end when one is known."""

    m: int
    p: int
    lo: int
    hi: int
    provenance: str
    certificate: Gf2Mat | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        if self.lo > self.hi:
            raise ValueError(f"empty bracket [{self.lo}, {self.hi}] for s_R({self.m},{self.p})")
        A = self.certificate
        if A is not None:
            if A.m != self.m or A.dim != self.lo or not realizes_fast(A, self.p):
                raise ValueError("certificate must be an lo x m matrix realizing p")

    @property
    def exact(self) -> bool:
        return self.lo == self.hi

    @property
    def value(self) -> int | None:
        return self.lo if self.exact else None

    def __str__(self) -> str:
        return str(self.lo) if self.exact else f"[{self.lo}..{self.hi}]"


# ------------------------------------------------------------- s_R boundary


def _check_mp(m: int, p: int) -> None:
    if m < 1 or not 0 <= p <= m:
        raise ValueError(f"need m >= 1 and 0 <= p <= m, got m={m}, p={p}")


def srm_boundary(m: int, p: int) -> int | None:
    """s_R(m, p) when a boundary case applies, else None."""
    _check_mp(m, p)
    tag = _boundary_case(m, p)
    return None if tag is None else tag[1]


def _boundary_case(m: int, p: int) -> tuple[str, int] | None:
    if p == 0:
        return "empty", 0
    if p == m:
        return "full-rank", m
    if p == 1:
        return "single-column", 1
    if p == m - 1:
        return "one-column-deficit", m - 1
    if p == m - 2:
        return "two-column-deficit", cons.two_deficient_dim(m)
    if p == m - 3:
        return "two-column-deficit-plus-sum", cons.two_deficient_dim(m - 1)
    if m >= 3 * p - 2:
        return "rank-one-threshold", 1
    return None


def _ones_row(m: int) -> Gf2Mat:
    return Gf2Mat.from_bits(1, [1] * m)


def _boundary_certificate(m: int, p: int, tag: str, value: int) -> Gf2Mat | None:
    if value < 1 or value > MAX_DIM:
        return None
    if value == 1:
        return _ones_row(m)
    if tag == "full-rank":
        return Gf2Mat.from_bits(m, [1 << i for i in range(m)])
    if tag == "one-column-deficit":
        return cons.matrix_basis_plus_sum(m)
    if tag == "two-column-deficit":
        return cons.matrix_two_deficient(m)
    if tag == "two-column-deficit-plus-sum":
        return cons.extend_by_sum(cons.matrix_two_deficient(m - 1), p)
    return None


# -------------------------------------------------------------- closed forms


def _closed_candidates(k: int, b: int) -> list[tuple[int, str]]:
    h = period(k)
    n = (1 << k) - 1
    half = 1 << (k - 1)
    Q, R = divmod(b, h)
    out: list[tuple[int, str]] = []
    if k == 2:
        out.append((3 * b, "three-b"))
    if R == 0:
        out.append((n * Q, "divisible-case"))
    # master family: R = 2^(k-1) - 2^(k-1-l) + r with 0 <= r <= k-l-1
    for ell in range(k - 1):
        j = k - ell
        r = R - (half - (half >> ell))
        if 0 <= r <= j - 1:
            tail = r if r <= j - 2 else r + 2
            out.append((n * Q + (1 << k) - (1 << j) + tail, "subspace-family"))
    # R = 2^(k-1) - 2^(j-1) + j + 1 with j = k - l in 4..11
    for j in range(4, min(k, 11) + 1):
        if R == half - (1 << (j - 1)) + j + 1:
            out.append((n * Q + (1 << k) - (1 << j) + j + 5, "subspace-family-plus-five"))
    if b == k:
        out.append((b + 4 if k <= 4 else b + 2, "b-equals-k"))
    if b == k + 1:
        out.append((b + 6 if k == 2 else b + 4 if k <= 11 else b + 2, "b-equals-k-plus-1"))
    return out


def mk_closed(k: int, b: int) -> int | None:
    """m_k(b) when a proven closed form applies; all applicable forms must agree."""
    _check_kb(k, b)
    cands = _closed_candidates(k, b)
    if not cands:
        return None
    values = {v for v, _ in cands}
    if len(values) != 1:
        raise AssertionError(f"closed forms disagree at k={k}, b={b}: {cands}")
    return values.pop()


def mk_closed_sources(k: int, b: int) -> list[tuple[int, str]]:
    """Every closed form that applies at (k, b), with its tag."""
    _check_kb(k, b)
    return _closed_candidates(k, b)


# ------------------------------------------------------------- lower bounds

# A recipe describes how to build a certificate; totals are tracked without
# materializing vectors, which matters once k is large.

_TAGS = {
    "uniform": "divisible-case",
    "trivial": "trivial-point",
    "subspace": "subspace-construction",
    "odd": "odd-weight-indicator",
    "lift": "period-lift",
    "basis-plus-sum": "basis-plus-sum",
    "4x8": "explicit-4x8",
    "two-deficient": "two-deficient",
    "pair": "superadditive-DP",
    "shift": "superadditive-DP",
}


class LowerBound(NamedTuple):
    value: int
    provenance: tuple[str, ...]
    certificate: MultiplicityVector


_dp_tables: dict[int, list[tuple[int, tuple]]] = {}
_far_memo: dict[tuple[int, int], tuple[int, tuple]] = {}


def _direct_sources(k: int, b: int) -> list[tuple[int, tuple]]:
    h = period(k)
    n = (1 << k) - 1
    half = 1 << (k - 1)
    Q, R = divmod(b, h)
    out: list[tuple[int, tuple]] = [(n * Q + R, ("trivial", b))]
    if R == 0:
        out.append((n * Q, ("uniform", Q)))
    ell = cons.subspace_window(k, R)
    out.append((n * Q + R + half - (half >> ell), ("subspace", Q, R)))
    if k >= 3 and Q == 0:
        for q in (1, 2, 4):
            if q == 4 and k % 2:
                continue
            qb, total = cons.odd_weight_indicator_target(k, q)
            if qb == b:
                out.append((total, ("odd", q)))
    if k >= 3 and Q == 0 and b >= half // 2:
        Rp = b - half // 2
        if Rp <= period(k - 1) - 1:
            inner, _ = _lower_entry(k - 1, Rp)
            out.append((half + inner, ("lift", Rp)))
    if b == k - 1:
        out.append((k + 1, ("basis-plus-sum",)))
    if k == 4 and b == 4:
        out.append((8, ("4x8",)))
    n_extra = b + 3 - k
    if n_extra >= 2 and k <= (1 << n_extra) - 1 - n_extra:
        out.append((b + 4, ("two-deficient", b)))
    return out


def _best(cands: list[tuple[int, tuple]]) -> tuple[int, tuple]:
    # first strict maximum keeps the simplest recipe on ties
    best = cands[0]
    for c in cands[1:]:
        if c[0] > best[0]:
            best = c
    return best


def _lower_entry(k: int, b: int) -> tuple[int, tuple]:
    if b <= DP_CAP:
        table = _dp_tables.setdefault(k, [])
        while len(table) <= b:
            c = len(table)
            cands = _direct_sources(k, c)
            for b1 in range(1, c // 2 + 1):
                cands.append((table[b1][0] + table[c - b1][0], ("pair", b1, c - b1)))
            table.append(_best(cands))
        return table[b]
    key = (k, b)
    if key not in _far_memo:
        h = period(k)
        Q, R = divmod(b, h)
        cands = _direct_sources(k, b)
        if Q > 0:
            inner, _ = _lower_entry(k, R)
            cands.append((((1 << k) - 1) * Q + inner, ("shift", Q, R)))
        _far_memo[key] = _best(cands)
    return _far_memo[key]


def _recipe_tags(k: int, recipe: tuple, acc: set[str]) -> None:
    kind = recipe[0]
    acc.add(_TAGS[kind])
    if kind == "pair":
        for bi in recipe[1:]:
            _recipe_tags(k, _lower_entry(k, bi)[1], acc)
    elif kind == "shift":
        acc.add(_TAGS["uniform"])
        _recipe_tags(k, _lower_entry(k, recipe[2])[1], acc)
    elif kind == "lift":
        _recipe_tags(k - 1, _lower_entry(k - 1, recipe[1])[1], acc)


@lru_cache(maxsize=4096)
def _build(k: int, b: int) -> tuple[int, ...]:
    value, recipe = _lower_entry(k, b)
    kind = recipe[0]
    if kind == "trivial":
        mv = cons.construct_trivial(k, b)
    elif kind == "uniform":
        mv = cons.construct_uniform(k, recipe[1])
    elif kind == "subspace":
        mv = cons.construct_subspace_point(k, recipe[1], recipe[2])
    elif kind == "odd":
        mv = cons.construct_odd_weight_indicator(k, recipe[1])
    elif kind == "lift":
        Rp = recipe[1]
        mv = cons.lift_period(MultiplicityVector(k - 1, _build(k - 1, Rp)), 0, Rp)
    elif kind == "basis-plus-sum":
        mv, _ = matrix_to_multiplicities(cons.matrix_basis_plus_sum(k + 1))
    elif kind == "4x8":
        mv, _ = matrix_to_multiplicities(cons.matrix_4x8())
    elif kind == "two-deficient":
        mv = cons.two_deficient_point(k, b)
    elif kind == "pair":
        a1 = np.array(_build(k, recipe[1]), dtype=np.int64)
        a2 = np.array(_build(k, recipe[2]), dtype=np.int64)
        mv = MultiplicityVector(k, tuple((a1 + a2).tolist()))
    elif kind == "shift":
        a = np.array(_build(k, recipe[2]), dtype=np.int64) + recipe[1]
        mv = MultiplicityVector(k, tuple(a.tolist()))
    else:
        raise AssertionError(f"unknown recipe {recipe!r}")
    if mv is None or mv.total != value or not feasible(mv, b):
        raise cons.CertificateError(f"recipe {recipe!r} failed to certify m_{k}({b}) >= {value}")
    return mv.counts


def mk_lower(k: int, b: int) -> LowerBound:
    """Best witnessed lower bound for m_k(b), with a verified certificate."""
    _check_kb(k, b)
    value, recipe = _lower_entry(k, b)
    tags: set[str] = set()
    _recipe_tags(k, recipe, tags)
    mv = MultiplicityVector(k, _build(k, b))
    return LowerBound(value, tuple(sorted(tags)), mv)


def mk_lower_value(k: int, b: int) -> int:
    """The value of mk_lower without building the certificate."""
    _check_kb(k, b)
    return _lower_entry(k, b)[0]


# ------------------------------------------------------------- upper bounds


def _special_remainder(k: int, R: int) -> bool:
    half = 1 << (k - 1)
    return any(R == half - (half >> ell) for ell in range(k - 1))


@lru_cache(maxsize=None)
def _upper(k: int, b: int) -> tuple[int, tuple[str, ...]]:
    closed = mk_closed(k, b)
    if closed is not None:
        return closed, ("closed-form",)
    h = period(k)
    n = (1 << k) - 1
    Q, R = divmod(b, h)
    cands: list[tuple[int, str]] = [(n * b // h, "lp-floor")]
    if R > 0 and not _special_remainder(k, R):
        cands.append((n * Q + 2 * R - 1, "S2R-exclusion"))
    if k > 2:
        if R > 0:
            cands.append((_upper(k - 1, b - Q - 1)[0] + Q + 1, "k-recursion"))
        cands.append((_upper(k - 1, b)[0], "k-monotone"))
    raw = min(v for v, _ in cands)
    tags = tuple(t for v, t in cands if v == raw)
    value = _parity_down(raw, b)
    if value < raw:
        tags += ("parity",)
    return value, tags


def mk_upper(k: int, b: int) -> tuple[int, tuple[str, ...]]:
    """Best proven upper bound for m_k(b) and the sources attaining it."""
    _check_kb(k, b)
    return _upper(k, b)


# ------------------------------------------------------------------ brackets


def periodicity_applies(k: int, b: int) -> bool:
    """Whether m_k(b + 2^(k-1) - 1) = m_k(b) + 2^k - 1 is proven for this b."""
    Q, R = divmod(b, period(k))
    quarter = 1 << (k - 2)
    return Q >= (R if R <= quarter - 1 else R - quarter)


@lru_cache(maxsize=8192)
def bounds(k: int, b: int) -> BoundInterval:
    """Combine closed forms, constructions and upper-bound recursions into one bracket."""
    _check_kb(k, b)
    h = period(k)
    if b >= h and periodicity_applies(k, b - h):
        # every step down to quotient t is covered, so jump there at once
        Q, R = divmod(b, h)
        quarter = 1 << (k - 2)
        t = R if R <= quarter - 1 else R - quarter
        base = bounds(k, t * h + R).shifted(Q - t, "periodicity")
        low = mk_lower_value(k, b)
        up, up_tags = mk_upper(k, b)
        lo, lo_tags, cert = base.lo, base.lo_provenance, base.certificate
        hi, hi_tags = base.hi, base.hi_provenance
        if low > lo:
            lb = mk_lower(k, b)
            lo, lo_tags, cert = lb
        if up < hi:
            hi, hi_tags = up, up_tags
        return BoundInterval(k, b, lo, hi, lo_tags, hi_tags, cert)
    lb = mk_lower(k, b)
    hi, hi_tags = mk_upper(k, b)
    lo, lo_tags, cert = lb.value, lb.provenance, lb.certificate
    closed = mk_closed(k, b)
    if closed is not None and _parity_up(lo, b) < closed:
        # proven value without a matching certificate
        lo, lo_tags, cert = closed, ("closed-form", "asserted"), None
    return BoundInterval(k, b, lo, hi, lo_tags, hi_tags, cert)


def _with_sum_column(mv: MultiplicityVector, p: int) -> Gf2Mat | None:
    A = multiplicities_to_matrix(mv)
    if A.m < p or (A.m - p) % 2:
        return None
    try:
        return cons.extend_by_sum(A, p)
    except cons.CertificateError:
        return None


def srm_certificate(k: int, m: int, p: int, bi: BoundInterval) -> Gf2Mat | None:
    """A k x m matrix realizing p, from a bracket whose parity-adjusted lower end reaches m."""
    if k == 1:
        return _ones_row(m)
    cert = bi.certificate
    if cert is None:
        return None
    if cert.total >= m:
        return multiplicities_to_matrix(pad_to(cert, m))
    if cert.total == m - 1:
        return _with_sum_column(cert, p)
    return None


def srm_bounds(m: int, p: int) -> InvariantResult:
    """Bracket for s_R(m, p) from the m_k(p - 1) brackets, k = 2 .. min(p, 16)."""
    _check_mp(m, p)
    case = _boundary_case(m, p)
    if case is not None:
        tag, value = case
        return InvariantResult(m, p, value, value, tag, _boundary_certificate(m, p, tag, value))
    b = p - 1
    kmax = min(p, MAX_DIM)
    brackets = {k: bounds(k, b) for k in range(2, kmax + 1)}
    # m_k(b) is non-increasing in k, so an upper bound at k caps every larger k
    running_hi = None
    s_lo, s_hi = 1, 1
    for k in range(2, kmax + 1):
        bi = brackets[k]
        running_hi = bi.hi if running_hi is None else min(running_hi, bi.hi)
        if bi.parity_lo >= m:
            s_lo = k
        if running_hi >= m:
            s_hi = k
    if p > MAX_DIM and s_hi == MAX_DIM:
        s_hi = p
    if m >= p + 4:
        s_hi = min(s_hi, cons.two_deficient_dim(p + 2))
    s_hi = max(s_hi, s_lo)
    cert = None
    if s_lo == 1:
        cert = _ones_row(m)
    elif s_lo <= MAX_DIM:
        cert = srm_certificate(s_lo, m, p, brackets[s_lo])
    return InvariantResult(m, p, s_lo, s_hi, "hyperplane-bounds", cert)
