"""Exact m_k(b) by branch-and-bound, LP geometry, and exact s_R(m, p) assembly."""

from __future__ import annotations

import time
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple

from . import _search
from .closed_forms import (
    InvariantResult,
    _boundary_case,
    _boundary_certificate,
    _check_kb,
    _check_mp,
    bounds,
    period,
    periodicity_applies,
    srm_bounds,
    srm_certificate,
    BoundInterval,
)
from .constructions import construct_trivial, two_deficient_dim
from .gf2 import MAX_DIM, Gf2Vec, check_dim, dot_bits
from .realizability import MultiplicityVector, feasible

EXACT = "exact"
LOWER_ONLY = "lower-bound-only"


# ----------------------------------------------------------------- LP geometry


def lp_optimum(k: int, b: int) -> Fraction:
    """Maximum of sum(a_v) over the real relaxation: (2^k - 1) b / (2^(k-1) - 1)."""
    _check_kb(k, b)
    return Fraction(((1 << k) - 1) * b, period(k))


@dataclass(frozen=True)
class RationalPoint:
    k: int
    coords: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        check_dim(self.k)
        if len(self.coords) != (1 << self.k) - 1:
            raise ValueError("one coordinate per nonzero vector")
        object.__setattr__(self, "coords", tuple(Fraction(c) for c in self.coords))

    def total(self) -> Fraction:
        return sum(self.coords, Fraction(0))

    def hyperplane_sum(self, u: int) -> Fraction:
        return sum((c for v, c in enumerate(self.coords, start=1) if not dot_bits(u, v)), Fraction(0))


def vertex_coords(k: int, b: int, m: int, u: Gf2Vec | int) -> RationalPoint:
    """Vertex of the slice {sum = m} of the feasible polytope lying off the constraint for u.

    Coordinates are 2b - m + (m - b) / 2^(k-2) where (u, v) = 1 and m - 2b
    where (u, v) = 0.  The point sums to m and is tight on every other
    constraint; both facts are checked.
    """
    _check_kb(k, b)
    ubits = u.bits if isinstance(u, Gf2Vec) else int(u)
    if not 0 < ubits < (1 << k):
        raise ValueError("u must be a nonzero vector of dimension k")
    if m > lp_optimum(k, b):
        raise ValueError(f"m={m} exceeds the LP optimum {lp_optimum(k, b)}")
    off = 2 * b - m + Fraction(m - b, 1 << (k - 2))
    on = Fraction(m - 2 * b)
    pt = RationalPoint(k, tuple(off if dot_bits(ubits, v) else on for v in range(1, 1 << k)))
    if pt.total() != m:
        raise AssertionError("vertex does not lie on the level set")
    for w in range(1, 1 << k):
        if w != ubits and pt.hyperplane_sum(w) != b:
            raise AssertionError(f"vertex is not tight on constraint {w}")
    return pt


# ---------------------------------------------------------------------- solver


@dataclass(frozen=True)
class SolveOptions:
    """Search controls.  ``oracle_mode`` switches off every theorem-derived shortcut."""

    node_budget: int = 10**8
    use_parity_pruning: bool = True
    use_symmetry: bool = True
    oracle_mode: bool = False
    deterministic: bool = True
    warm_start: bool = True
    time_limit: float | None = None

    def __post_init__(self) -> None:
        if self.node_budget < 0:
            raise ValueError("node_budget must be non-negative")
        if self.oracle_mode:
            object.__setattr__(self, "use_parity_pruning", False)
            object.__setattr__(self, "use_symmetry", False)
            object.__setattr__(self, "warm_start", False)


class SolveResult(NamedTuple):
    value: int
    certificate: MultiplicityVector
    status: str
    nodes: int = 0
    upper: int | None = None
    provenance: tuple[str, ...] = ()

    @property
    def exact(self) -> bool:
        return self.status == EXACT


@lru_cache(maxsize=16)
def _tables(k: int):
    par = _search.parity_table(k)
    last_perp, last_nonperp = _search.last_indices(k, par)
    return par, last_perp, last_nonperp


def _run_search(k: int, b: int, incumbent: MultiplicityVector, stop_at: int, opts: SolveOptions):
    par, last_perp, last_nonperp = _tables(k)
    deadline = time.time() + opts.time_limit if opts.time_limit else 0.0
    best, counts, nodes, status = _search.search(
        k, b, incumbent.total, incumbent.as_array(),
        opts.use_parity_pruning, opts.use_symmetry, opts.node_budget,
        stop_at, 0, b, deadline, 1, par, last_perp, last_nonperp,
    )
    mv = MultiplicityVector(k, tuple(int(c) for c in counts))
    if mv.total != best or not feasible(mv, b):
        raise AssertionError(f"search returned an invalid point for m_{k}({b})")
    return mv, int(nodes), int(status)


@lru_cache(maxsize=4096)
def _solve_cached(k: int, b: int, opts: SolveOptions) -> SolveResult:
    if not opts.oracle_mode and b <= k - 2:
        return SolveResult(b, construct_trivial(k, b), EXACT, 0, b, ("small-b",))
    bi: BoundInterval | None = bounds(k, b) if opts.warm_start else None
    if bi is not None and bi.certificate is not None and bi.certificate.total == bi.hi:
        return SolveResult(bi.hi, bi.certificate, EXACT, 0, bi.hi, bi.lo_provenance)
    if bi is not None and bi.certificate is not None:
        incumbent, stop_at = bi.certificate, bi.hi
    else:
        incumbent, stop_at = MultiplicityVector.zeros(k), 1 << 62
    mv, nodes, status = _run_search(k, b, incumbent, stop_at, opts)
    if status == 0:
        return SolveResult(mv.total, mv, EXACT, nodes, mv.total, ("branch-and-bound",))
    upper = bi.hi if bi is not None else bounds(k, b).hi
    reason = "node budget" if status == 1 else "time limit"
    return SolveResult(mv.total, mv, LOWER_ONLY, nodes, upper, (f"stopped: {reason}",))


def solve_mk(k: int, b: int, opts: SolveOptions | None = None, cache=None) -> SolveResult:
    """m_k(b) with a certificate; ``status`` is lower-bound-only when the search was cut short.

    ``cache`` (a ResultCache) is consulted first and updated with exact answers.
    """
    _check_kb(k, b)
    opts = opts or SolveOptions()
    if cache is not None and not opts.oracle_mode:
        hit = cache.get(k, b)
        if hit is not None and hit.exact:
            return SolveResult(hit.lo, hit.certificate, EXACT, 0, hit.hi, ("cache",) + hit.provenance)
    res = _solve_cached(k, b, opts)
    if cache is not None and res.exact and not opts.oracle_mode:
        cache.put_result(k, b, res)
    return res


def solve_srm(
    m: int,
    p: int,
    opts: SolveOptions | None = None,
    cache=None,
    use_boundary: bool = True,
) -> InvariantResult:
    """s_R(m, p) from the values m_k(p - 1) for ascending k.

    s_R(m, p) = k exactly when m_(k+1)(p - 1) < m <= m_k(p - 1).  Budget
    exhaustion turns the answer into a bracket.
    """
    _check_mp(m, p)
    if p == 0 or p == 1 or (use_boundary and _boundary_case(m, p) is not None):
        tag, value = _boundary_case(m, p)
        return InvariantResult(m, p, value, value, tag, _boundary_certificate(m, p, tag, value))
    b = p - 1
    s_lo, s_hi = 1, 1
    witness: tuple[int, SolveResult] | None = None
    for k in range(2, min(p, MAX_DIM) + 1):
        res = solve_mk(k, b, opts, cache)
        lo = res.value + ((res.value - b) & 1)
        hi = res.value if res.exact else res.upper
        if lo >= m:
            s_lo, witness = k, (k, res)
        if hi < m:
            break
        s_hi = k
    else:
        if p > MAX_DIM:
            s_hi = p
    if m >= p + 4:
        s_hi = min(s_hi, two_deficient_dim(p + 2))
    s_hi = max(s_hi, s_lo)
    cert = None
    if s_lo == 1:
        cert = srm_certificate(1, m, p, None)
    elif witness is not None:
        k, res = witness
        proxy = BoundInterval(k, b, res.value, max(res.value, res.upper or res.value), (), (), res.certificate)
        cert = srm_certificate(k, m, p, proxy)
    prov = "branch-and-bound"
    if use_boundary and (opts is None or opts.warm_start):
        # the bounds engine also uses monotonicity in k, which the loop above does not
        sb = srm_bounds(m, p)
        if sb.lo > s_lo:
            s_lo, cert, prov = sb.lo, sb.certificate, sb.provenance
        s_hi = max(min(s_hi, sb.hi), s_lo)
    if s_lo != s_hi:
        prov += "-bracket"
    return InvariantResult(m, p, s_lo, s_hi, prov, cert)


# -------------------------------------------------------------- shift identity


class ShiftCheck(NamedTuple):
    b: int
    base: int | None
    shifted: int | None
    holds: bool | None
    covered: bool


@dataclass
class ConjectureReport:
    k: int
    entries: list[ShiftCheck] = field(default_factory=list)

    @property
    def violations(self) -> list[ShiftCheck]:
        return [e for e in self.entries if e.holds is False]

    @property
    def skipped(self) -> list[ShiftCheck]:
        return [e for e in self.entries if e.holds is None]

    def summary(self) -> str:
        checked = len(self.entries) - len(self.skipped)
        covered = sum(e.covered for e in self.entries)
        return (
            f"k={self.k}: {checked} checked, {len(self.violations)} violations, "
            f"{covered} covered by the large-b periodicity theorem, {len(self.skipped)} skipped"
        )


def conjecture_scan(k: int, b_max: int, opts: SolveOptions | None = None) -> ConjectureReport:
    """Check m_k(b + 2^(k-1) - 1) = m_k(b) + 2^k - 1 for b = 0..b_max.

    The default options run without warm starts so that the bounds engine,
    which uses the proven periodicity, does not feed the answer back in.
    """
    check_dim(k)
    opts = opts or SolveOptions(warm_start=False)
    h, n = period(k), (1 << k) - 1
    report = ConjectureReport(k)
    for b in range(b_max + 1):
        lo, hi = solve_mk(k, b, opts), solve_mk(k, b + h, opts)
        covered = periodicity_applies(k, b)
        if lo.exact and hi.exact:
            report.entries.append(ShiftCheck(b, lo.value, hi.value, hi.value == lo.value + n, covered))
        else:
            report.entries.append(ShiftCheck(b, None, None, None, covered))
    for e in report.violations:
        warnings.warn(
            f"shift identity fails at k={k}, b={e.b}: m_k(b)={e.base}, m_k(b+{h})={e.shifted}",
            stacklevel=2,
        )
    return report
