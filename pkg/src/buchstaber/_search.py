"""Numba kernel for the depth-first branch-and-bound over multiplicity vectors.

Variables are the nonzero vectors v = 1..n (n = 2**k - 1) in canonical order;
constraints are indexed by the nonzero u = 1..n.  Arrays are sized n + 1 and
index 0 is unused.
"""

from __future__ import annotations

import time

import numpy as np
from numba import njit, objmode

BIG = 1 << 60
CLOCK_EVERY = 1 << 18


def parity_table(k: int) -> np.ndarray:
    size = 1 << k
    par = np.zeros(size, dtype=np.int8)
    for x in range(1, size):
        par[x] = par[x >> 1] ^ (x & 1)
    return par


def last_indices(k: int, par: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """For each u: the largest v with (u, v) = 0 and the largest v with (u, v) = 1."""
    size = 1 << k
    last_perp = np.zeros(size, dtype=np.int64)
    last_nonperp = np.zeros(size, dtype=np.int64)
    v = np.arange(1, size)
    for u in range(1, size):
        dots = par[u & v]
        perp = np.flatnonzero(dots == 0)
        last_perp[u] = perp[-1] + 1 if perp.size else 0
        last_nonperp[u] = np.flatnonzero(dots)[-1] + 1
    return last_perp, last_nonperp


@njit(cache=True)
def _apply(v, x, slack, par, n):
    for u in range(1, n + 1):
        if par[u & v] == 0:
            slack[u] -= x


@njit(cache=True)
def _cap(v, slack, par, n):
    c = BIG
    for u in range(1, n + 1):
        if par[u & v] == 0 and slack[u] < c:
            c = slack[u]
    return c


@njit(cache=True)
def _lowest_relevant(vstart, slack, in_w, last_perp, n, skip):
    """The (skip+1)-th lowest-slack relevant hyperplane outside the marked set."""
    pick = -1
    for _ in range(skip + 1):
        ps = BIG
        pick = -1
        for u in range(1, n + 1):
            if in_w[u] == 0 and last_perp[u] >= vstart and slack[u] < ps:
                ps = slack[u]
                pick = u
        if pick < 0:
            break
        in_w[pick] = 2
    for u in range(1, n + 1):
        if in_w[u] == 2:
            in_w[u] = 0
    return pick


@njit(cache=True)
def residual_bound(vstart, slack, par, n, k, last_perp, last_nonperp, in_w, members, n_chains):
    """Upper bound on the sum of the variables v >= vstart under the current slacks.

    Each candidate is a dual solution supported on the nonzero elements of a
    subspace W of constraint indices: a nonzero v is orthogonal to at least
    2**(d-1) - 1 of them (d = dim W), so the sum of those constraints divided
    by that count bounds the remaining sum.  W = everything gives the plain
    total-slack bound.  Smaller W are grown greedily from low-slack
    constraints.  Constraints that contain no remaining variable are dropped.
    """
    h = (1 << (k - 1)) - 1
    total = 0
    for u in range(1, n + 1):
        if last_perp[u] >= vstart:
            total += slack[u]
    best = total // h
    for chain in range(n_chains):
        for u in range(n + 1):
            in_w[u] = 0
        in_w[0] = 1
        members[0] = 0
        size = 1
        d = 0
        acc = 0
        while d < k - 1:
            pick = _lowest_relevant(vstart, slack, in_w, last_perp, n, chain if d == 0 else 0)
            if pick < 0:
                break
            for j in range(size):
                w = members[j] ^ pick
                in_w[w] = 1
                members[size + j] = w
                if last_perp[w] >= vstart:
                    acc += slack[w]
            size *= 2
            d += 1
            if d == 1:
                # a single constraint is a valid bound only if it holds every remaining variable
                if last_nonperp[pick] < vstart and acc < best:
                    best = acc
            else:
                cand = acc // ((1 << (d - 1)) - 1)
                if cand < best:
                    best = cand
    return best


@njit(cache=True)
def _basis_cap(w, assigned):
    """Symmetry cap for variable w: value of the latest basis vector before it."""
    top = 1
    while top * 2 <= w:
        top *= 2
    if top == w:
        if top == 1:
            return BIG
        return assigned[top // 2]
    return assigned[top]


@njit(cache=True)
def search(k, b, incumbent, inc_counts, use_parity, use_symmetry, node_budget,
           stop_at, first_lo, first_hi, deadline, n_chains, par, last_perp, last_nonperp):
    """Depth-first branch-and-bound.

    Returns ``(best, best_counts, nodes, status)`` with status 0 = search
    complete, 1 = node budget exhausted, 2 = deadline passed.  ``stop_at`` is
    a proven upper bound; reaching it ends the search early.  The value of the
    first variable is restricted to ``[first_lo, first_hi]`` so that root
    branches can be farmed out.
    """
    n = (1 << k) - 1
    slack = np.full(n + 1, b, dtype=np.int64)
    slack[0] = 0
    best = incumbent
    best_counts = inc_counts.copy()
    assigned = np.zeros(n + 2, dtype=np.int64)
    nxt = np.zeros(n + 2, dtype=np.int64)
    in_w = np.zeros(n + 1, dtype=np.int8)
    members = np.zeros(n + 1, dtype=np.int64)
    nodes = 0
    total = 0
    bpar = b & 1

    root = residual_bound(1, slack, par, n, k, last_perp, last_nonperp, in_w, members, n_chains)
    if use_parity and (root & 1) != bpar:
        root -= 1
    if stop_at > root:
        stop_at = root
    if best >= stop_at:
        return best, best_counts, nodes, 0

    v = 1
    c = _cap(1, slack, par, n)
    if first_hi < c:
        c = first_hi
    nxt[1] = c + 1
    while v >= 1:
        if assigned[v] > 0:
            _apply(v, -assigned[v], slack, par, n)
            total -= assigned[v]
            assigned[v] = 0
        nxt[v] -= 1
        x = nxt[v]
        if x < 0 or (v == 1 and x < first_lo):
            v -= 1
            continue
        nodes += 1
        if nodes > node_budget:
            return best, best_counts, nodes, 1
        if deadline > 0.0 and nodes % CLOCK_EVERY == 0:
            with objmode(now="float64"):
                now = time.time()
            if now > deadline:
                return best, best_counts, nodes, 2
        if x > 0:
            _apply(v, x, slack, par, n)
            total += x
            assigned[v] = x
        if v == n:
            if total > best:
                best = total
                for j in range(1, n + 1):
                    best_counts[j - 1] = assigned[j]
                if best >= stop_at:
                    return best, best_counts, nodes, 0
            continue
        limit = total + residual_bound(v + 1, slack, par, n, k, last_perp, last_nonperp,
                                       in_w, members, n_chains)
        if use_symmetry:
            cap = _basis_cap(v + 1, assigned)
            if cap < BIG:
                lim2 = total + cap * (n - v)
                if lim2 < limit:
                    limit = lim2
        if use_parity and (limit & 1) != bpar:
            limit -= 1
        if limit <= best:
            continue
        w = v + 1
        c = _cap(w, slack, par, n)
        if use_symmetry:
            cap = _basis_cap(w, assigned)
            if cap < c:
                c = cap
        v = w
        nxt[v] = c + 1
    return best, best_counts, nodes, 0
