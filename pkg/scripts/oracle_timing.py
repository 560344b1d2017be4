"""Time the oracle search (no parity, symmetry or warm start) on m_k(k-1) = k + 1.

    python3 scripts/oracle_timing.py --k-max 7 --time-limit 300
"""

from __future__ import annotations

import argparse
import time
from dataclasses import dataclass

from buchstaber.solver import SolveOptions, solve_mk


@dataclass(frozen=True)
class Config:
    k_min: int = 2
    k_max: int = 6
    time_limit: float | None = 120.0


def run(cfg: Config) -> list[tuple[int, int, bool, float, int]]:
    solve_mk(3, 2, SolveOptions(oracle_mode=True))  # compile outside the timings
    rows = []
    for k in range(cfg.k_min, cfg.k_max + 1):
        opts = SolveOptions(oracle_mode=True, node_budget=10**15, time_limit=cfg.time_limit)
        t0 = time.perf_counter()
        r = solve_mk(k, k - 1, opts)
        dt = time.perf_counter() - t0
        rows.append((k, r.value, r.exact, dt, r.nodes))
        verdict = "ok" if r.exact and r.value == k + 1 else ("WRONG" if r.exact else "timed out")
        print(f"k={k}  m_k(k-1)={r.value}{'' if r.exact else '+'}  want {k + 1}  {verdict}  {dt:8.2f}s  {r.nodes} nodes", flush=True)
    return rows


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--k-min", type=int, default=2)
    ap.add_argument("--k-max", type=int, default=6)
    ap.add_argument("--time-limit", type=float, default=120.0, help="seconds per k; 0 for none")
    a = ap.parse_args()
    run(Config(a.k_min, a.k_max, a.time_limit or None))
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
