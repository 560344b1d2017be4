"""Scan the shift identity m_k(b + 2^(k-1) - 1) = m_k(b) + 2^k - 1 by exact search.

The identity fails for k = 5 at b = 5 (m_5(5) = 7, m_5(20) = 40) and for
k = 6 at b = 9 (m_6(9) = 15, m_6(40) = 80).  The k = 6 case needs
``--time-limit`` and finishes only if the searches settle.

    python3 scripts/shift_scan.py --k 3 --b-max 12
    python3 scripts/shift_scan.py --k 5 --b-max 5
"""

from __future__ import annotations

import argparse
import time
import warnings
from dataclasses import dataclass

from buchstaber.solver import SolveOptions, conjecture_scan


@dataclass(frozen=True)
class Config:
    k: int = 3
    b_max: int = 12
    node_budget: int = 10**9
    time_limit: float | None = None


def run(cfg: Config):
    opts = SolveOptions(warm_start=False, node_budget=cfg.node_budget, time_limit=cfg.time_limit)
    t0 = time.perf_counter()
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        report = conjecture_scan(cfg.k, cfg.b_max, opts)
    for e in report.entries:
        tag = {True: "holds", False: "FAILS", None: "undecided"}[e.holds]
        cover = "  (covered by proven periodicity)" if e.covered else ""
        print(f"b={e.b:3d}  m_k(b)={e.base}  m_k(b+h)={e.shifted}  {tag}{cover}")
    print(report.summary() + f"  ({time.perf_counter() - t0:.1f}s)")
    return report


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--k", type=int, default=3)
    ap.add_argument("--b-max", type=int, default=12)
    ap.add_argument("--budget", type=int, default=10**9)
    ap.add_argument("--time-limit", type=float, default=None)
    a = ap.parse_args()
    run(Config(a.k, a.b_max, a.budget, a.time_limit))
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
