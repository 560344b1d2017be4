"""Recompute both reference tables and report MATCH / REFINE / OPEN / MISMATCH per cell.

    python3 scripts/reproduce_tables.py                   # bounds only, about a second
    python3 scripts/reproduce_tables.py --solver --table mk --time-limit 120
"""

from __future__ import annotations

import argparse
import time
from collections import Counter
from dataclasses import dataclass

from buchstaber.cache import ResultCache
from buchstaber.fixtures import mk_table, srm_table
from buchstaber.solver import SolveOptions
from buchstaber.tables import MATCH, check_paper, mkb_evaluator, srm_evaluator


@dataclass(frozen=True)
class Config:
    solver: bool = False
    table: str = "both"
    m_max: int = 40
    p_max: int = 18
    q_max: int = 1
    node_budget: int = 10**8
    time_limit: float | None = None
    cache: str = "mkb-cache.json"
    verbose: bool = False


def run(cfg: Config) -> Counter:
    opts = SolveOptions(node_budget=cfg.node_budget, time_limit=cfg.time_limit)
    cache = ResultCache(cfg.cache) if cfg.cache else None
    mk = mk_table() if cfg.table in ("mk", "both") else []
    srm = [e for e in srm_table() if e.coords[0] <= cfg.m_max and e.coords[1] <= cfg.p_max]
    if cfg.table == "mk":
        srm = []
    t0 = time.perf_counter()
    lines = check_paper(
        mk,
        srm,
        mk_eval=mkb_evaluator(opts, not cfg.solver, cache),
        srm_eval=srm_evaluator(opts, not cfg.solver, cache),
        q_values=range(cfg.q_max + 1),
    )
    if cache is not None:
        cache.store()
    for ln in lines:
        if cfg.verbose or ln.status != MATCH:
            print(ln)
    counts = Counter(ln.status for ln in lines)
    print(
        "summary: "
        + ", ".join(f"{s} {counts[s]}" for s in ("MATCH", "REFINE", "OPEN", "MISMATCH"))
        + f"  ({time.perf_counter() - t0:.1f}s)"
    )
    return counts


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--solver", action="store_true", help="run branch-and-bound on cells the bounds leave open")
    ap.add_argument("--table", choices=("mk", "srm", "both"), default="both")
    ap.add_argument("--m-max", type=int, default=40)
    ap.add_argument("--p-max", type=int, default=18)
    ap.add_argument("--q-max", type=int, default=1)
    ap.add_argument("--budget", type=int, default=10**8)
    ap.add_argument("--time-limit", type=float, default=None, help="seconds per m_k(b) search")
    ap.add_argument("--cache", default="mkb-cache.json", help="'' disables")
    ap.add_argument("--verbose", action="store_true")
    a = ap.parse_args()
    cfg = Config(a.solver, a.table, a.m_max, a.p_max, a.q_max, a.budget, a.time_limit, a.cache, a.verbose)
    return 1 if run(cfg)["MISMATCH"] else 0


if __name__ == "__main__":
    raise SystemExit(main())
