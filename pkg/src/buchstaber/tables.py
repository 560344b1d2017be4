"""Table emission and comparison against the published fixtures."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from .closed_forms import bounds, srm_bounds
from .fixtures import AT_LEAST, AT_MOST, EXACT, SET, UNKNOWN, TableFixtureEntry, mk_table, srm_table
from .solver import SolveOptions, solve_mk, solve_srm

MATCH, REFINE, OPEN, MISMATCH = "MATCH", "REFINE", "OPEN", "MISMATCH"


def parse_range(text: str) -> range:
    """``"2..12"`` (inclusive) or a single integer."""
    if ".." in text:
        a, b = text.split("..", 1)
        lo, hi = int(a), int(b)
    else:
        lo = hi = int(text)
    if lo < 0:
        raise ValueError(f"negative bound in range {text!r}")
    return range(lo, hi + 1)


@dataclass(frozen=True)
class Cell:
    """One computed table cell: a bracket [lo, hi] and where it came from."""

    coords: tuple[int, int]
    lo: int
    hi: int
    provenance: str

    @property
    def exact(self) -> bool:
        return self.lo == self.hi

    def text(self) -> str:
        return str(self.lo) if self.exact else f"[{self.lo},{self.hi}]"


Evaluator = Callable[[int, int], Cell]


def srm_evaluator(opts: SolveOptions | None, bounds_only: bool, cache=None) -> Evaluator:
    def evaluate(m: int, p: int) -> Cell:
        r = srm_bounds(m, p) if bounds_only else solve_srm(m, p, opts, cache)
        return Cell((m, p), r.lo, r.hi, r.provenance)

    return evaluate


def mkb_evaluator(opts: SolveOptions | None, bounds_only: bool, cache=None) -> Evaluator:
    def evaluate(k: int, b: int) -> Cell:
        bi = bounds(k, b)
        if bi.exact or bounds_only:
            prov = "+".join(bi.lo_provenance) + "/" + "+".join(bi.hi_provenance)
            return Cell((k, b), bi.parity_lo, bi.hi, prov)
        res = solve_mk(k, b, opts, cache)
        if res.exact:
            return Cell((k, b), res.value, res.value, "+".join(res.provenance))
        lo = max(bi.parity_lo, res.value + ((res.value - b) & 1))
        return Cell((k, b), lo, bi.hi, "+".join(res.provenance))

    return evaluate


def srm_cells(ms: Iterable[int], ps: Iterable[int], evaluate: Evaluator) -> list[Cell]:
    ps = list(ps)
    return [evaluate(m, p) for m in ms if m >= 1 for p in ps if 0 <= p <= m]


def mkb_cells(ks: Iterable[int], bs: Iterable[int], evaluate: Evaluator) -> list[Cell]:
    bs = list(bs)
    return [evaluate(k, b) for k in ks for b in bs]


def format_cells(cells: Sequence[Cell], names: tuple[str, str], fmt: str) -> str:
    header = [names[0], names[1], "value", "lo", "hi", "provenance"]
    rows = [[c.coords[0], c.coords[1], c.text(), c.lo, c.hi, c.provenance] for c in cells]
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)
        return buf.getvalue()
    if fmt == "markdown":
        lines = ["| " + " | ".join(header) + " |", "|" + "---|" * len(header)]
        lines += ["| " + " | ".join(str(x) for x in row) + " |" for row in rows]
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown format {fmt!r}")


# ------------------------------------------------------------ reference-table comparison


def classify(entry: TableFixtureEntry, lo: int, hi: int, Q: int = 0) -> str:
    """Compare a computed bracket [lo, hi] with a published cell."""
    allowed = entry.admissible(Q)
    if entry.kind == UNKNOWN:
        return REFINE if lo == hi else OPEN
    if entry.kind in (AT_MOST, AT_LEAST):
        (bound,) = allowed
        if (entry.kind == AT_MOST and lo > bound) or (entry.kind == AT_LEAST and hi < bound):
            return MISMATCH
        return REFINE if lo == hi else OPEN
    if not any(lo <= v <= hi for v in allowed):
        return MISMATCH
    if entry.kind == EXACT:
        return MATCH if lo == hi else OPEN
    assert entry.kind == SET
    return REFINE if lo == hi else MATCH


@dataclass(frozen=True)
class CheckLine:
    status: str
    entry: TableFixtureEntry
    Q: int
    cell: Cell

    def __str__(self) -> str:
        e = self.entry
        if e.table == "mk":
            k, R = e.coords
            where = f"m_{k}({((1 << (k - 1)) - 1) * self.Q + R}) [k={k} R={R} Q={self.Q}]"
        else:
            where = f"s_R({e.coords[0]},{e.coords[1]})"
        published = e.kind if not e.values else f"{e.kind} {sorted(e.admissible(self.Q))}"
        return f"{self.status:8s} {where}: computed {self.cell.text()}, published {published}"


def check_paper(
    mk_entries: Sequence[TableFixtureEntry] | None = None,
    srm_entries: Sequence[TableFixtureEntry] | None = None,
    mk_eval: Evaluator | None = None,
    srm_eval: Evaluator | None = None,
    q_values: Sequence[int] = (0, 1),
) -> list[CheckLine]:
    """Evaluate every fixture cell and classify it."""
    mk_entries = mk_table() if mk_entries is None else mk_entries
    srm_entries = srm_table() if srm_entries is None else srm_entries
    mk_eval = mk_eval or mkb_evaluator(None, True)
    srm_eval = srm_eval or srm_evaluator(None, True)
    out: list[CheckLine] = []
    for e in mk_entries:
        k, R = e.coords
        for Q in q_values:
            cell = mk_eval(k, ((1 << (k - 1)) - 1) * Q + R)
            out.append(CheckLine(classify(e, cell.lo, cell.hi, Q), e, Q, cell))
    for e in srm_entries:
        cell = srm_eval(*e.coords)
        out.append(CheckLine(classify(e, cell.lo, cell.hi), e, 0, cell))
    return out
