"""Command-line interface: ``buchstaber srm|mkb|verify|table|check-paper``."""

from __future__ import annotations

import argparse
import sys
from collections import Counter
from pathlib import Path

from .cache import ResultCache
from .closed_forms import bounds, srm_bounds
from .fixtures import mk_table, srm_table
from .realizability import (
    MatrixFormatError,
    format_matrix_text,
    parse_matrix_text,
    realizes_fast,
    realizes_naive,
    violating_hyperplanes,
)
from .solver import SolveOptions, solve_mk, solve_srm
from .tables import (
    MISMATCH,
    check_paper,
    format_cells,
    mkb_cells,
    mkb_evaluator,
    parse_range,
    srm_cells,
    srm_evaluator,
)

EXIT_OK, EXIT_USAGE, EXIT_INTERVAL, EXIT_NOT_REALIZING = 0, 1, 2, 3
NAIVE_LIMIT = 20


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _solver_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--budget", type=int, default=10**8, help="maximum search nodes per m_k(b) solve")
    p.add_argument("--time-limit", type=float, default=None, help="seconds per m_k(b) solve")
    p.add_argument("--oracle", action="store_true", help="plain search: no parity, symmetry or warm start")
    p.add_argument("--no-symmetry", action="store_true")
    p.add_argument("--no-parity", action="store_true")
    p.add_argument("--cache", default="./mkb-cache.json", help="result cache file ('' disables)")


def _options(args) -> SolveOptions:
    return SolveOptions(
        node_budget=args.budget,
        use_parity_pruning=not args.no_parity,
        use_symmetry=not args.no_symmetry,
        oracle_mode=args.oracle,
        time_limit=args.time_limit,
    )


def _cache(args) -> ResultCache | None:
    return ResultCache(args.cache) if args.cache else None


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="buchstaber", description="Real Buchstaber invariant s_R(m,p) and the ILP m_k(b).")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("srm", help="compute s_R(m,p)")
    p.add_argument("m", type=int)
    p.add_argument("p", type=int)
    p.add_argument("--bounds-only", action="store_true", help="skip the exact solver")
    p.add_argument("--certificate", action="store_true", help="print a realizing matrix")
    _solver_flags(p)

    p = sub.add_parser("mkb", help="bracket or compute m_k(b)")
    p.add_argument("k", type=int)
    p.add_argument("b", type=int)
    p.add_argument("--exact", action="store_true", help="run the exact solver")
    p.add_argument("--certificate", action="store_true", help="print the certificate counts")
    _solver_flags(p)

    p = sub.add_parser("verify", help="check that a matrix file realizes its declared p")
    p.add_argument("path")

    p = sub.add_parser("table", help="emit a table of s_R or m_k values")
    p.add_argument("kind", choices=["srm", "mkb"])
    p.add_argument("--m", default="2..12")
    p.add_argument("--p", default="2..8")
    p.add_argument("--k", default="2..6")
    p.add_argument("--b", default="0..14")
    p.add_argument("--format", choices=["csv", "markdown"], default="csv")
    p.add_argument("--bounds-only", action="store_true")
    _solver_flags(p)

    p = sub.add_parser("check-paper", help="compare against the published tables")
    p.add_argument("--bounds-only", action="store_true", help="no exact solver; brackets only")
    p.add_argument("--m-max", type=int, default=40)
    p.add_argument("--p-max", type=int, default=18)
    p.add_argument("--q-max", type=int, default=1, help="largest Q checked in the m_k table")
    p.add_argument("--table", choices=["mk", "srm", "both"], default="both", help="which published table to check")
    p.add_argument("--verbose", action="store_true", help="print MATCH lines too")
    _solver_flags(p)
    return ap


def cmd_srm(args) -> int:
    if not (args.m >= 1 and 0 <= args.p <= args.m):
        print(f"error: need m >= 1 and 0 <= p <= m, got m={args.m} p={args.p}", file=sys.stderr)
        return EXIT_USAGE
    if args.bounds_only:
        r = srm_bounds(args.m, args.p)
    else:
        cache = _cache(args)
        r = solve_srm(args.m, args.p, _options(args), cache)
        if cache is not None:
            cache.store()
    print(r)
    print(f"provenance: {r.provenance}")
    if args.certificate:
        if r.certificate is not None:
            print(format_matrix_text(r.certificate, args.p), end="")
        else:
            print("no certificate available")
    return EXIT_OK if r.exact else EXIT_INTERVAL


def cmd_mkb(args) -> int:
    if not 2 <= args.k <= 16 or args.b < 0:
        print("error: need 2 <= k <= 16 and b >= 0", file=sys.stderr)
        return EXIT_USAGE
    bi = bounds(args.k, args.b)
    if args.exact:
        cache = _cache(args)
        res = solve_mk(args.k, args.b, _options(args), cache)
        if cache is not None:
            cache.store()
        print(res.value if res.exact else f"[{res.value},{res.upper}]")
        print(f"status: {res.status}, nodes: {res.nodes}, provenance: {'+'.join(res.provenance)}")
        cert, code = res.certificate, EXIT_OK if res.exact else EXIT_INTERVAL
    else:
        print(bi)
        print(f"lower: {'+'.join(bi.lo_provenance)}; upper: {'+'.join(bi.hi_provenance)}")
        cert, code = bi.certificate, EXIT_OK if bi.exact else EXIT_INTERVAL
    if args.certificate:
        print(" ".join(map(str, cert.counts)) if cert is not None else "no certificate available")
    return code


def cmd_verify(args) -> int:
    try:
        A, p = parse_matrix_text(Path(args.path).read_text())
        if not 1 <= p <= A.m:
            raise MatrixFormatError(f"declared p={p} must satisfy 1 <= p <= m={A.m}")
    except (OSError, MatrixFormatError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    ok = realizes_fast(A, p)
    if A.m <= NAIVE_LIMIT and realizes_naive(A, p) != ok:
        raise AssertionError("hyperplane test and subset enumeration disagree")
    if ok:
        print(f"realizes: every {p} columns span (Z/2)^{A.dim}")
        return EXIT_OK
    u, count = violating_hyperplanes(A, p)[0]
    coords = "".join(str((u >> i) & 1) for i in range(A.dim))
    print(f"does not realize: hyperplane u={coords} holds {count} >= {p} columns")
    return EXIT_NOT_REALIZING


def cmd_table(args) -> int:
    try:
        if args.kind == "srm":
            ms, ps = parse_range(args.m), parse_range(args.p)
        else:
            ks, bs = parse_range(args.k), parse_range(args.b)
            if ks and (ks[0] < 2 or ks[-1] > 16):
                raise ValueError("k must lie in 2..16")
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    opts, cache = _options(args), _cache(args)
    if args.kind == "srm":
        cells = srm_cells(ms, ps, srm_evaluator(opts, args.bounds_only, cache))
        names = ("m", "p")
    else:
        cells = mkb_cells(ks, bs, mkb_evaluator(opts, args.bounds_only, cache))
        names = ("k", "b")
    if cache is not None:
        cache.store()
    sys.stdout.write(format_cells(cells, names, args.format))
    return EXIT_OK


def cmd_check_paper(args) -> int:
    opts, cache = _options(args), _cache(args)
    srm_entries = [e for e in srm_table() if e.coords[0] <= args.m_max and e.coords[1] <= args.p_max]
    lines = check_paper(
        mk_table() if args.table != "srm" else [],
        srm_entries if args.table != "mk" else [],
        mkb_evaluator(opts, args.bounds_only, cache),
        srm_evaluator(opts, args.bounds_only, cache),
        q_values=range(args.q_max + 1),
    )
    if cache is not None:
        cache.store()
    for line in lines:
        if args.verbose or line.status != "MATCH":
            print(line)
    counts = Counter(line.status for line in lines)
    print("summary: " + ", ".join(f"{s} {counts.get(s, 0)}" for s in ("MATCH", "REFINE", "OPEN", "MISMATCH")))
    return EXIT_USAGE if counts.get(MISMATCH) else EXIT_OK


COMMANDS = {
    "srm": cmd_srm,
    "mkb": cmd_mkb,
    "verify": cmd_verify,
    "table": cmd_table,
    "check-paper": cmd_check_paper,
}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return COMMANDS[args.command](args)


if __name__ == "__main__":
    sys.exit(main())
