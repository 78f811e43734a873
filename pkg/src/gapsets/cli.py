"""Command-line front end: enumeration, tables, maps, verification campaigns.

Exit codes: 0 success, 1 property violation (verify), 2 bad flags,
3 resource limit exceeded, 4 invalid gapset input (map).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Optional

from .core import (
    Gapset,
    GapsetRejection,
    InvariantRecord,
    as_candidate,
    depth,
    invariants,
    validate_gapset,
)
from .enumeration import (
    CacheError,
    ResourceLimitError,
    filter_gapsets,
    gapsets_for_genus,
)
from .maps import (
    PreconditionError,
    UnsupportedDepthError,
    narrow_max_gap,
    shift_blocks,
    widen_max_gap,
)
from .tally import (
    CountGrid,
    build_count_grid,
    diagonal_sequence,
    format_cumulative,
    format_ratio,
)
from .verification import SUITE_NAMES, run_suites

CACHE_ENV_VAR = "GAPSET_CACHE_DIR"

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_USAGE = 2
EXIT_RESOURCE = 3
EXIT_BAD_GAPSET = 4


def _record_dict(rec: InvariantRecord, elements) -> dict:
    return {
        "gaps": list(elements),
        "genus": rec.genus,
        "multiplicity": rec.multiplicity,
        "conductor": rec.conductor,
        "frobenius": rec.frobenius,
        "depth": rec.depth,
        "kappa": rec.kappa,
        "alpha": rec.alpha,
    }


CSV_HEADER = "gaps,genus,multiplicity,conductor,frobenius,depth,kappa,alpha"


def _record_csv(rec: InvariantRecord, elements) -> str:
    gaps = " ".join(map(str, elements))
    alpha = "" if rec.alpha is None else str(rec.alpha)
    return (
        f"{gaps},{rec.genus},{rec.multiplicity},{rec.conductor},"
        f"{rec.frobenius},{rec.depth},{rec.kappa},{alpha}"
    )


def _cache_dir(args) -> Optional[str]:
    if getattr(args, "cache_dir", None):
        return args.cache_dir
    return os.environ.get(CACHE_ENV_VAR) or None


def cmd_enumerate(args, out) -> int:
    stream = gapsets_for_genus(
        args.genus, cache_dir=_cache_dir(args), workers=args.workers
    )
    if args.kappa is not None or args.depth is not None:
        stream = filter_gapsets(
            stream, kappa=args.kappa, pure=args.pure, depth_q=args.depth
        )
    if args.format == "csv":
        print(CSV_HEADER, file=out)
    for g in stream:
        if args.format == "text":
            print(",".join(map(str, g.elements)), file=out)
        elif args.format == "json":
            print(json.dumps(_record_dict(invariants(g), g.elements)), file=out)
        else:
            print(_record_csv(invariants(g), g.elements), file=out)
    return EXIT_OK


def render_grid(grid: CountGrid, markdown: bool = True) -> list[str]:
    ks = list(range(grid.max_genus + 1))
    lines = []

    def cell(g: int, k: int) -> str:
        if (g, k) not in grid.cells:
            return ""
        text = str(grid.cells[(g, k)])
        if markdown and (g, k) in grid.diagonal_marks:
            text += "*"
        return text

    if markdown:
        lines.append("| g\\k | " + " | ".join(map(str, ks)) + " | n_g |")
        lines.append("|" + " --- |" * (len(ks) + 2))
        for g in range(grid.max_genus + 1):
            row = [str(g)] + [cell(g, k) for k in ks] + [str(grid.row_sums[g])]
            lines.append("| " + " | ".join(row) + " |")
    else:
        lines.append("g," + ",".join(map(str, ks)) + ",n_g")
        for g in range(grid.max_genus + 1):
            row = [str(g)] + [cell(g, k) for k in ks] + [str(grid.row_sums[g])]
            lines.append(",".join(row))
    return lines


def cmd_table(args, out) -> int:
    grid = build_count_grid(
        args.max_genus, cache_dir=_cache_dir(args), workers=args.workers
    )
    for line in render_grid(grid, markdown=args.format == "markdown"):
        print(line, file=out)
    return EXIT_OK


def cmd_sequence(args, out) -> int:
    if args.which == "ng":
        counts = [
            sum(1 for _ in gapsets_for_genus(g, cache_dir=_cache_dir(args), workers=args.workers))
            for g in range(args.max_genus + 1)
        ]
        print(",".join(map(str, counts)), file=out)
        return EXIT_OK
    seq = diagonal_sequence(
        args.max_w, cache_dir=_cache_dir(args), workers=args.workers
    )
    print("w,g_w,ratio,cumulative", file=out)
    for w, term in enumerate(seq.terms):
        print(
            f"{w},{term},{format_ratio(seq.ratios[w])},"
            f"{format_cumulative(seq.cumulative_ratios[w])}",
            file=out,
        )
    return EXIT_OK


def _classify(elements, claimed_m: int) -> str:
    from .core import is_m_set

    if isinstance(validate_gapset(elements), Gapset):
        return "gapset"
    if is_m_set(elements, claimed_m):
        return "m-set-not-gapset"
    return "not-m-set"


def cmd_map(args, out) -> int:
    try:
        values = [int(tok) for tok in args.gapset.split(",") if tok.strip()]
        candidate = as_candidate(values)
    except ValueError as exc:
        print(f"bad --gapset value: {exc}", file=sys.stderr)
        return EXIT_BAD_GAPSET
    checked = validate_gapset(candidate)
    if isinstance(checked, GapsetRejection):
        print(
            f"not a gapset: witness {checked.as_triple()}",
            file=out,
        )
        return EXIT_BAD_GAPSET
    g = checked
    rec = invariants(g)
    print("gapset: " + ",".join(map(str, g.elements)), file=out)
    print(
        f"genus={rec.genus} multiplicity={rec.multiplicity} "
        f"conductor={rec.conductor} frobenius={rec.frobenius} "
        f"depth={rec.depth} kappa={rec.kappa} "
        f"alpha={'-' if rec.alpha is None else rec.alpha}",
        file=out,
    )
    try:
        if args.op == "phi":
            image = widen_max_gap(g)
            print("phi: " + ",".join(map(str, image.elements)), file=out)
            print(f"classification: {image.classification}", file=out)
            if rec.depth <= 3:
                shifted = shift_blocks(g)
                print("sigma: " + ",".join(map(str, shifted)), file=out)
        elif args.op == "sigma":
            shifted = shift_blocks(g)
            print("sigma: " + ",".join(map(str, shifted)), file=out)
            print(
                f"classification: {_classify(shifted, rec.multiplicity + 1)}",
                file=out,
            )
        else:  # phi-inverse
            if args.kappa is None:
                print("--op phi-inverse requires --kappa", file=sys.stderr)
                return EXIT_USAGE
            preimage = narrow_max_gap(g, args.kappa)
            print(
                "phi-inverse: " + ",".join(map(str, preimage.elements)), file=out
            )
            print("classification: gapset", file=out)
    except (PreconditionError, UnsupportedDepthError) as exc:
        print(f"cannot apply {args.op}: {exc}", file=sys.stderr)
        return EXIT_BAD_GAPSET
    return EXIT_OK


def cmd_verify(args, out) -> int:
    names = list(SUITE_NAMES) if args.suite == "all" else [args.suite]
    reports = run_suites(
        names, args.max_genus, cache_dir=_cache_dir(args), workers=args.workers
    )
    total_violations = 0
    for report in reports:
        print(
            f"suite {report.suite}: gapsets={report.gapsets_covered} "
            f"checks={report.checks_run} violations={len(report.violations)}",
            file=out,
        )
        for v in report.violations:
            print(
                f"  VIOLATION {v.check}: {','.join(map(str, v.elements))} {v.detail}",
                file=out,
            )
        total_violations += len(report.violations)
    print(
        f"total: suites={len(reports)} "
        f"gapsets={sum(r.gapsets_covered for r in reports)} "
        f"checks={sum(r.checks_run for r in reports)} "
        f"violations={total_violations}",
        file=out,
    )
    return EXIT_OK if total_violations == 0 else EXIT_VIOLATION


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gapsets",
        description="Enumerate gap sets of numerical semigroups and verify their structure.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", help="list all gapsets of one genus")
    p.add_argument("--genus", type=int, required=True)
    p.add_argument("--kappa", type=int, help="filter by maximum gap")
    p.add_argument(
        "--pure",
        action="store_true",
        help="with --kappa: require the maximum gap to equal kappa exactly",
    )
    p.add_argument("--depth", type=int, help="filter by depth")
    p.add_argument("--format", choices=["json", "csv", "text"], default="text")
    p.add_argument("--cache-dir")
    p.add_argument("--workers", type=int, default=1)

    p = sub.add_parser("table", help="counts by genus and maximum gap")
    p.add_argument("--max-genus", type=int, required=True)
    p.add_argument("--format", choices=["markdown", "csv"], default="markdown")
    p.add_argument("--cache-dir")
    p.add_argument("--workers", type=int, default=1)

    p = sub.add_parser("sequence", help="count sequences")
    p.add_argument("which", choices=["ng", "gw"])
    p.add_argument("--max-genus", type=int, help="for ng")
    p.add_argument("--max-w", type=int, help="for gw")
    p.add_argument("--cache-dir")
    p.add_argument("--workers", type=int, default=1)

    p = sub.add_parser("map", help="apply a genus-raising map to one gapset")
    p.add_argument("--gapset", required=True, help="comma-separated elements")
    p.add_argument(
        "--op", choices=["phi", "sigma", "phi-inverse"], default="phi"
    )
    p.add_argument(
        "--kappa", type=int, help="expected maximum gap (phi-inverse only)"
    )

    p = sub.add_parser("verify", help="run the property suites")
    p.add_argument("--max-genus", type=int, required=True)
    p.add_argument(
        "--suite", choices=list(SUITE_NAMES) + ["all"], default="all"
    )
    p.add_argument("--cache-dir")
    p.add_argument("--workers", type=int, default=1)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "enumerate":
        if args.pure and args.kappa is None:
            parser.error("--pure requires --kappa")
        if args.genus < 0:
            parser.error("--genus must be >= 0")
    if args.command == "sequence":
        if args.which == "ng" and args.max_genus is None:
            parser.error("sequence ng requires --max-genus")
        if args.which == "gw" and args.max_w is None:
            parser.error("sequence gw requires --max-w")
    handlers = {
        "enumerate": cmd_enumerate,
        "table": cmd_table,
        "sequence": cmd_sequence,
        "map": cmd_map,
        "verify": cmd_verify,
    }
    try:
        return handlers[args.command](args, sys.stdout)
    except ResourceLimitError as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except CacheError as exc:
        print(f"cache error: {exc}", file=sys.stderr)
        return EXIT_VIOLATION


if __name__ == "__main__":
    sys.exit(main())
