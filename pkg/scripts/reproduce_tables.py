#!/usr/bin/env python3
"""Rebuild the count tables from scratch and print them with timings.

Defaults reproduce the full (genus x maximum-gap) grid up to genus 19 and
the diagonal sequence through w = 7.  Pushing --max-w to 9 enumerates
genus 27 (~1.3M gapsets) and takes a few extra seconds.

Usage: python3 scripts/reproduce_tables.py [--max-genus 19] [--max-w 7]
           [--workers N] [--cache-dir DIR]
"""

import argparse
import sys
from time import perf_counter

from gapsets import build_count_grid, diagonal_sequence, stabilization_check
from gapsets.cli import render_grid
from gapsets.tally import format_cumulative, format_ratio


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-genus", type=int, default=19)
    parser.add_argument("--max-w", type=int, default=7)
    parser.add_argument("--workers", type=int, default=1)
    parser.add_argument("--cache-dir", default=None)
    args = parser.parse_args()

    t0 = perf_counter()
    grid = build_count_grid(
        args.max_genus, cache_dir=args.cache_dir, workers=args.workers
    )
    grid_time = perf_counter() - t0
    print(f"# counts by genus and maximum gap (genus <= {args.max_genus}, "
          f"{grid_time:.2f}s); * marks 2g = 3k")
    for line in render_grid(grid, markdown=True):
        print(line)

    stab = stabilization_check(grid)
    print(f"\n# stabilization below the diagonal: {stab.pairs_checked} pairs, "
          f"{len(stab.violations)} violations")
    for cell, a, b in stab.violations:
        print(f"  {cell}: {a} != {b}")

    t0 = perf_counter()
    seq = diagonal_sequence(
        args.max_w, cache_dir=args.cache_dir, workers=args.workers
    )
    seq_time = perf_counter() - t0
    print(f"\n# diagonal sequence through w = {args.max_w} ({seq_time:.2f}s)")
    print("w,g_w,ratio,cumulative")
    for w, term in enumerate(seq.terms):
        print(f"{w},{term},{format_ratio(seq.ratios[w])},"
              f"{format_cumulative(seq.cumulative_ratios[w])}")
    return 0 if stab.ok else 1


if __name__ == "__main__":
    sys.exit(main())
