"""Count tables over (genus, maximum gap) and the below-diagonal sequence.

The grid holds #{gapsets of genus g with maximum gap k} for 1 <= k <= g
(plus the single genus-0 cell); row sums are the gapset counts by genus.
Cells with k > g are impossible and stay absent.  Below the 2g = 3k
diagonal, counts are invariant along (g, k) -> (g+1, k+1); the diagonal
itself gives the sequence #{pure 2w-sparse gapsets of genus 3w}.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Optional

from .core import kappa_and_alpha
from .enumeration import gapsets_for_genus

RATIO_PLACEHOLDER = "-"


@dataclass(frozen=True)
class CountGrid:
    max_genus: int
    cells: dict[tuple[int, int], int]
    row_sums: dict[int, int]
    diagonal_marks: frozenset[tuple[int, int]]


@dataclass(frozen=True)
class DiagonalSequence:
    """Terms t[w] = #{pure 2w-sparse gapsets of genus 3w}, with the
    step ratios t[w]/t[w-1] (None at w=0) and the cumulative ratios
    sum(t[0..w]) / t[w], all kept exact."""

    terms: tuple[int, ...]
    ratios: tuple[Optional[Fraction], ...]
    cumulative_ratios: tuple[Fraction, ...]


@dataclass(frozen=True)
class StabilizationReport:
    pairs_checked: int
    violations: tuple[tuple[tuple[int, int], int, int], ...]  # ((g,k), count, next count)

    @property
    def ok(self) -> bool:
        return not self.violations


def build_count_grid(
    max_genus: int,
    *,
    cache_dir: Optional[str | Path] = None,
    workers: int = 1,
    genus_ceiling: Optional[int] = None,
) -> CountGrid:
    """Exact counts for every genus up to max_genus, one enumeration per row."""
    cells: dict[tuple[int, int], int] = {}
    row_sums: dict[int, int] = {}
    for g in range(max_genus + 1):
        counts: Counter[int] = Counter()
        total = 0
        for gapset in gapsets_for_genus(
            g, cache_dir=cache_dir, workers=workers, genus_ceiling=genus_ceiling
        ):
            k, _ = kappa_and_alpha(gapset)
            counts[k] += 1
            total += 1
        row_sums[g] = total
        for k, n in counts.items():
            cells[(g, k)] = n
    marks = frozenset(cell for cell in cells if 2 * cell[0] == 3 * cell[1])
    return CountGrid(max_genus, cells, row_sums, marks)


def diagonal_sequence(
    max_w: int,
    *,
    cache_dir: Optional[str | Path] = None,
    workers: int = 1,
    genus_ceiling: Optional[int] = None,
) -> DiagonalSequence:
    """Diagonal terms for w = 0..max_w by enumerating genus 3w and keeping
    the pure 2w-sparse gapsets."""
    terms = []
    for w in range(max_w + 1):
        count = 0
        for gapset in gapsets_for_genus(
            3 * w, cache_dir=cache_dir, workers=workers, genus_ceiling=genus_ceiling
        ):
            k, _ = kappa_and_alpha(gapset)
            if k == 2 * w:
                count += 1
        terms.append(count)
    ratios: list[Optional[Fraction]] = [None]
    ratios += [Fraction(terms[w], terms[w - 1]) for w in range(1, len(terms))]
    running = 0
    cumulative = []
    for t in terms:
        running += t
        cumulative.append(Fraction(running, t))
    return DiagonalSequence(tuple(terms), tuple(ratios), tuple(cumulative))


def stabilization_check(grid: CountGrid) -> StabilizationReport:
    """Assert count invariance along (g, k) -> (g+1, k+1) below the diagonal.

    Checks every cell with 2g <= 3k whose successor cell exists in the grid
    and reports each mismatch with its coordinates.
    """
    violations = []
    pairs = 0
    for (g, k) in sorted(grid.cells):
        if 2 * g > 3 * k:
            continue
        succ = (g + 1, k + 1)
        if succ not in grid.cells:
            continue
        pairs += 1
        if grid.cells[(g, k)] != grid.cells[succ]:
            violations.append(((g, k), grid.cells[(g, k)], grid.cells[succ]))
    return StabilizationReport(pairs, tuple(violations))


def _round_half_up_thousandths(value: Fraction) -> int:
    scaled = value * 1000
    return (scaled.numerator * 2 + scaled.denominator) // (2 * scaled.denominator)


def format_ratio(value: Optional[Fraction]) -> str:
    """Fixed three-decimal rendering with half-up rounding; '-' when undefined."""
    if value is None:
        return RATIO_PLACEHOLDER
    n = _round_half_up_thousandths(value)
    return f"{n // 1000}.{n % 1000:03d}"


def format_cumulative(value: Fraction) -> str:
    """Shortest exact decimal up to three places, else three-decimal half-up.

    Whole values render bare ('1'), exact tenths and hundredths keep their
    width ('1.5', '1.6'); everything else rounds to three places ('1.667').
    """
    for digits in range(0, 3):
        scaled = value * 10**digits
        if scaled.denominator == 1:
            if digits == 0:
                return str(scaled.numerator)
            return f"{value.numerator // value.denominator}." + str(
                scaled.numerator % 10**digits
            ).rjust(digits, "0")
    return format_ratio(value)
