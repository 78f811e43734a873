"""Executable property suites over enumerated gapsets.

Each suite sweeps every gapset up to a genus bound and records violations
as structured witnesses instead of raising, so a full run reports all
failures in enumeration (lexicographic) order.  The suites encode the
structural facts the rest of the package relies on: invariant bounds and
consistency, pure-sparse inequalities, behaviour of the gap-widening map,
and the widening bijection with its count stabilization.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations
from pathlib import Path
from typing import Callable, Iterable, Optional

from .core import (
    Elements,
    Gapset,
    canonical_partition,
    invariants,
    is_m_extension,
    is_m_set,
    kappa_and_alpha,
    validate_gapset,
)
from .enumeration import gapsets_for_genus
from .maps import classify_widest_pair, verify_bijection, widen_max_gap
from .tally import CountGrid, stabilization_check

SUITE_NAMES = ("core", "sparse", "phi", "bijection")

Provider = Callable[[int], Iterable[Gapset]]


@dataclass(frozen=True)
class Violation:
    suite: str
    check: str
    elements: Elements
    detail: str


@dataclass
class SuiteReport:
    suite: str
    max_genus: int
    gapsets_covered: int = 0
    checks_run: int = 0
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def check(self, name: str, condition: bool, elements: Elements, detail: str = "") -> None:
        self.checks_run += 1
        if not condition:
            self.violations.append(Violation(self.suite, name, elements, detail))


def _m_set_depth(elements: Elements, m: int) -> int:
    return -(-elements[-1] // m) if elements else 0


def _grid_from_provider(max_genus: int, by_genus: Provider) -> CountGrid:
    cells: dict[tuple[int, int], int] = {}
    row_sums: dict[int, int] = {}
    for g in range(max_genus + 1):
        counter = Counter(kappa_and_alpha(x)[0] for x in by_genus(g))
        row_sums[g] = sum(counter.values())
        for k, n in counter.items():
            cells[(g, k)] = n
    marks = frozenset(cell for cell in cells if 2 * cell[0] == 3 * cell[1])
    return CountGrid(max_genus, cells, row_sums, marks)


def memoized_provider(
    cache_dir: Optional[str | Path] = None, workers: int = 1
) -> Provider:
    """Per-genus enumeration memo so suites sharing a provider enumerate once."""
    memo: dict[int, list[Gapset]] = {}

    def by_genus(g: int) -> list[Gapset]:
        if g not in memo:
            memo[g] = list(
                gapsets_for_genus(g, cache_dir=cache_dir, workers=workers)
            )
        return memo[g]

    return by_genus


def core_suite(max_genus: int, by_genus: Provider) -> SuiteReport:
    """Invariant bounds, element bounds, partition consistency, shifted-gap
    windows, and re-validation, for every gapset of genus <= max_genus."""
    report = SuiteReport("core", max_genus)
    for genus in range(max_genus + 1):
        for g in by_genus(genus):
            report.gapsets_covered += 1
            e = g.elements
            rec = invariants(g)
            report.check(
                "frobenius-is-conductor-minus-1",
                rec.frobenius == rec.conductor - 1,
                e,
            )
            report.check(
                "depth-is-ceil-conductor-over-multiplicity",
                rec.depth == -(-rec.conductor // rec.multiplicity),
                e,
            )
            if genus >= 1:
                report.check(
                    "multiplicity-range",
                    2 <= rec.multiplicity <= genus + 1,
                    e,
                    f"m={rec.multiplicity}",
                )
                report.check(
                    "conductor-range",
                    genus + 1 <= rec.conductor <= 2 * genus,
                    e,
                    f"c={rec.conductor}",
                )
                report.check(
                    "depth-range", 1 <= rec.depth <= genus, e, f"q={rec.depth}"
                )
                report.check(
                    "element-bounds",
                    all(j <= e[j - 1] <= 2 * j - 1 for j in range(1, genus + 1)),
                    e,
                )
                part = canonical_partition(g)
                report.check(
                    "partition-block-count", len(part.blocks) == rec.depth, e
                )
                report.check(
                    "partition-first-block",
                    part.blocks[0] == tuple(range(1, rec.multiplicity)),
                    e,
                )
                flat = tuple(v for block in part.blocks for v in block)
                report.check("partition-union", flat == e, e)
                m = rec.multiplicity
                report.check(
                    "partition-block-ranges",
                    all(
                        i * m + 1 <= v <= (i + 1) * m - 1
                        for i, block in enumerate(part.blocks)
                        for v in block
                        if i >= 1
                    ),
                    e,
                )
                # No element may land strictly between a + l_j and a + l_{j+1}
                # for any multiple a of m, as long as the window stays within
                # reach of the conductor.
                windows_ok = True
                for j in range(genus - 1):
                    step = 0
                    while step + e[j + 1] <= rec.conductor:
                        lo, hi = step + e[j], step + e[j + 1]
                        if any(lo < v < hi for v in e):
                            windows_ok = False
                        step += m
                report.check("shifted-gap-windows-empty", windows_ok, e)
            if rec.alpha is not None:
                report.check(
                    "alpha-is-last-widest",
                    e[rec.alpha] - e[rec.alpha - 1] == rec.kappa
                    and all(
                        e[i + 1] - e[i] < rec.kappa
                        for i in range(rec.alpha, genus - 1)
                    ),
                    e,
                )
            report.check(
                "revalidation-idempotent",
                isinstance(validate_gapset(e), Gapset),
                e,
            )
    return report


def sparse_suite(max_genus: int, by_genus: Provider) -> SuiteReport:
    """Pure-sparse inequalities, the widest-pair block trichotomy, and the
    2g <= 3k consequences (depth cap, pair uniqueness, widest-element cap)."""
    report = SuiteReport("sparse", max_genus)
    for genus in range(max_genus + 1):
        for g in by_genus(genus):
            report.gapsets_covered += 1
            e = g.elements
            rec = invariants(g)
            k = rec.kappa
            report.check("kappa-at-most-multiplicity", k <= rec.multiplicity, e)
            report.check("kappa-at-most-genus", k <= genus, e)
            report.check(
                "genus-plus-kappa-at-most-conductor",
                genus + k <= rec.conductor,
                e,
            )
            if rec.alpha is not None:
                report.check(
                    "top-element-within-multiplicity-of-widest",
                    e[-1] <= e[rec.alpha - 1] + rec.multiplicity,
                    e,
                )
                if rec.depth >= 2:
                    try:
                        classify_widest_pair(g)
                        report.check("widest-pair-trichotomy", True, e)
                    except RuntimeError as exc:
                        report.check("widest-pair-trichotomy", False, e, str(exc))
            if 2 * genus <= 3 * k:
                report.check("below-diagonal-depth-cap", rec.depth <= 3, e)
                if genus >= 2:
                    pairs = sum(
                        1 for i in range(genus - 1) if e[i + 1] - e[i] == k
                    )
                    report.check(
                        "widest-pair-unique",
                        pairs == 1 or e == (1, 3, 5),
                        e,
                        f"{pairs} widest pairs",
                    )
                    report.check(
                        "widest-start-below-twice-multiplicity",
                        e[rec.alpha - 1] <= 2 * rec.multiplicity - 1,
                        e,
                    )
    return report


def phi_suite(max_genus: int, by_genus: Provider) -> SuiteReport:
    """Behaviour of the gap-widening map over every gapset up to max_genus.

    Covers the image shape (size, range, widened maximum gap), the depth-1/2/3
    classification with its stated exception, injectivity per (genus, kappa)
    family, the depth-2 non-surjectivity witness, the m-extension property of
    gapsets, and the fact that small m-sets validate.
    """
    report = SuiteReport("phi", max_genus)
    for genus in range(max_genus + 1):
        images_by_kappa: dict[int, dict[Elements, Elements]] = {}
        depth2_images: set[Elements] = set()
        for g in by_genus(genus):
            report.gapsets_covered += 1
            e = g.elements
            rec = invariants(g)
            m = rec.multiplicity
            image = widen_max_gap(g)
            ie = image.elements
            report.check("image-size", len(ie) == genus + 1, e)
            report.check(
                "image-range",
                all(1 <= v <= 2 * (genus + 1) - 1 for v in ie),
                e,
            )
            report.check(
                "image-kappa-raised",
                kappa_and_alpha(Gapset(ie))[0] == rec.kappa + 1,
                e,
            )
            report.check(
                "gapset-is-m-extension", is_m_extension(e, m), e
            )
            if rec.depth == 1:
                checked = validate_gapset(ie)
                report.check(
                    "depth1-image-gapset-of-depth-2",
                    isinstance(checked, Gapset)
                    and invariants(checked).depth == 2,
                    e,
                )
            elif rec.depth == 2:
                report.check(
                    "depth2-image-is-next-m-set",
                    is_m_set(ie, m + 1) and _m_set_depth(ie, m + 1) == 2,
                    e,
                )
                checked = validate_gapset(ie)
                ok = isinstance(checked, Gapset)
                if ok:
                    irec = invariants(checked)
                    ok = irec.depth == 2 and irec.kappa == rec.kappa + 1
                report.check("depth2-image-in-next-family", ok, e)
                depth2_images.add(ie)
            elif rec.depth == 3:
                exceptional = (2 * m + 1) in g and e[rec.alpha - 1] >= 2 * m + 1
                if not exceptional:
                    report.check(
                        "depth3-image-is-next-m-set",
                        is_m_set(ie, m + 1) and _m_set_depth(ie, m + 1) == 3,
                        e,
                    )
                if 2 * genus <= 3 * rec.kappa:
                    checked = validate_gapset(ie)
                    ok = isinstance(checked, Gapset)
                    if ok:
                        irec = invariants(checked)
                        ok = irec.depth == 3 and irec.kappa == rec.kappa + 1
                    report.check("depth3-image-in-next-family", ok, e)
            images_by_kappa.setdefault(rec.kappa, {})
            previous = images_by_kappa[rec.kappa].setdefault(ie, e)
            report.check(
                "injective-within-family",
                previous == e,
                e,
                f"image collides with {previous}",
            )
        if genus >= 1:
            witness = tuple(range(1, genus + 1)) + (genus + 2,)
            report.check(
                "depth2-witness-has-no-depth2-preimage",
                witness not in depth2_images,
                witness,
            )
    # Any m-set inside [1, 2m-1] is a gapset of multiplicity m and depth <= 2;
    # sweep all of them for small m.
    for m in range(1, min(max_genus, 10) + 1):
        base = tuple(range(1, m))
        pool = range(m + 1, 2 * m)
        for size in range(len(pool) + 1):
            for extra in combinations(pool, size):
                cand = base + extra
                checked = validate_gapset(cand)
                ok = isinstance(checked, Gapset)
                if ok:
                    rec = invariants(checked)
                    ok = (not cand or rec.multiplicity == m) and rec.depth <= 2
                report.check("small-m-set-is-gapset", ok, cand, f"m={m}")
    return report


def bijection_suite(max_genus: int, by_genus: Provider) -> SuiteReport:
    """Round-trip the widening bijection on every (g, k) family with
    2g <= 3k <= 3g and g <= max_genus, then check grid stabilization."""
    report = SuiteReport("bijection", max_genus)
    for genus in range(max_genus + 1):
        k_lo = -(-2 * genus // 3)
        for kappa in range(k_lo, genus + 1):
            result = verify_bijection(genus, kappa, by_genus=by_genus)
            report.gapsets_covered += result.source_size + result.target_size
            pair = f"(g={genus}, k={kappa})"
            report.check(
                "family-counts-equal",
                result.counts_equal,
                (),
                f"{pair}: {result.source_size} vs {result.target_size}",
            )
            report.check(
                "forward-round-trip",
                all(result.forward_round_trip),
                (),
                pair,
            )
            report.check(
                "backward-round-trip",
                all(result.backward_round_trip),
                (),
                pair,
            )
            report.check(
                "image-membership", all(result.image_membership), (), pair
            )
    grid = _grid_from_provider(max_genus, by_genus)
    stab = stabilization_check(grid)
    report.check(
        "grid-stabilization",
        stab.ok,
        (),
        "; ".join(f"{cell}: {a} != {b}" for cell, a, b in stab.violations),
    )
    return report


def run_suites(
    suites: Iterable[str],
    max_genus: int,
    *,
    cache_dir: Optional[str | Path] = None,
    workers: int = 1,
) -> list[SuiteReport]:
    by_genus = memoized_provider(cache_dir, workers)
    runners = {
        "core": core_suite,
        "sparse": sparse_suite,
        "phi": phi_suite,
        "bijection": bijection_suite,
    }
    reports = []
    for name in suites:
        if name not in runners:
            raise ValueError(f"unknown suite {name!r}")
        reports.append(runners[name](max_genus, by_genus))
    return reports
