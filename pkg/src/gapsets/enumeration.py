"""Exhaustive enumeration of gapsets by genus.

The search walks the tree whose root is the empty gapset and whose edges
append one element larger than the current maximum.  A value x can be
appended to G exactly when every split x = u + v (u, v >= 1) has u in G or
v in G; in semigroup terms x is an effective generator beyond the Frobenius
number.  Every gapset of genus g has each of its sorted prefixes as a
gapset, so level g of the tree holds the genus-g gapsets exactly once, and
a depth-first walk with children in increasing order emits them in
lexicographic order on element sequences.

Membership bookkeeping uses two bit masks over [1, 2g+1]: the complement
of the node (the positive semigroup elements) and its mirror image, so the
split check for a candidate x is a single shift-and-AND.
"""

from __future__ import annotations

import multiprocessing
import tempfile
import zlib
from dataclasses import dataclass
from itertools import combinations
from pathlib import Path
from time import perf_counter
from typing import Iterable, Iterator, Optional

from .core import Elements, Gapset, depth, kappa_and_alpha, validate_gapset

DEFAULT_GENUS_CEILING = 30
BRUTE_FORCE_MAX_GENUS = 12
SPLIT_DEPTH = 8

CACHE_FILE_TEMPLATE = "gapsets-g{genus}.txt"


class ResourceLimitError(RuntimeError):
    """Requested genus exceeds the configured search ceiling."""


class CacheError(RuntimeError):
    pass


class MissingCacheError(CacheError):
    """No cache file exists for the requested genus."""


class CorruptCacheError(CacheError):
    """Cache file failed its checksum, header or shape verification."""


def _iter_tuples(root: Elements, target: int, cap: int) -> Iterator[Elements]:
    """Depth-first walk from `root` emitting element tuples at genus `target`.

    `cap` bounds every value ever touched; masks are plain ints with bit i
    tracking membership of i in the node's semigroup (srev mirrors smask at
    position cap - i, which turns the split test for x into one AND).
    """
    smask = ((1 << (cap + 1)) - 1) & ~1  # bits 1..cap
    srev = (1 << cap) - 1  # bits cap-1..0, i.e. cap - i for i in 1..cap
    for v in root:
        smask &= ~(1 << v)
        srev &= ~(1 << (cap - v))
    stack = [(root, smask, srev)]
    while stack:
        elems, sm, sr = stack.pop()
        j = len(elems)
        if j == target:
            yield elems
            continue
        last = elems[-1] if elems else 0
        hi = 2 * (j + 1) - 1
        kids = []
        for x in range(last + 1, hi + 1):
            if sm & (sr >> (cap - x)) == 0:
                kids.append(x)
        for x in reversed(kids):
            stack.append((elems + (x,), sm & ~(1 << x), sr & ~(1 << (cap - x))))


def _subtree_tuples(root: Elements, target: int, cap: int) -> list[Elements]:
    return list(_iter_tuples(root, target, cap))


def enumerate_gapsets(
    genus: int,
    *,
    workers: int = 1,
    genus_ceiling: Optional[int] = None,
) -> Iterator[Gapset]:
    """Emit every gapset of the given genus, once, in lexicographic order.

    With workers > 1 the tree is split at a fixed shallow depth and the
    subtrees run in a process pool; ordered merging keeps the output
    identical to the single-worker stream.
    """
    ceiling = DEFAULT_GENUS_CEILING if genus_ceiling is None else genus_ceiling
    if genus < 0:
        raise ValueError("genus must be >= 0")
    if genus > ceiling:
        raise ResourceLimitError(f"genus {genus} exceeds the ceiling {ceiling}")
    cap = 2 * genus + 1 if genus else 1
    split = min(genus, SPLIT_DEPTH)
    if workers <= 1 or split == genus:
        for elems in _iter_tuples((), genus, cap):
            yield Gapset(elems)
        return
    roots = list(_iter_tuples((), split, cap))
    with multiprocessing.Pool(workers) as pool:
        args = [(root, genus, cap) for root in roots]
        for chunk in pool.starmap(_subtree_tuples, args):
            for elems in chunk:
                yield Gapset(elems)


def brute_force_gapsets(genus: int) -> Iterator[Gapset]:
    """Independent oracle: filter all genus-sized subsets of [1, 2g-1].

    Every non-empty gapset contains 1, so 1 is fixed and the remaining
    elements range over [2, 2g-1].  Emission order is lexicographic, the
    same as the tree search.  Guarded: the subset count explodes past
    genus 12.
    """
    if genus > BRUTE_FORCE_MAX_GENUS:
        raise ResourceLimitError(
            f"brute force is limited to genus <= {BRUTE_FORCE_MAX_GENUS}"
        )
    if genus == 0:
        yield Gapset(())
        return
    for rest in combinations(range(2, 2 * genus), genus - 1):
        result = validate_gapset((1,) + rest)
        if isinstance(result, Gapset):
            yield result


def filter_gapsets(
    stream: Iterable[Gapset],
    *,
    kappa: Optional[int] = None,
    pure: bool = True,
    depth_q: Optional[int] = None,
) -> Iterator[Gapset]:
    """Keep gapsets by maximum gap (exactly kappa when pure, <= kappa
    otherwise) and optionally by depth."""
    for g in stream:
        if kappa is not None:
            k, _ = kappa_and_alpha(g)
            if pure and k != kappa:
                continue
            if not pure and k > kappa:
                continue
        if depth_q is not None and depth(g) != depth_q:
            continue
        yield g


def filter_pure_sparse(
    stream: Iterable[Gapset], kappa: int, depth_q: Optional[int] = None
) -> Iterator[Gapset]:
    """Keep exactly the gapsets whose maximum consecutive gap equals kappa."""
    if kappa < 0:
        raise ValueError("kappa must be >= 0")
    return filter_gapsets(stream, kappa=kappa, pure=True, depth_q=depth_q)


def cache_path(cache_dir: str | Path, genus: int) -> Path:
    return Path(cache_dir) / CACHE_FILE_TEMPLATE.format(genus=genus)


def cache_store(genus: int, gapsets: Iterable[Gapset], cache_dir: str | Path) -> Path:
    """Write a cache file: genus/count header, one gapset per line, crc32 trailer.

    The body spools through a temporary file so arbitrarily large genera
    stream without being held in memory; the checksum covers every byte
    before the trailer line.
    """
    directory = Path(cache_dir)
    directory.mkdir(parents=True, exist_ok=True)
    target = cache_path(directory, genus)
    count = 0
    with tempfile.NamedTemporaryFile(
        "wb", dir=directory, delete=False, suffix=".tmp"
    ) as body:
        for g in gapsets:
            body.write(",".join(map(str, g.elements)).encode("ascii") + b"\n")
            count += 1
        body_path = Path(body.name)
    try:
        with open(target, "wb") as out:
            crc = 0
            header = f"genus={genus}\ncount={count}\n".encode("ascii")
            out.write(header)
            crc = zlib.crc32(header, crc)
            with open(body_path, "rb") as src:
                while chunk := src.read(1 << 20):
                    out.write(chunk)
                    crc = zlib.crc32(chunk, crc)
            out.write(f"crc32={crc & 0xFFFFFFFF:08x}\n".encode("ascii"))
    finally:
        body_path.unlink(missing_ok=True)
    return target


def cache_load(genus: int, cache_dir: str | Path) -> list[Gapset]:
    """Load a cache file, verifying checksum, header and shape before returning."""
    path = cache_path(cache_dir, genus)
    if not path.exists():
        raise MissingCacheError(f"no cache for genus {genus} at {path}")
    raw = path.read_bytes()
    head, _, trailer = raw.rstrip(b"\n").rpartition(b"\n")
    if not trailer.startswith(b"crc32="):
        raise CorruptCacheError(f"{path}: missing crc32 trailer")
    body = raw[: len(head) + 1]
    expected = trailer[len(b"crc32=") :].decode("ascii", "replace")
    actual = f"{zlib.crc32(body) & 0xFFFFFFFF:08x}"
    if expected != actual:
        raise CorruptCacheError(f"{path}: crc32 mismatch ({expected} != {actual})")
    lines = body.decode("ascii").splitlines()
    if len(lines) < 2 or not lines[0].startswith("genus=") or not lines[1].startswith("count="):
        raise CorruptCacheError(f"{path}: malformed header")
    file_genus = int(lines[0][len("genus=") :])
    count = int(lines[1][len("count=") :])
    if file_genus != genus:
        raise CorruptCacheError(f"{path}: header genus {file_genus} != {genus}")
    records = lines[2:]
    if len(records) != count:
        raise CorruptCacheError(f"{path}: count header says {count}, found {len(records)}")
    out = []
    for line in records:
        elems = tuple(int(tok) for tok in line.split(",")) if line else ()
        if len(elems) != genus:
            raise CorruptCacheError(f"{path}: record of genus {len(elems)} in genus-{genus} file")
        out.append(Gapset(elems))
    return out


def gapsets_for_genus(
    genus: int,
    *,
    cache_dir: Optional[str | Path] = None,
    workers: int = 1,
    genus_ceiling: Optional[int] = None,
) -> Iterator[Gapset]:
    """Cache-backed stream: load when a cache file exists, otherwise search
    (and populate the cache when a directory is configured)."""
    if cache_dir is not None:
        try:
            yield from cache_load(genus, cache_dir)
            return
        except MissingCacheError:
            pass
        cache_store(
            genus,
            enumerate_gapsets(genus, workers=workers, genus_ceiling=genus_ceiling),
            cache_dir,
        )
        yield from cache_load(genus, cache_dir)
        return
    yield from enumerate_gapsets(genus, workers=workers, genus_ceiling=genus_ceiling)


@dataclass(frozen=True)
class FilterSpec:
    """Filter applied to an enumeration: maximum gap (exact when pure,
    upper bound otherwise), optionally a fixed depth."""

    kappa: int
    pure: bool = True
    depth: Optional[int] = None


@dataclass(frozen=True)
class EnumerationRun:
    """Provenance of one genus-level enumeration."""

    genus: int
    filter: Optional[FilterSpec]
    total: int
    source: str  # "fresh-search" | "cache"
    wall_time_s: float


def run_enumeration(
    genus: int,
    *,
    filter_spec: Optional[FilterSpec] = None,
    cache_dir: Optional[str | Path] = None,
    workers: int = 1,
    genus_ceiling: Optional[int] = None,
) -> tuple[list[Gapset], EnumerationRun]:
    """Materialize one enumeration together with its provenance record."""
    t0 = perf_counter()
    source = "fresh-search"
    if cache_dir is not None and cache_path(cache_dir, genus).exists():
        source = "cache"
    stream = gapsets_for_genus(
        genus, cache_dir=cache_dir, workers=workers, genus_ceiling=genus_ceiling
    )
    if filter_spec is not None:
        stream = filter_gapsets(
            stream,
            kappa=filter_spec.kappa,
            pure=filter_spec.pure,
            depth_q=filter_spec.depth,
        )
    found = list(stream)
    run = EnumerationRun(
        genus=genus,
        filter=filter_spec,
        total=len(found),
        source=source,
        wall_time_s=perf_counter() - t0,
    )
    return found, run
