"""Gap sets of numerical semigroups: value types and exact invariants.

A gapset is the finite complement, inside the positive integers, of a
numerical semigroup.  Equivalently, a finite set G such that every additive
split z = x + y of a member z (with x, y >= 1) has x in G or y in G.  All
invariants here are exact integer computations on the sorted element
sequence; nothing is approximated.

Conventions for tiny cases follow the standard ones: the empty gapset has
multiplicity 1, conductor 0, depth 0 and maximum gap (kappa) 0; the gapset
{1} has kappa 1.  The Frobenius number is conductor - 1, hence -1 for the
empty gapset.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Optional, Union

Elements = tuple[int, ...]


class EmptyPartitionError(ValueError):
    """Raised when a block partition is requested for the empty gapset."""


def as_candidate(values: Iterable[int]) -> Elements:
    """Normalize an iterable of integers to a strictly increasing tuple.

    Duplicates collapse (set semantics); non-positive entries are rejected.
    The result is a raw candidate: no gapset property is assumed.
    """
    elems = tuple(sorted(set(values)))
    if elems and elems[0] < 1:
        raise ValueError(f"candidate elements must be >= 1, got {elems[0]}")
    return elems


@dataclass(frozen=True, order=True)
class Gapset:
    """A validated gapset.  Construct via :func:`validate_gapset` or :func:`gapset`.

    Instances are immutable values: safe to hash, compare (lexicographically
    on elements) and share between workers.
    """

    elements: Elements

    def __post_init__(self) -> None:
        prev = 0
        for v in self.elements:
            if v <= prev:
                raise ValueError("elements must be strictly increasing and >= 1")
            prev = v

    @property
    def genus(self) -> int:
        return len(self.elements)

    @cached_property
    def _mask(self) -> int:
        m = 0
        for v in self.elements:
            m |= 1 << v
        return m

    def __contains__(self, value: int) -> bool:
        return value > 0 and (self._mask >> value) & 1 == 1

    def __iter__(self) -> Iterator[int]:
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)


@dataclass(frozen=True)
class GapsetRejection:
    """Witness that a candidate is not a gapset: value = left + right with
    neither part present.  The witness is the lexicographically smallest
    failing (value, left) pair, so rejections are deterministic."""

    value: int
    left: int
    right: int

    def as_triple(self) -> tuple[int, int, int]:
        return (self.value, self.left, self.right)


def validate_gapset(values: Iterable[int]) -> Union[Gapset, GapsetRejection]:
    """Check the gapset property and return a Gapset, or the smallest failing split.

    A candidate passes iff for every member z and every split z = x + y with
    1 <= x <= y, at least one of x, y is a member.  The empty set passes
    vacuously.
    """
    elems = as_candidate(values)
    mask = 0
    for v in elems:
        mask |= 1 << v
    for z in elems:
        for x in range(1, z // 2 + 1):
            if not (mask >> x) & 1 and not (mask >> (z - x)) & 1:
                return GapsetRejection(z, x, z - x)
    return Gapset(elems)


def gapset(values: Iterable[int]) -> Gapset:
    """Validating constructor; raises ValueError with the witness on failure."""
    result = validate_gapset(values)
    if isinstance(result, GapsetRejection):
        raise ValueError(
            f"not a gapset: {result.value} = {result.left} + {result.right} "
            "with neither part in the set"
        )
    return result


def ordinary_gapset(genus: int) -> Gapset:
    """[1, g]: the unique gapset of depth 1 (depth 0 for genus 0)."""
    return Gapset(tuple(range(1, genus + 1)))


def hyperelliptic_gapset(genus: int) -> Gapset:
    """The odd numbers in [1, 2g-1]: the unique gapset of depth g."""
    return Gapset(tuple(range(1, 2 * genus, 2)))


@dataclass(frozen=True)
class InvariantRecord:
    """The full invariant bundle of a gapset.

    frobenius = conductor - 1 always; depth = ceil(conductor / multiplicity);
    kappa is the maximum gap between consecutive elements (with the small-case
    conventions above); alpha is the largest index i (1-based) such that
    elements[i+1] - elements[i] equals kappa, present iff genus >= 2.
    """

    genus: int
    multiplicity: int
    conductor: int
    frobenius: int
    depth: int
    kappa: int
    alpha: Optional[int]


def multiplicity(g: Gapset) -> int:
    """Least positive integer not in the gapset."""
    for i, v in enumerate(g.elements, start=1):
        if v != i:
            return i
    return g.genus + 1


def conductor(g: Gapset) -> int:
    """Least integer c with every integer >= c outside the gapset."""
    return g.elements[-1] + 1 if g.elements else 0


def kappa_and_alpha(g: Gapset) -> tuple[int, Optional[int]]:
    """Maximum consecutive difference and the last index attaining it.

    kappa is 0 for the empty gapset and 1 for {1} (no pair exists, so alpha
    is absent in both cases).  For genus >= 2, alpha is 1-based and lies in
    [1, genus - 1].
    """
    elems = g.elements
    if len(elems) == 0:
        return 0, None
    if len(elems) == 1:
        return 1, None
    kappa = 0
    alpha = 0
    for i in range(len(elems) - 1):
        d = elems[i + 1] - elems[i]
        if d >= kappa:
            kappa = d
            alpha = i + 1
    return kappa, alpha


def depth(g: Gapset) -> int:
    c = conductor(g)
    m = multiplicity(g)
    return -(-c // m)


def invariants(g: Gapset) -> InvariantRecord:
    """Compute every invariant in one pass over the elements."""
    c = conductor(g)
    m = multiplicity(g)
    kappa, alpha = kappa_and_alpha(g)
    return InvariantRecord(
        genus=g.genus,
        multiplicity=m,
        conductor=c,
        frobenius=c - 1,
        depth=-(-c // m),
        kappa=kappa,
        alpha=alpha,
    )


@dataclass(frozen=True)
class CanonicalPartition:
    """Blocks of a gapset relative to its multiplicity m: block 0 is
    [1, m-1] and block i is the part of the gapset in [i*m + 1, (i+1)*m - 1].
    The number of blocks equals the depth."""

    multiplicity: int
    blocks: tuple[Elements, ...]


def canonical_partition(g: Gapset) -> CanonicalPartition:
    """Split a non-empty gapset into its multiplicity-sized range blocks."""
    if g.genus == 0:
        raise EmptyPartitionError("the empty gapset has no canonical partition")
    m = multiplicity(g)
    q = depth(g)
    blocks: list[list[int]] = [[] for _ in range(q)]
    for v in g.elements:
        blocks[v // m].append(v)
    return CanonicalPartition(m, tuple(tuple(b) for b in blocks))


def is_m_set(candidate: Iterable[int], m: int) -> bool:
    """True iff the set contains all of [1, m-1] and no multiple of m.

    Accepts any m >= 1 (m = 1 forces the empty set, m = 2 allows odd sets);
    the interesting regime is m > 2.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    elems = as_candidate(candidate)
    present = set(elems)
    if not all(i in present for i in range(1, m)):
        return False
    return all(v % m != 0 for v in elems)


def is_m_extension(candidate: Iterable[int], m: int) -> bool:
    """True iff the set is an m-set whose range blocks grow only by +m steps.

    Blocks are forced by value ranges: block i is the part of the set in
    [i*m + 1, (i+1)*m - 1], and each block i+1 must be contained in m +
    block i.  Every gapset with multiplicity m passes (its canonical
    partition is the witness).
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    elems = as_candidate(candidate)
    present = set(elems)
    if not all(i in present for i in range(1, m)):
        return False
    if any(v % m == 0 for v in elems):
        return False
    top = elems[-1] // m if elems else 0
    prev = set(range(1, m))
    for i in range(1, top + 1):
        block = {v for v in elems if i * m < v < (i + 1) * m}
        if not block <= {v + m for v in prev}:
            return False
        prev = block
    return True
