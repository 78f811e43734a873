"""Maps between families of pure sparse gapsets.

The central operation widens the last widest gap of a gapset: insert 1 at
the bottom, shift every element up to the widest pair by +1 and everything
after it by +2.  Genus and maximum gap both grow by one.  Restricted to
pure kappa-sparse gapsets of genus g with 2g <= 3*kappa, this is a
bijection onto the pure (kappa+1)-sparse gapsets of genus g+1, with an
explicit inverse (drop the 1, shift back).

A second, different genus-raising map shifts the canonical-partition
blocks instead (adjoin the multiplicity to block 0, translate block i up
by i); it exists only for depth <= 3 and generally disagrees with the
gap-widening map.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Optional

from .core import (
    Elements,
    Gapset,
    canonical_partition,
    depth,
    invariants,
    is_m_set,
    kappa_and_alpha,
    multiplicity,
    validate_gapset,
)
from .enumeration import enumerate_gapsets, filter_pure_sparse

CLASS_GAPSET = "gapset"
CLASS_M_SET_NOT_GAPSET = "m-set-not-gapset"
CLASS_NOT_M_SET = "not-m-set"

PAIR_IN_PENULTIMATE = "both-in-penultimate"
PAIR_IN_LAST = "both-in-last"
PAIR_SPLIT = "split"


class PreconditionError(ValueError):
    """An operation was called outside its guaranteed domain."""


class UnsupportedDepthError(ValueError):
    """The blockwise shift is defined only for depth <= 3."""


@dataclass(frozen=True)
class WidenImage:
    """Image of a gapset under the gap-widening map, eagerly classified.

    claimed_m is the source multiplicity plus one; classification records
    whether the image is itself a gapset, merely a claimed_m-set, or not
    even that.
    """

    elements: Elements
    claimed_m: int
    classification: str


def widen_max_gap(g: Gapset) -> WidenImage:
    """Insert 1 and widen the last widest gap by one.

    Small cases: the empty gapset maps to {1} and {1} maps to {1,3} (no
    element precedes the widest gap, so everything shifts by +2).
    """
    _, alpha = kappa_and_alpha(g)
    cut = alpha if alpha is not None else 0
    elems = g.elements
    image = (
        (1,)
        + tuple(v + 1 for v in elems[:cut])
        + tuple(v + 2 for v in elems[cut:])
    )
    claimed_m = multiplicity(g) + 1
    if isinstance(validate_gapset(image), Gapset):
        classification = CLASS_GAPSET
    elif is_m_set(image, claimed_m):
        classification = CLASS_M_SET_NOT_GAPSET
    else:
        classification = CLASS_NOT_M_SET
    return WidenImage(image, claimed_m, classification)


def narrow_max_gap(h: Gapset, max_gap: int) -> Gapset:
    """Inverse of :func:`widen_max_gap`: drop the 1 and shift back.

    `max_gap` is the expected maximum gap of the input (taken explicitly so
    a mismatch is reported instead of silently reinterpreted).  Requires
    2g <= 3*kappa for the output's genus g and maximum gap kappa; narrowing
    is only guaranteed to land on a gapset in that regime.
    """
    if h.genus == 0:
        raise PreconditionError("the empty gapset is not a widened image")
    kappa_h, alpha = kappa_and_alpha(h)
    if kappa_h != max_gap:
        raise PreconditionError(
            f"input has maximum gap {kappa_h}, expected {max_gap}"
        )
    out_genus = h.genus - 1
    out_kappa = max_gap - 1
    if 2 * out_genus > 3 * out_kappa:
        raise PreconditionError(
            f"narrowing to genus {out_genus} with maximum gap {out_kappa} "
            f"violates 2g <= 3k"
        )
    elems = h.elements
    if h.genus == 1:
        narrowed: Elements = ()
    else:
        assert alpha is not None
        narrowed = tuple(v - 1 for v in elems[1:alpha]) + tuple(
            v - 2 for v in elems[alpha:]
        )
    result = validate_gapset(narrowed)
    if isinstance(result, Gapset):
        return result
    raise RuntimeError(
        f"narrowed image {narrowed} is not a gapset "
        f"(split {result.as_triple()}); this should be impossible"
    )


def shift_blocks(g: Gapset) -> Elements:
    """Blockwise genus-raising shift, defined for depth <= 3 only.

    With canonical blocks B0, B1, B2 and multiplicity m, the image is
    (B0 + {m}) joined with B1+1 and B2+2.  The result is returned raw
    (it is a gapset whenever the input has depth <= 3).
    """
    if depth(g) > 3:
        raise UnsupportedDepthError("blockwise shift needs depth <= 3")
    m = multiplicity(g)
    if g.genus == 0:
        return (1,)
    part = canonical_partition(g)
    blocks = list(part.blocks) + [(), ()]
    out = list(blocks[0]) + [m]
    out += [v + 1 for v in blocks[1]]
    out += [v + 2 for v in blocks[2]]
    return tuple(out)


def classify_widest_pair(g: Gapset) -> str:
    """Which canonical blocks hold the last widest pair of elements.

    The pair always lands entirely in the last block, entirely in the
    penultimate block, or straddles the two; any other configuration would
    contradict the structure theory, so it raises.
    """
    rec = invariants(g)
    if rec.genus < 2 or rec.alpha is None:
        raise PreconditionError("need genus >= 2")
    if rec.depth < 2:
        raise PreconditionError("need depth >= 2")
    lo = g.elements[rec.alpha - 1] // rec.multiplicity
    hi = g.elements[rec.alpha] // rec.multiplicity
    penultimate, last = rec.depth - 2, rec.depth - 1
    if lo == penultimate and hi == penultimate:
        return PAIR_IN_PENULTIMATE
    if lo == last and hi == last:
        return PAIR_IN_LAST
    if lo == penultimate and hi == last:
        return PAIR_SPLIT
    raise RuntimeError(
        f"widest pair of {g.elements} sits in blocks {lo}, {hi} "
        f"of {rec.depth}; this should be impossible"
    )


@dataclass(frozen=True)
class BijectionReport:
    """Result of checking the widening bijection between one (genus, kappa)
    family and its (genus+1, kappa+1) counterpart.

    Flag tuples are ordered like the enumerations: forward flags follow the
    source family, backward and membership flags follow the target family.
    """

    genus: int
    kappa: int
    source_size: int
    target_size: int
    forward_round_trip: tuple[bool, ...]
    backward_round_trip: tuple[bool, ...]
    image_membership: tuple[bool, ...]

    @property
    def counts_equal(self) -> bool:
        return self.source_size == self.target_size

    @property
    def bijective(self) -> bool:
        return (
            self.counts_equal
            and all(self.forward_round_trip)
            and all(self.backward_round_trip)
            and all(self.image_membership)
        )


def verify_bijection(
    genus: int,
    kappa: int,
    *,
    by_genus: Optional[Callable[[int], Iterable[Gapset]]] = None,
) -> BijectionReport:
    """Materialize both families and check the bijection element by element.

    Requires 2*genus <= 3*kappa.  Both sides come from enumeration rather
    than from counting, so duplicated or misordered emissions would surface
    here as failed membership flags.
    """
    if 2 * genus > 3 * kappa:
        raise PreconditionError(f"need 2g <= 3k, got g={genus}, k={kappa}")
    provider = by_genus if by_genus is not None else enumerate_gapsets
    source = list(filter_pure_sparse(provider(genus), kappa))
    target = list(filter_pure_sparse(provider(genus + 1), kappa + 1))
    target_set = {h.elements for h in target}
    source_set = {g.elements for g in source}

    forward = []
    membership = []
    for g in source:
        image = widen_max_gap(g)
        membership.append(image.elements in target_set)
        ok = False
        if image.classification == CLASS_GAPSET:
            back = narrow_max_gap(Gapset(image.elements), kappa + 1)
            ok = back.elements == g.elements
        forward.append(ok)

    backward = []
    for h in target:
        pre = narrow_max_gap(h, kappa + 1)
        backward.append(
            pre.elements in source_set
            and widen_max_gap(pre).elements == h.elements
        )

    return BijectionReport(
        genus=genus,
        kappa=kappa,
        source_size=len(source),
        target_size=len(target),
        forward_round_trip=tuple(forward),
        backward_round_trip=tuple(backward),
        image_membership=tuple(membership),
    )
