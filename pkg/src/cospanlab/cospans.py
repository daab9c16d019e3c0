"""Structured cospans: open systems ``L(a) -> x <- L(b)``.

A structured cospan carries a presheaf apex together with two finite-set
feet whose L-images map into the apex.  Composition glues along the shared
foot by pushout; tensor is coproduct; evaluation/coevaluation make every
foot its own dual.  Cospans are stored as concrete representatives — "up to
isomorphism" equality is always an explicit search, never implicit.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .adjunction import Interface
from .colimits import coproduct, initial, pushout
from .presheaf import (
    Morphism,
    Presheaf,
    canonical_key,
    check_morphism,
    constrained_iso_search,
)


class FeetMismatch(ValueError):
    pass


@dataclass(frozen=True)
class StructuredCospan:
    interface: Interface
    left_foot: int
    right_foot: int
    apex: Presheaf
    left_leg: Morphism
    right_leg: Morphism

    def __post_init__(self) -> None:
        for leg, foot in ((self.left_leg, self.left_foot), (self.right_leg, self.right_foot)):
            if leg.source != self.interface.L_apply(foot):
                raise ValueError("leg source is not the L-image of its foot")
            if leg.target != self.apex:
                raise ValueError("leg target is not the apex")
            check_morphism(leg)

    def leg_images(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        """Interface-sort images of both legs (one apex element per foot element)."""
        s = self.interface.interface_sort
        homs, _ = self.interface._representable
        k = len(homs[s])
        idx = homs[s].index(None)
        left = tuple(self.left_leg.components[s][j * k + idx] for j in range(self.left_foot))
        right = tuple(self.right_leg.components[s][j * k + idx] for j in range(self.right_foot))
        return left, right

    def key(self) -> tuple:
        """Canonical form: apex key with leg images painted as base colors.

        Two cospans get the same key iff they are isomorphic with feet
        fixed pointwise.
        """
        left, right = self.leg_images()
        s = self.interface.interface_sort
        base: dict[tuple[str, int], tuple] = {}
        for j, e in enumerate(left):
            base[(s, e)] = base.get((s, e), ()) + (("L", j),)
        for j, e in enumerate(right):
            base[(s, e)] = base.get((s, e), ()) + (("R", j),)
        return (self.left_foot, self.right_foot, canonical_key(self.apex, base))


@dataclass(frozen=True)
class CospanMorphism:
    """A triple (foot map, apex morphism, foot map) between cospans."""

    source: StructuredCospan
    target: StructuredCospan
    left_map: tuple[int, ...]
    apex_map: Morphism
    right_map: tuple[int, ...]


def cospan_morphism_check(m: CospanMorphism) -> bool:
    src, tgt = m.source, m.target
    if src.interface != tgt.interface:
        return False
    if len(m.left_map) != src.left_foot or len(m.right_map) != src.right_foot:
        return False
    if any(not 0 <= v < tgt.left_foot for v in m.left_map):
        return False
    if any(not 0 <= v < tgt.right_foot for v in m.right_map):
        return False
    if not m.apex_map.is_natural() or m.apex_map.source != src.apex or m.apex_map.target != tgt.apex:
        return False
    iface = src.interface
    lf = iface.L_map(m.left_map, src.left_foot, tgt.left_foot)
    rf = iface.L_map(m.right_map, src.right_foot, tgt.right_foot)
    return (
        src.left_leg.then(m.apex_map) == lf.then(tgt.left_leg)
        and src.right_leg.then(m.apex_map) == rf.then(tgt.right_leg)
    )


def cospan_iso_search(c1: StructuredCospan, c2: StructuredCospan) -> CospanMorphism | None:
    """Isomorphism with feet fixed: an apex iso commuting with both legs."""
    if c1.interface != c2.interface:
        return None
    if (c1.left_foot, c1.right_foot) != (c2.left_foot, c2.right_foot):
        return None
    l1, r1 = c1.leg_images()
    l2, r2 = c2.leg_images()
    s = c1.interface.interface_sort
    pins = {}
    for e1, e2 in itertools.chain(zip(l1, l2), zip(r1, r2)):
        if pins.setdefault((s, e1), e2) != e2:
            return None
    g = constrained_iso_search(c1.apex, c2.apex, pins)
    if g is None:
        return None
    m = CospanMorphism(c1, c2, tuple(range(c1.left_foot)), g, tuple(range(c1.right_foot)))
    assert cospan_morphism_check(m)
    return m


def identity_cospan(interface: Interface, a: int) -> StructuredCospan:
    la = interface.L_apply(a)
    from .presheaf import identity as _id

    return StructuredCospan(interface, a, a, la, _id(la), _id(la))


def empty_cospan(interface: Interface) -> StructuredCospan:
    return identity_cospan(interface, 0)


def cospan_from_legs(interface: Interface, left_leg: Morphism, right_leg: Morphism) -> StructuredCospan:
    lf = interface.R_apply(left_leg.source)
    rf = interface.R_apply(right_leg.source)
    return StructuredCospan(interface, lf, rf, left_leg.target, left_leg, right_leg)


def open_graph(
    interface: Interface,
    apex: Presheaf,
    left: list[int] | tuple[int, ...],
    right: list[int] | tuple[int, ...],
) -> StructuredCospan:
    """Build a cospan from the interface-sort images of its legs."""
    legs = []
    for images in (left, right):
        n = len(images)
        ln = interface.L_apply(n)
        eps = interface.counit(apex)
        homs, _ = interface._representable
        s = interface.interface_sort
        k = {so: len(homs[so]) for so in interface.schema.sorts}
        comps = {}
        for so in interface.schema.sorts:
            col = []
            for j in range(n):
                for i in range(k[so]):
                    col.append(eps.components[so][images[j] * k[so] + i])
            comps[so] = tuple(col)
        legs.append(check_morphism(Morphism(ln, apex, comps)))
    return StructuredCospan(interface, len(left), len(right), apex, legs[0], legs[1])


def compose(c1: StructuredCospan, c2: StructuredCospan) -> StructuredCospan:
    """Glue along the shared foot: apex = x +_{Lb} y."""
    if c1.interface != c2.interface:
        raise FeetMismatch("cospans over different interfaces")
    if c1.right_foot != c2.left_foot:
        raise FeetMismatch(f"feet {c1.right_foot} != {c2.left_foot}")
    po = pushout(c1.right_leg, c2.left_leg)
    return StructuredCospan(
        c1.interface,
        c1.left_foot,
        c2.right_foot,
        po.apex,
        c1.left_leg.then(po.left),
        c2.right_leg.then(po.right),
    )


def tensor(c1: StructuredCospan, c2: StructuredCospan) -> StructuredCospan:
    if c1.interface != c2.interface:
        raise FeetMismatch("cospans over different interfaces")
    iface = c1.interface
    apex, inl, inr = coproduct(c1.apex, c2.apex)
    legs = []
    for leg1, n1, leg2, n2 in (
        (c1.left_leg, c1.left_foot, c2.left_leg, c2.left_foot),
        (c1.right_leg, c1.right_foot, c2.right_leg, c2.right_foot),
    ):
        # structure iso L(a+a') ~ La + La', materialized as a re-indexing
        ln = iface.L_apply(n1 + n2)
        homs, _ = iface._representable
        comps = {}
        for s in iface.schema.sorts:
            k = len(homs[s])
            col = []
            for j in range(n1):
                for i in range(k):
                    col.append(inl.components[s][leg1.components[s][j * k + i]])
            for j in range(n2):
                for i in range(k):
                    col.append(inr.components[s][leg2.components[s][j * k + i]])
            comps[s] = tuple(col)
        legs.append(check_morphism(Morphism(ln, apex, comps)))
    return StructuredCospan(
        iface, c1.left_foot + c2.left_foot, c1.right_foot + c2.right_foot, apex, legs[0], legs[1]
    )


def evaluation(interface: Interface, a: int) -> StructuredCospan:
    """L(a+a) --L(codiagonal)--> La <--!-- L0."""
    la = interface.L_apply(a)
    fold = interface.L_map([j % a for j in range(2 * a)] if a else [], 2 * a, a) if a else None
    if a == 0:
        return empty_cospan(interface)
    bang = check_morphism(
        Morphism(
            interface.L_apply(0), la, {s: () for s in interface.schema.sorts}
        )
    )
    return StructuredCospan(interface, 2 * a, 0, la, fold, bang)


def coevaluation(interface: Interface, a: int) -> StructuredCospan:
    ev = evaluation(interface, a)
    return StructuredCospan(
        ev.interface, ev.right_foot, ev.left_foot, ev.apex, ev.right_leg, ev.left_leg
    )


def twist(interface: Interface, a: int, b: int) -> StructuredCospan:
    """The symmetry a+b -> b+a as a cospan with identity-shaped apex."""
    lab = interface.L_apply(a + b)
    from .presheaf import identity as _id

    perm = [a + j for j in range(b)] + list(range(a))  # where each element of b+a lands in a+b
    swap = interface.L_map(perm, a + b, a + b)
    return StructuredCospan(interface, a + b, b + a, lab, _id(lab), swap)
