"""Finite (co)limits of presheaves with universal-property witnesses,
pushout complements, and the subobject lattice."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .presheaf import (
    Morphism,
    Presheaf,
    SchemaMismatch,
    check_morphism,
    identity,
)
from .schema import Schema


class NotMonic(ValueError):
    pass


class TargetMismatch(ValueError):
    pass


class NonCommutingCocone(ValueError):
    pass


def _require_same_schema(*ps: Presheaf) -> Schema:
    schema = ps[0].schema
    for p in ps[1:]:
        if p.schema.name != schema.name:
            raise SchemaMismatch(f"{p.schema.name} vs {schema.name}")
    return schema


# -- coproducts -----------------------------------------------------------


def coproduct(x: Presheaf, y: Presheaf) -> tuple[Presheaf, Morphism, Morphism]:
    schema = _require_same_schema(x, y)
    carriers = {s: x.size(s) + y.size(s) for s in schema.sorts}
    action = {}
    for a in schema.arrows:
        shifted = tuple(v + x.size(a.dst) for v in y.action[a.name])
        action[a.name] = x.action[a.name] + shifted
    apex = Presheaf(schema, carriers, action)
    inl = Morphism(x, apex, {s: tuple(range(x.size(s))) for s in schema.sorts})
    inr = Morphism(
        y, apex, {s: tuple(range(x.size(s), x.size(s) + y.size(s))) for s in schema.sorts}
    )
    return apex, inl, inr


def copair(f: Morphism, g: Morphism) -> Morphism:
    """The map out of ``coproduct(f.source, g.source)`` induced by f and g."""
    if f.target != g.target:
        raise TargetMismatch("copair needs a common target")
    apex, _, _ = coproduct(f.source, g.source)
    comps = {
        s: f.components[s] + g.components[s] for s in f.schema.sorts
    }
    return Morphism(apex, f.target, comps)


def codiagonal(x: Presheaf) -> Morphism:
    return copair(identity(x), identity(x))


# -- pushouts -------------------------------------------------------------


class _UnionFind:
    def __init__(self) -> None:
        self.parent: dict = {}

    def find(self, a):
        self.parent.setdefault(a, a)
        while self.parent[a] != a:
            self.parent[a] = self.parent[self.parent[a]]
            a = self.parent[a]
        return a

    def union(self, a, b) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[max(ra, rb)] = min(ra, rb)
        return True


@dataclass(frozen=True)
class PushoutResult:
    apex: Presheaf
    left: Morphism  # x -> apex
    right: Morphism  # y -> apex

    def factorize(self, u: Morphism, v: Morphism) -> Morphism:
        """The unique mediating morphism for a commuting cocone (u, v)."""
        if u.target != v.target:
            raise TargetMismatch("cocone legs need a common target")
        schema = self.apex.schema
        comps: dict[str, list[int | None]] = {
            s: [None] * self.apex.size(s) for s in schema.sorts
        }
        for leg, inj in ((u, self.left), (v, self.right)):
            for s in schema.sorts:
                for e in leg.source.elements(s):
                    tgt = inj(s, e)
                    val = leg(s, e)
                    if comps[s][tgt] is None:
                        comps[s][tgt] = val
                    elif comps[s][tgt] != val:
                        raise NonCommutingCocone(
                            f"cocone disagrees on class {tgt} of sort {s!r}"
                        )
        if any(c is None for s in schema.sorts for c in comps[s]):
            raise NonCommutingCocone("cocone does not cover the pushout apex")
        m = Morphism(self.apex, u.target, {s: tuple(comps[s]) for s in schema.sorts})
        return check_morphism(m)


def pushout(f: Morphism, g: Morphism) -> PushoutResult:
    """Pushout of the span ``x <-f- a -g-> y``."""
    if f.source != g.source:
        raise ValueError("pushout requires a common source")
    schema = _require_same_schema(f.target, g.target)
    x, y, a = f.target, g.target, f.source

    uf = _UnionFind()
    for s in schema.sorts:
        for e in x.elements(s):
            uf.find((s, "L", e))
        for e in y.elements(s):
            uf.find((s, "R", e))
        for e in a.elements(s):
            uf.union((s, "L", f(s, e)), (s, "R", g(s, e)))
    # congruence closure: actions must be well defined on classes
    changed = True
    while changed:
        changed = False
        for arr in schema.arrows:
            images: dict = {}
            for side, p in (("L", x), ("R", y)):
                for e in p.elements(arr.src):
                    root = uf.find((arr.src, side, e))
                    img = (arr.dst, side, p.apply(arr.name, e))
                    if root in images:
                        if uf.union(images[root], img):
                            changed = True
                    else:
                        images[root] = img

    # canonical class order: sorted by least member in (left, right) order
    classes: dict[str, list] = {s: [] for s in schema.sorts}
    index: dict = {}
    for s in schema.sorts:
        roots: dict = {}
        for side, p in (("L", x), ("R", y)):
            for e in p.elements(s):
                key = (s, side, e)
                root = uf.find(key)
                roots.setdefault(root, []).append((0 if side == "L" else 1, e))
        ordered = sorted(roots.items(), key=lambda kv: min(kv[1]))
        for i, (root, _members) in enumerate(ordered):
            index[root] = i
        classes[s] = [root for root, _ in ordered]

    def cls(sort: str, side: str, e: int) -> int:
        return index[uf.find((sort, side, e))]

    carriers = {s: len(classes[s]) for s in schema.sorts}
    action = {}
    for arr in schema.arrows:
        table: list[int | None] = [None] * carriers[arr.src]
        for side, p in (("L", x), ("R", y)):
            for e in p.elements(arr.src):
                table[cls(arr.src, side, e)] = cls(arr.dst, side, p.apply(arr.name, e))
        action[arr.name] = tuple(table)  # total: every class has a member
    apex = Presheaf(schema, carriers, action)
    left = Morphism(x, apex, {
        s: tuple(cls(s, "L", e) for e in x.elements(s)) for s in schema.sorts
    })
    right = Morphism(y, apex, {
        s: tuple(cls(s, "R", e) for e in y.elements(s)) for s in schema.sorts
    })
    return PushoutResult(apex, left, right)


def initial(schema_of: Presheaf) -> Presheaf:
    from .presheaf import empty_presheaf

    return empty_presheaf(schema_of.schema)


# -- pullbacks ------------------------------------------------------------


@dataclass(frozen=True)
class PullbackResult:
    apex: Presheaf
    left: Morphism  # apex -> x
    right: Morphism  # apex -> y
    pairs: dict[str, tuple[tuple[int, int], ...]]

    def factorize(self, u: Morphism, v: Morphism) -> Morphism:
        """Unique mediator from a commuting cone (u: c -> x, v: c -> y)."""
        if u.source != v.source:
            raise ValueError("cone legs need a common source")
        schema = self.apex.schema
        lookup = {
            s: {pair: i for i, pair in enumerate(self.pairs[s])} for s in schema.sorts
        }
        comps = {}
        for s in schema.sorts:
            col = []
            for e in u.source.elements(s):
                pair = (u(s, e), v(s, e))
                if pair not in lookup[s]:
                    raise NonCommutingCocone(
                        f"cone does not agree over the cospan at sort {s!r}"
                    )
                col.append(lookup[s][pair])
            comps[s] = tuple(col)
        return check_morphism(Morphism(u.source, self.apex, comps))


def pullback(f: Morphism, g: Morphism) -> PullbackResult:
    """Pullback of the cospan ``x -f-> a <-g- y``."""
    if f.target != g.target:
        raise TargetMismatch("pullback requires a common target")
    schema = _require_same_schema(f.source, g.source)
    x, y = f.source, g.source
    pairs = {
        s: tuple(
            (i, j)
            for i in x.elements(s)
            for j in y.elements(s)
            if f(s, i) == g(s, j)
        )
        for s in schema.sorts
    }
    lookup = {s: {pair: i for i, pair in enumerate(pairs[s])} for s in schema.sorts}
    carriers = {s: len(pairs[s]) for s in schema.sorts}
    action = {}
    for arr in schema.arrows:
        action[arr.name] = tuple(
            lookup[arr.dst][(x.apply(arr.name, i), y.apply(arr.name, j))]
            for (i, j) in pairs[arr.src]
        )
    apex = Presheaf(schema, carriers, action)
    left = Morphism(apex, x, {s: tuple(i for i, _ in pairs[s]) for s in schema.sorts})
    right = Morphism(apex, y, {s: tuple(j for _, j in pairs[s]) for s in schema.sorts})
    return PullbackResult(apex, left, right, pairs)


# -- subobjects -----------------------------------------------------------


@dataclass(frozen=True)
class Subobject:
    """A subobject of ``target``, normalized to its image subset."""

    target: Presheaf
    members: dict[str, tuple[int, ...]]  # sorted element subsets per sort

    def __post_init__(self) -> None:
        for s, elems in self.members.items():
            if list(elems) != sorted(set(elems)):
                raise ValueError("subobject members must be sorted and unique")

    @property
    def key(self) -> tuple:
        return (self.target.key, tuple(sorted(self.members.items())))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Subobject) and self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def domain(self) -> Presheaf:
        schema = self.target.schema
        idx = {s: {e: i for i, e in enumerate(self.members[s])} for s in schema.sorts}
        carriers = {s: len(self.members[s]) for s in schema.sorts}
        action = {
            a.name: tuple(
                idx[a.dst][self.target.apply(a.name, e)] for e in self.members[a.src]
            )
            for a in schema.arrows
        }
        return Presheaf(schema, carriers, action)

    def inclusion(self) -> Morphism:
        return Morphism(
            self.domain(),
            self.target,
            {s: tuple(self.members[s]) for s in self.target.schema.sorts},
        )


def subobject_from_mono(m: Morphism) -> Subobject:
    if not m.is_mono():
        raise NotMonic("subobjects arise from monic morphisms")
    return Subobject(
        m.target,
        {
            s: tuple(sorted(m.components[s]))
            for s in m.schema.sorts
        },
    )


def image_subobject(m: Morphism) -> Subobject:
    return Subobject(
        m.target,
        {s: tuple(sorted(set(m.components[s]))) for s in m.schema.sorts},
    )


def _is_closed(target: Presheaf, members: dict[str, frozenset[int]]) -> bool:
    return all(
        target.apply(a.name, e) in members[a.dst]
        for a in target.schema.arrows
        for e in members[a.src]
    )


def sub_enumerate(x: Presheaf) -> list[Subobject]:
    """All action-closed pointwise subsets of ``x``, deterministic order."""
    schema = x.schema
    sorts = list(schema.sorts)
    out = []
    pools = [
        list(itertools.chain.from_iterable(
            itertools.combinations(range(x.size(s)), k)
            for k in range(x.size(s) + 1)
        ))
        for s in sorts
    ]
    for combo in itertools.product(*pools):
        members = {s: frozenset(sel) for s, sel in zip(sorts, combo)}
        if _is_closed(x, members):
            out.append(Subobject(x, {s: tuple(sorted(members[s])) for s in sorts}))
    out.sort(key=lambda s: s.key)
    return out


def sub_meet(s1: Subobject, s2: Subobject) -> Subobject:
    if s1.target != s2.target:
        raise TargetMismatch("subobjects of different targets")
    return Subobject(
        s1.target,
        {
            s: tuple(sorted(set(s1.members[s]) & set(s2.members[s])))
            for s in s1.target.schema.sorts
        },
    )


def sub_join(s1: Subobject, s2: Subobject) -> Subobject:
    """Join = pushout over the meet, embedded back into the target.

    For pointwise subobjects this is the action-closure-free union, which is
    automatically closed; the pushout description agrees with it.
    """
    if s1.target != s2.target:
        raise TargetMismatch("subobjects of different targets")
    return Subobject(
        s1.target,
        {
            s: tuple(sorted(set(s1.members[s]) | set(s2.members[s])))
            for s in s1.target.schema.sorts
        },
    )


def full_subobject(x: Presheaf) -> Subobject:
    return Subobject(x, {s: tuple(x.elements(s)) for s in x.schema.sorts})


# -- pushout complements --------------------------------------------------


@dataclass(frozen=True)
class Complement:
    d: Presheaf
    k_to_d: Morphism
    d_to_g: Morphism


def _verify_complement(left: Morphism, match: Morphism, cand: Complement) -> bool:
    po = pushout(left, cand.k_to_d)
    try:
        mediator = po.factorize(match, cand.d_to_g)
    except NonCommutingCocone:
        return False
    return mediator.is_iso()


def pushout_complement(left: Morphism, match: Morphism) -> Complement | None:
    """Complement of ``k -left-> l -match-> g`` for a monic left leg.

    Returns the unique-up-to-iso complement when the gluing condition holds,
    else ``None``.
    """
    if not left.is_mono():
        raise NotMonic("pushout_complement requires a monic left leg")
    if left.target != match.source:
        raise ValueError("left leg and match do not compose")
    g = match.target
    schema = g.schema
    k_image_in_g = {
        s: set(match(s, left(s, e)) for e in left.source.elements(s))
        for s in schema.sorts
    }
    l_image = {s: set(match.components[s]) for s in schema.sorts}
    members = {
        s: frozenset(k_image_in_g[s] | (set(g.elements(s)) - l_image[s]))
        for s in schema.sorts
    }
    if not _is_closed(g, members):
        return None  # dangling condition fails
    sub = Subobject(g, {s: tuple(sorted(members[s])) for s in schema.sorts})
    d = sub.domain()
    d_to_g = sub.inclusion()
    pos = {s: {e: i for i, e in enumerate(sub.members[s])} for s in schema.sorts}
    k_to_d = Morphism(
        left.source,
        d,
        {
            s: tuple(pos[s][match(s, left(s, e))] for e in left.source.elements(s))
            for s in schema.sorts
        },
    )
    if not k_to_d.is_natural():
        return None
    cand = Complement(d, k_to_d, d_to_g)
    if not _verify_complement(left, match, cand):
        return None  # identification condition fails
    return cand


def enumerate_complements(left: Morphism, match: Morphism) -> list[Complement]:
    """All pushout complements (arbitrary left leg), via subobject search.

    Deduplicated up to isomorphisms of ``d`` commuting with ``k -> d`` and
    ``d -> g``.
    """
    if left.target != match.source:
        raise ValueError("left leg and match do not compose")
    from .presheaf import hom_enumerate

    g = match.target
    found: list[Complement] = []
    for sub in sub_enumerate(g):
        d = sub.domain()
        incl = sub.inclusion()
        for u in hom_enumerate(left.source, d):
            if left.then(match) != u.then(incl):
                continue
            cand = Complement(d, u, incl)
            if _verify_complement(left, match, cand):
                if not any(_complement_eq(cand, c) for c in found):
                    found.append(cand)
    return found


def _complement_eq(c1: Complement, c2: Complement) -> bool:
    # candidates are normalized (d -> g is a subobject inclusion), so an iso
    # commuting with both structure maps forces pointwise equality
    return c1.d_to_g == c2.d_to_g and c1.k_to_d == c2.k_to_d
