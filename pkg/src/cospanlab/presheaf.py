"""Finite presheaves and their morphisms.

Carriers are dense ID ranges ``0..n`` per sort; element identity is
positional.  All values are immutable after construction and all operations
here are pure functions.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property

from .schema import Arrow, Schema, SchemaError


class SchemaMismatch(ValueError):
    pass


class OutOfRangeAction(ValueError):
    pass


class FunctorialityViolation(ValueError):
    pass


class NotNatural(ValueError):
    pass


@dataclass(frozen=True)
class Presheaf:
    schema: Schema
    carriers: dict[str, int]
    action: dict[str, tuple[int, ...]]

    def __post_init__(self) -> None:
        for s in self.schema.sorts:
            if s not in self.carriers or self.carriers[s] < 0:
                raise SchemaError(f"missing or negative carrier for sort {s!r}")
        for a in self.schema.arrows:
            if a.name not in self.action:
                raise SchemaError(f"missing action for arrow {a.name!r}")
            if len(self.action[a.name]) != self.carriers[a.src]:
                raise SchemaError(f"action table for {a.name!r} has wrong length")

    def size(self, sort: str) -> int:
        return self.carriers[sort]

    def elements(self, sort: str) -> range:
        return range(self.carriers[sort])

    def apply(self, arrow: str, element: int) -> int:
        return self.action[arrow][element]

    def total_size(self) -> int:
        return sum(self.carriers.values())

    @cached_property
    def key(self) -> tuple:
        return (
            self.schema.name,
            tuple(sorted(self.carriers.items())),
            tuple(sorted(self.action.items())),
        )

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Presheaf) and self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)


def validate_presheaf(p: Presheaf) -> list[str]:
    """Check the functor laws; returns a list of violation descriptions."""
    report: list[str] = []
    for a in p.schema.arrows:
        for x in p.elements(a.src):
            y = p.apply(a.name, x)
            if not 0 <= y < p.size(a.dst):
                report.append(
                    f"OutOfRangeAction: {a.name}({x}) = {y} outside carrier "
                    f"of sort {a.dst!r} (size {p.size(a.dst)})"
                )
    if report:
        return report
    for f, g in p.schema.composable_pairs():
        h = p.schema.compose(f.name, g.name)
        for x in p.elements(f.src):
            got = p.apply(g.name, p.apply(f.name, x))
            want = x if h is None else p.apply(h, x)
            if got != want:
                report.append(
                    f"FunctorialityViolation: ({f.name};{g.name}) on element {x} "
                    f"of sort {f.src!r}: composite gives {got}, table gives {want}"
                )
    return report


def check_presheaf(p: Presheaf) -> Presheaf:
    report = validate_presheaf(p)
    if report:
        if any(r.startswith("OutOfRangeAction") for r in report):
            raise OutOfRangeAction("; ".join(report))
        raise FunctorialityViolation("; ".join(report))
    return p


def empty_presheaf(schema: Schema) -> Presheaf:
    return Presheaf(
        schema,
        {s: 0 for s in schema.sorts},
        {a.name: () for a in schema.arrows},
    )


def graph(nodes: int, edges: list[tuple[int, int]]) -> Presheaf:
    """Convenience constructor for GRAPH presheaves from an edge list."""
    from .schema import GRAPH

    return check_presheaf(
        Presheaf(
            GRAPH,
            {"e": len(edges), "n": nodes},
            {
                "s": tuple(s for s, _ in edges),
                "t": tuple(t for _, t in edges),
            },
        )
    )


@dataclass(frozen=True)
class Morphism:
    source: Presheaf
    target: Presheaf
    components: dict[str, tuple[int, ...]]

    def __post_init__(self) -> None:
        if self.source.schema is not self.target.schema and (
            self.source.schema.name != self.target.schema.name
        ):
            raise SchemaMismatch("morphism endpoints live on different schemas")
        for s in self.source.schema.sorts:
            if len(self.components.get(s, ())) != self.source.size(s):
                raise SchemaError(f"component for sort {s!r} has wrong length")

    @property
    def schema(self) -> Schema:
        return self.source.schema

    def __call__(self, sort: str, element: int) -> int:
        return self.components[sort][element]

    @cached_property
    def key(self) -> tuple:
        return (self.source.key, self.target.key, tuple(sorted(self.components.items())))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Morphism) and self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def is_natural(self) -> bool:
        for a in self.schema.arrows:
            fs, ft = self.components[a.src], self.components[a.dst]
            for x in self.source.elements(a.src):
                if ft[self.source.apply(a.name, x)] != self.target.apply(a.name, fs[x]):
                    return False
        return True

    def is_mono(self) -> bool:
        return all(
            len(set(self.components[s])) == self.source.size(s)
            for s in self.schema.sorts
        )

    def is_iso(self) -> bool:
        return self.is_mono() and all(
            self.source.size(s) == self.target.size(s) for s in self.schema.sorts
        )

    def inverse(self) -> Morphism:
        if not self.is_iso():
            raise ValueError("not invertible")
        comps = {}
        for s in self.schema.sorts:
            inv = [0] * self.target.size(s)
            for x, y in enumerate(self.components[s]):
                inv[y] = x
            comps[s] = tuple(inv)
        return Morphism(self.target, self.source, comps)

    def then(self, other: Morphism) -> Morphism:
        """Diagrammatic composition: ``self`` first, then ``other``."""
        if self.target != other.source:
            raise ValueError("morphisms not composable")
        comps = {
            s: tuple(other.components[s][y] for y in self.components[s])
            for s in self.schema.sorts
        }
        return Morphism(self.source, other.target, comps)


def check_morphism(m: Morphism) -> Morphism:
    for s in m.schema.sorts:
        for y in m.components[s]:
            if not 0 <= y < m.target.size(s):
                raise OutOfRangeAction(f"component for sort {s!r} lands outside target")
    if not m.is_natural():
        raise NotNatural("components do not commute with the schema actions")
    return m


def identity(p: Presheaf) -> Morphism:
    return Morphism(p, p, {s: tuple(p.elements(s)) for s in p.schema.sorts})


def constant_morphism(src: Presheaf, dst: Presheaf, table: dict[str, list[int]]) -> Morphism:
    return check_morphism(
        Morphism(src, dst, {s: tuple(table.get(s, ())) for s in src.schema.sorts})
    )


# -- hom enumeration ------------------------------------------------------


def _assignment_order(x: Presheaf) -> list[tuple[str, int]]:
    # Most-constrained sort first: sorts with more incident arrows get
    # their elements assigned earlier so naturality prunes sooner.
    def weight(sort: str) -> tuple:
        deg = sum(1 for a in x.schema.arrows if sort in (a.src, a.dst))
        return (-deg, sort)

    order = []
    for sort in sorted(x.schema.sorts, key=weight):
        order.extend((sort, i) for i in x.elements(sort))
    return order


def hom_enumerate(x: Presheaf, y: Presheaf, monic_only: bool = False) -> list[Morphism]:
    """All natural transformations ``x -> y`` in a deterministic order.

    Backtracking over element assignments; after each assignment every arrow
    constraint with both endpoints determined is checked.
    """
    if x.schema.name != y.schema.name:
        raise SchemaMismatch(f"{x.schema.name} vs {y.schema.name}")
    order = _assignment_order(x)
    partial: dict[tuple[str, int], int] = {}
    out: list[Morphism] = []
    arrows = x.schema.arrows

    def consistent(sort: str, elem: int, val: int) -> bool:
        for a in arrows:
            if a.src == sort:
                img = x.apply(a.name, elem)
                tgt = partial.get((a.dst, img))
                if tgt is not None and y.apply(a.name, val) != tgt:
                    return False
            if a.dst == sort:
                for e in x.elements(a.src):
                    if x.apply(a.name, e) == elem:
                        sval = partial.get((a.src, e))
                        if sval is not None and y.apply(a.name, sval) != val:
                            return False
        return True

    def used(sort: str, val: int) -> bool:
        return any(k[0] == sort and v == val for k, v in partial.items())

    def rec(i: int) -> None:
        if i == len(order):
            comps = {
                s: tuple(partial[(s, e)] for e in x.elements(s))
                for s in x.schema.sorts
            }
            out.append(Morphism(x, y, comps))
            return
        sort, elem = order[i]
        for val in y.elements(sort):
            if monic_only and used(sort, val):
                continue
            if consistent(sort, elem, val):
                partial[(sort, elem)] = val
                rec(i + 1)
                del partial[(sort, elem)]

    rec(0)
    out.sort(key=lambda m: tuple(sorted(m.components.items())))
    return out


def iso_search(x: Presheaf, y: Presheaf) -> Morphism | None:
    """An isomorphism ``x -> y`` when one exists, else ``None``."""
    if x.schema.name != y.schema.name:
        raise SchemaMismatch(f"{x.schema.name} vs {y.schema.name}")
    if any(x.size(s) != y.size(s) for s in x.schema.sorts):
        return None
    return constrained_iso_search(x, y, {})


def constrained_iso_search(
    x: Presheaf,
    y: Presheaf,
    pins: dict[tuple[str, int], int],
) -> Morphism | None:
    """Isomorphism search where ``pins`` forces selected element images."""
    if any(x.size(s) != y.size(s) for s in x.schema.sorts):
        return None
    order = _assignment_order(x)
    partial: dict[tuple[str, int], int] = {}
    used: dict[str, set[int]] = {s: set() for s in x.schema.sorts}
    arrows = x.schema.arrows

    def consistent(sort: str, elem: int, val: int) -> bool:
        for a in arrows:
            if a.src == sort:
                tgt = partial.get((a.dst, x.apply(a.name, elem)))
                if tgt is not None and y.apply(a.name, val) != tgt:
                    return False
            if a.dst == sort:
                for e in x.elements(a.src):
                    if x.apply(a.name, e) == elem:
                        sval = partial.get((a.src, e))
                        if sval is not None and y.apply(a.name, sval) != val:
                            return False
        return True

    def rec(i: int) -> Morphism | None:
        if i == len(order):
            comps = {
                s: tuple(partial[(s, e)] for e in x.elements(s))
                for s in x.schema.sorts
            }
            return Morphism(x, y, comps)
        sort, elem = order[i]
        candidates = (
            [pins[(sort, elem)]] if (sort, elem) in pins else list(y.elements(sort))
        )
        for val in candidates:
            if val in used[sort]:
                continue
            if consistent(sort, elem, val):
                partial[(sort, elem)] = val
                used[sort].add(val)
                found = rec(i + 1)
                if found is not None:
                    return found
                del partial[(sort, elem)]
                used[sort].remove(val)
        return None

    return rec(0)


# -- canonical forms -------------------------------------------------------


def _refine_colors(p: Presheaf, colors: dict[tuple[str, int], tuple]) -> dict[tuple[str, int], int]:
    """Iterative color refinement; returns stable integer colors."""
    cur = dict(colors)
    while True:
        nxt: dict[tuple[str, int], tuple] = {}
        for s in p.schema.sorts:
            for e in p.elements(s):
                sig_out = tuple(
                    sorted(
                        (a.name, cur[(a.dst, p.apply(a.name, e))])
                        for a in p.schema.arrows
                        if a.src == s
                    )
                )
                sig_in = tuple(
                    sorted(
                        (a.name, cur[(a.src, x)])
                        for a in p.schema.arrows
                        if a.dst == s
                        for x in p.elements(a.src)
                        if p.apply(a.name, x) == e
                    )
                )
                nxt[(s, e)] = (cur[(s, e)], sig_out, sig_in)
        # compress to integers, deterministically
        palette = {sig: i for i, sig in enumerate(sorted(set(nxt.values())))}
        compressed = {k: palette[v] for k, v in nxt.items()}
        if _partition(p, compressed) == _partition(p, {k: v for k, v in cur.items()}):
            return compressed
        cur = compressed


def _partition(p: Presheaf, colors: dict[tuple[str, int], object]) -> list[list[tuple[str, int]]]:
    groups: dict[object, list[tuple[str, int]]] = {}
    for k in sorted(colors):
        groups.setdefault((k[0], colors[k]), []).append(k)
    return sorted(groups.values())


def _serialize_under(
    p: Presheaf,
    label: dict[tuple[str, int], int],
    base: dict[tuple[str, int], object] | None = None,
) -> tuple:
    tables = []
    for a in sorted(p.schema.arrows, key=lambda a: a.name):
        table = [0] * p.size(a.src)
        for e in p.elements(a.src):
            table[label[(a.src, e)]] = label[(a.dst, p.apply(a.name, e))]
        tables.append((a.name, tuple(table)))
    marks = tuple(
        sorted((s, label[(s, e)], c) for (s, e), c in (base or {}).items())
    )
    return (
        tuple(sorted(p.carriers.items())),
        tuple(tables),
        marks,
    )


def canonical_key(p: Presheaf, initial: dict[tuple[str, int], tuple] | None = None) -> tuple:
    """A deterministic iso-invariant key.

    Color refinement followed by individualization/backtracking over the
    refined partition; the lexicographically least serialization wins.
    ``initial`` supplies extra element colors (used for typed/cospan keys);
    two presheaves get equal keys iff an iso respecting ``initial`` exists.
    """
    base = initial or {}
    colors = {
        (s, e): (base.get((s, e), ()),)
        for s in p.schema.sorts
        for e in p.elements(s)
    }
    best: list[tuple | None] = [None]

    def rec(cur: dict[tuple[str, int], tuple]) -> None:
        refined = _refine_colors(p, cur)
        cells = _partition(p, refined)
        target = next((c for c in cells if len(c) > 1), None)
        if target is None:
            label: dict[tuple[str, int], int] = {}
            counters: dict[str, int] = {s: 0 for s in p.schema.sorts}
            for (s, e) in sorted(refined, key=lambda k: (k[0], refined[k], k[1])):
                label[(s, e)] = counters[s]
                counters[s] += 1
            ser = _serialize_under(p, label, base)
            if best[0] is None or ser < best[0]:
                best[0] = ser
            return
        for pick in target:
            nxt = {k: (refined[k],) for k in refined}
            nxt[pick] = (refined[pick], "pinned")
            rec(nxt)

    if p.total_size() == 0:
        return (p.schema.name,) + _serialize_under(p, {}, base)
    rec(colors)
    assert best[0] is not None
    return (p.schema.name,) + best[0]
