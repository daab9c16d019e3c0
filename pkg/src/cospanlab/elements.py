"""The category of elements of a presheaf, and the translation between
presheaves over a fixed typing object and presheaves on its element schema."""

from __future__ import annotations

from dataclasses import dataclass

from .presheaf import Morphism, Presheaf, check_morphism
from .schema import Arrow, Schema


def _sort_name(sort: str, elem: int) -> str:
    return f"{sort}@{elem}"


def _arrow_name(arrow: str, elem: int) -> str:
    return f"{arrow}@{elem}"


@dataclass(frozen=True)
class ElementsResult:
    base: Presheaf
    schema: Schema

    def to_elements(self, typed: Morphism) -> Presheaf:
        """Translate a morphism into the base into an element-schema presheaf.

        Carriers are the fibers of the typing map, renumbered in increasing
        element order.
        """
        if typed.target != self.base:
            raise ValueError("typing morphism must land in the base presheaf")
        g = typed.source
        fibers: dict[str, list[int]] = {}
        pos: dict[tuple[str, int], int] = {}
        for s in g.schema.sorts:
            for b in self.base.elements(s):
                fiber = [e for e in g.elements(s) if typed(s, e) == b]
                fibers[_sort_name(s, b)] = fiber
                for i, e in enumerate(fiber):
                    pos[(s, e)] = i
        carriers = {name: len(f) for name, f in fibers.items()}
        action = {}
        for a in g.schema.arrows:
            for b in self.base.elements(a.src):
                name = _arrow_name(a.name, b)
                action[name] = tuple(
                    pos[(a.dst, g.apply(a.name, e))] for e in fibers[_sort_name(a.src, b)]
                )
        return Presheaf(self.schema, carriers, action)

    def from_elements(self, q: Presheaf) -> Morphism:
        """Inverse translation: rebuild the typed presheaf over the base."""
        if q.schema.name != self.schema.name:
            raise ValueError("presheaf not on the element schema")
        g_schema = self.base.schema
        offsets: dict[str, dict[int, int]] = {}
        carriers = {}
        for s in g_schema.sorts:
            offsets[s] = {}
            total = 0
            for b in self.base.elements(s):
                offsets[s][b] = total
                total += q.size(_sort_name(s, b))
            carriers[s] = total
        action = {}
        typing = {}
        for a in g_schema.arrows:
            table = []
            for b in self.base.elements(a.src):
                tgt_b = self.base.apply(a.name, b)
                for i in range(q.size(_sort_name(a.src, b))):
                    table.append(
                        offsets[a.dst][tgt_b] + q.apply(_arrow_name(a.name, b), i)
                    )
            action[a.name] = tuple(table)
        g = Presheaf(g_schema, carriers, action)
        for s in g_schema.sorts:
            col = []
            for b in self.base.elements(s):
                col.extend([b] * q.size(_sort_name(s, b)))
            typing[s] = tuple(col)
        return check_morphism(Morphism(g, self.base, typing))


def category_of_elements(base: Presheaf) -> ElementsResult:
    """Element schema: one sort per (sort, element) pair, one arrow per
    (schema arrow, source element) pair; composites follow the base actions."""
    src_schema = base.schema
    sorts = tuple(
        _sort_name(s, e) for s in src_schema.sorts for e in base.elements(s)
    )
    arrows = tuple(
        Arrow(_arrow_name(a.name, e), _sort_name(a.src, e), _sort_name(a.dst, base.apply(a.name, e)))
        for a in src_schema.arrows
        for e in base.elements(a.src)
    )
    compositions: dict[tuple[str, str], str | None] = {}
    for fa in src_schema.arrows:
        for ga in src_schema.arrows:
            if fa.dst != ga.src:
                continue
            h = src_schema.compose(fa.name, ga.name)
            for e in base.elements(fa.src):
                mid = base.apply(fa.name, e)
                key = (_arrow_name(fa.name, e), _arrow_name(ga.name, mid))
                compositions[key] = None if h is None else _arrow_name(h, e)
    schema = Schema(
        name=f"Elts({src_schema.name})",
        sorts=sorts,
        arrows=arrows,
        compositions=compositions,
    )
    return ElementsResult(base, schema)
