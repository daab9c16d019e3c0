"""The interface adjunction between finite sets and a graph-like schema.

``L`` sends a finite set to that many copies of the representable at the
designated interface sort (for GRAPH: the edgeless graph on the set); ``R``
reads off the interface-sort carrier.  The composite ``flat = L . R`` is the
discretization comonad; its counit includes the discrete part back into a
presheaf and is monic for the shipped schemas.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .presheaf import Morphism, Presheaf, SchemaMismatch, check_morphism
from .schema import Schema


@dataclass(frozen=True)
class Interface:
    schema: Schema
    interface_sort: str

    def __post_init__(self) -> None:
        if self.interface_sort not in self.schema.sorts:
            raise ValueError(f"unknown interface sort {self.interface_sort!r}")

    @cached_property
    def _representable(self) -> tuple[dict[str, list[str | None]], dict[str, list[tuple[int, int]]]]:
        """Hom(interface_sort, -): per sort the list of arrows out of the
        interface sort landing there (None = identity)."""
        homs: dict[str, list[str | None]] = {s: [] for s in self.schema.sorts}
        homs[self.interface_sort].append(None)
        for a in self.schema.arrows:
            if a.src == self.interface_sort:
                homs[a.dst].append(a.name)
        for s in homs:
            homs[s].sort(key=lambda n: "" if n is None else n)
        return homs, {}

    def L_apply(self, n: int) -> Presheaf:
        """n copies of the representable at the interface sort."""
        homs, _ = self._representable
        carriers = {s: n * len(homs[s]) for s in self.schema.sorts}
        action = {}
        for a in self.schema.arrows:
            table = []
            for j in range(n):
                for h in homs[a.src]:
                    comp = a.name if h is None else self.schema.compose(h, a.name)
                    table.append(j * len(homs[a.dst]) + homs[a.dst].index(comp))
            action[a.name] = tuple(table)
        return Presheaf(self.schema, carriers, action)

    def L_map(self, f: list[int] | tuple[int, ...], n_src: int, n_dst: int) -> Morphism:
        if len(f) != n_src or any(not 0 <= v < n_dst for v in f):
            raise ValueError("not a function between the stated sets")
        homs, _ = self._representable
        src, dst = self.L_apply(n_src), self.L_apply(n_dst)
        comps = {
            s: tuple(
                f[j] * len(homs[s]) + i
                for j in range(n_src)
                for i in range(len(homs[s]))
            )
            for s in self.schema.sorts
        }
        return check_morphism(Morphism(src, dst, comps))

    def R_apply(self, x: Presheaf) -> int:
        if x.schema.name != self.schema.name:
            raise SchemaMismatch(f"{x.schema.name} vs {self.schema.name}")
        return x.size(self.interface_sort)

    def counit(self, x: Presheaf) -> Morphism:
        """The inclusion ``flat(x) -> x``."""
        homs, _ = self._representable
        n = self.R_apply(x)
        flat = self.L_apply(n)
        comps = {}
        for s in self.schema.sorts:
            col = []
            for j in range(n):
                for h in homs[s]:
                    col.append(j if h is None else x.apply(h, j))
            comps[s] = tuple(col)
        return check_morphism(Morphism(flat, x, comps))

    def flat(self, x: Presheaf) -> Presheaf:
        return self.L_apply(self.R_apply(x))

    def counit_is_monic(self, x: Presheaf) -> bool:
        return self.counit(x).is_mono()


def graph_interface() -> Interface:
    from .schema import GRAPH

    return Interface(GRAPH, "n")


def rgraph_interface() -> Interface:
    from .schema import RGRAPH

    return Interface(RGRAPH, "n")


def set_interface() -> Interface:
    from .schema import SET

    return Interface(SET, "X")
