"""Finite schemas: small categories presented by sorts, arrows and a composition table.

A schema is the indexing category for the finite set-valued functors in
:mod:`cospanlab.presheaf`.  Arrows are drawn in the direction their action
functions go, so a functor on a schema assigns to each arrow ``a: A -> B`` a
total function ``carrier[A] -> carrier[B]``.  (Equivalently these are
presheaves on the opposite category; the orientation is fixed here, once.)
"""

from __future__ import annotations

from dataclasses import dataclass, field


class SchemaError(ValueError):
    pass


@dataclass(frozen=True)
class Arrow:
    name: str
    src: str
    dst: str


@dataclass(frozen=True)
class Schema:
    """A finite category: named sorts, named non-identity arrows, and a
    total composition table over composable non-identity pairs.

    ``compositions`` maps a composable pair ``(f, g)`` with
    ``f: A -> B`` and ``g: B -> C`` to the name of the arrow ``g . f`` or to
    ``None`` when the composite is an identity.
    """

    name: str
    sorts: tuple[str, ...]
    arrows: tuple[Arrow, ...] = ()
    compositions: dict[tuple[str, str], str | None] = field(default_factory=dict)

    def __post_init__(self) -> None:
        seen: set[str] = set()
        for s in self.sorts:
            if s in seen:
                raise SchemaError(f"duplicate sort {s!r}")
            seen.add(s)
        names: set[str] = set()
        for a in self.arrows:
            if a.name in names:
                raise SchemaError(f"duplicate arrow {a.name!r}")
            names.add(a.name)
            if a.src not in seen or a.dst not in seen:
                raise SchemaError(f"arrow {a.name!r} references unknown sort")
        self._check_composition_table()

    # -- composition ------------------------------------------------------

    def arrow(self, name: str) -> Arrow:
        for a in self.arrows:
            if a.name == name:
                return a
        raise SchemaError(f"unknown arrow {name!r}")

    def composable_pairs(self) -> list[tuple[Arrow, Arrow]]:
        return [(f, g) for f in self.arrows for g in self.arrows if f.dst == g.src]

    def compose(self, f: str, g: str) -> str | None:
        """Composite of ``f`` then ``g``; ``None`` means an identity arrow."""
        key = (f, g)
        if key not in self.compositions:
            raise SchemaError(f"composition table missing entry for {key}")
        return self.compositions[key]

    def _check_composition_table(self) -> None:
        for f, g in self.composable_pairs():
            h = self.compose(f.name, g.name)
            if h is None:
                if f.src != g.dst:
                    raise SchemaError(
                        f"composite of {f.name!r};{g.name!r} declared identity "
                        f"but endpoints differ"
                    )
            else:
                ha = self.arrow(h)
                if ha.src != f.src or ha.dst != g.dst:
                    raise SchemaError(
                        f"composite {h!r} of {f.name!r};{g.name!r} has wrong endpoints"
                    )
        # associativity: (f;g);h == f;(g;h) on all composable triples
        for f, g in self.composable_pairs():
            for h in self.arrows:
                if h.src != g.dst:
                    continue
                left = self._compose_maybe_id(self.compose(f.name, g.name), h.name, f.src)
                right = self._compose_maybe_id_pre(f.name, self.compose(g.name, h.name), h.dst)
                if left != right:
                    raise SchemaError(
                        f"composition not associative on ({f.name},{g.name},{h.name})"
                    )

    def _compose_maybe_id(self, fg: str | None, h: str, src: str) -> str | None:
        # (f;g);h where f;g may be an identity at `src`
        if fg is None:
            return h
        return self.compose(fg, h)

    def _compose_maybe_id_pre(self, f: str, gh: str | None, dst: str) -> str | None:
        if gh is None:
            return f
        return self.compose(f, gh)


SET = Schema(name="SET", sorts=("X",))

GRAPH = Schema(
    name="GRAPH",
    sorts=("e", "n"),
    arrows=(Arrow("s", "e", "n"), Arrow("t", "e", "n")),
)

# Reflexive graphs.  Closing {s, t, i} under composition adds the two
# idempotents "is" and "it" on edges (i;s and i;t are identities on nodes).
RGRAPH = Schema(
    name="RGRAPH",
    sorts=("e", "n"),
    arrows=(
        Arrow("s", "e", "n"),
        Arrow("t", "e", "n"),
        Arrow("i", "n", "e"),
        Arrow("is", "e", "e"),
        Arrow("it", "e", "e"),
    ),
    compositions={
        ("i", "s"): None,
        ("i", "t"): None,
        ("s", "i"): "is",
        ("t", "i"): "it",
        ("i", "is"): "i",
        ("i", "it"): "i",
        ("is", "s"): "s",
        ("is", "t"): "s",
        ("it", "s"): "t",
        ("it", "t"): "t",
        ("is", "is"): "is",
        ("is", "it"): "is",
        ("it", "is"): "it",
        ("it", "it"): "it",
    },
)

BUILTIN_SCHEMAS = {"SET": SET, "GRAPH": GRAPH, "RGRAPH": RGRAPH}
