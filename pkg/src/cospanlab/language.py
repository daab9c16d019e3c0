"""Grammar discretization, lifting to squares, and closed-system tools.

A grammar's rules can be discretized (the span waist replaced by its
discrete part), lifted to generator squares between closed cospans, and
replayed: a derivation between closed systems becomes a square built by
tensoring each step's generator with the identity square on its untouched
context, and conversely.  Closed systems decompose along separating cuts.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .adjunction import Interface
from .colimits import Subobject, pushout, sub_enumerate, sub_meet
from .cospans import StructuredCospan, compose, cospan_iso_search, open_graph
from .presheaf import (
    Morphism,
    Presheaf,
    canonical_key,
    check_morphism,
    hom_enumerate,
    identity,
)
from .rewriting import Derivation, Grammar, Rule, Step, apply_rule, find_matches, one_step
from .squares import SquareRep, VerticalArrow, check_square, identity_vertical, v_compose_up_to_iso, v_identity_square, h_compose


class NotClosed(ValueError):
    pass


class SeparationViolation(ValueError):
    pass


class NotDiscrete(ValueError):
    pass


def discretize_rule(iface: Interface, r: Rule) -> Rule:
    """Replace the waist k by its discrete part, legs through the counit."""
    eps = iface.counit(r.mid)
    return Rule(
        r.name,
        r.left,
        eps.source,
        r.right,
        eps.then(r.leg_l),
        eps.then(r.leg_r),
        r.kind,
    )


def discretize_grammar(g: Grammar) -> Grammar:
    return Grammar(g.interface, tuple(discretize_rule(g.interface, r) for r in g.rules), g.monic_matches)


def _is_discrete(iface: Interface, p: Presheaf) -> bool:
    return p == iface.flat(p)


def enumerate_hosts(iface: Interface, bounds: dict[str, int]) -> list[Presheaf]:
    """All presheaves with carriers within bounds, one per iso class."""
    schema = iface.schema
    sorts = schema.sorts
    out: list[Presheaf] = []
    seen: set[tuple] = set()
    for sizes in itertools.product(*(range(bounds.get(s, 0) + 1) for s in sorts)):
        carriers = dict(zip(sorts, sizes))
        tables = []
        for a in schema.arrows:
            n_src, n_dst = carriers[a.src], carriers[a.dst]
            if n_src and not n_dst:
                tables = None
                break
            tables.append(list(itertools.product(range(n_dst), repeat=n_src)))
        if tables is None:
            continue
        for combo in itertools.product(*tables):
            action = {a.name: combo[i] for i, a in enumerate(schema.arrows)}
            try:
                p = Presheaf(schema, carriers, action)
            except Exception:
                continue
            from .presheaf import validate_presheaf

            if validate_presheaf(p):
                continue
            key = canonical_key(p)
            if key not in seen:
                seen.add(key)
                out.append(p)
    return out


def meet_completeness_check(g: Grammar) -> bool:
    """Subobject lattices of all rule waists have pairwise meets."""
    for r in g.rules:
        subs = sub_enumerate(r.mid)
        for s1, s2 in itertools.combinations_with_replacement(subs, 2):
            sub_meet(s1, s2)
    return True


def discrete_equivalence_check(g: Grammar, bounds: dict[str, int]) -> list[str]:
    """The grammar and its discretization rewrite every small host alike."""
    meet_completeness_check(g)
    gd = discretize_grammar(g)
    report = []
    for host in enumerate_hosts(g.interface, bounds):
        succ = {canonical_key(st.result) for st in one_step(g, host)}
        succ_d = {canonical_key(st.result) for st in one_step(gd, host)}
        if succ != succ_d:
            report.append(
                f"host {host.carriers}: {len(succ)} vs {len(succ_d)} successor classes"
            )
    return report


@dataclass(frozen=True)
class LiftedGrammar:
    grammar: Grammar
    generators: dict[str, SquareRep]


def _bang(iface: Interface, target: Presheaf) -> Morphism:
    return check_morphism(
        Morphism(iface.L_apply(0), target, {s: () for s in iface.schema.sorts})
    )


def _closed_leg(iface: Interface, leg: Morphism, n: int) -> StructuredCospan:
    """The cospan L0 -> target <- L(n) with the given right leg."""
    return StructuredCospan(iface, 0, n, leg.target, _bang(iface, leg.target), leg)


def lift_grammar(g: Grammar) -> LiftedGrammar:
    """One generator square per rule: rows L0 -> l <- LRk over L0 -> LRk <- LRk
    over L0 -> r <- LRk, with the rule's own legs as the apex maps."""
    iface = g.interface
    gens = {}
    for r in g.rules:
        if not _is_discrete(iface, r.mid):
            raise NotDiscrete(f"rule {r.name!r}: waist is not discrete; discretize first")
        n = iface.R_apply(r.mid)
        flat = iface.L_apply(n)
        top = _closed_leg(iface, r.leg_l, n)
        mid = _closed_leg(iface, identity(flat), n)
        bot = _closed_leg(iface, r.leg_r, n)
        gens[r.name] = check_square(SquareRep(
            top, mid, bot,
            identity_vertical(0), identity_vertical(n),
            r.leg_l, r.leg_r, r.kind == "fine",
        ))
    return LiftedGrammar(g, gens)


def _context_cospan(iface: Interface, step: Step) -> StructuredCospan:
    """The untouched context of a step as a cospan LRk -> d <- L0."""
    n = iface.R_apply(step.rule.mid)
    return StructuredCospan(
        iface, n, 0, step.d, step.k_to_d, _bang(iface, step.d)
    )


def derivation_to_square(lifted: LiftedGrammar, d: Derivation) -> SquareRep:
    """Replay a derivation between closed systems as a single square.

    Each step is the generator square glued onto the identity square of its
    context; steps are stacked vertically (transporting along the row isos
    that relate each recomputed pushout to the stored host).
    """
    iface = lifted.grammar.interface
    start = StructuredCospan(
        iface, 0, 0, d.start, _bang(iface, d.start), _bang(iface, d.start)
    )
    if not d.steps:
        return v_identity_square(start)
    acc: SquareRep | None = None
    for st in d.steps:
        gen = lifted.generators[st.rule.name]
        ctx = v_identity_square(_context_cospan(iface, st), fine=True)
        sq = h_compose(gen, ctx)
        acc = sq if acc is None else _must(v_compose_up_to_iso(acc, sq))
    # align the outermost rows with the derivation's endpoints
    top_iso = cospan_iso_search(acc.top, start)
    end = StructuredCospan(iface, 0, 0, d.end, _bang(iface, d.end), _bang(iface, d.end))
    bot_iso = cospan_iso_search(acc.bot, end)
    if top_iso is None or bot_iso is None:
        raise AssertionError("replayed square does not match the derivation endpoints")
    from dataclasses import replace

    return check_square(replace(
        acc,
        top=start,
        bot=end,
        up=acc.up.then(top_iso.apex_map),
        down=acc.down.then(bot_iso.apex_map),
    ))


def _must(s: SquareRep | None) -> SquareRep:
    if s is None:
        raise AssertionError("steps of a derivation should always stack")
    return s


def square_search(
    lifted: LiftedGrammar, g: Presheaf, h: Presheaf, max_depth: int
) -> SquareRep | None:
    """A square witnessing g => ... => h between closed systems, if any."""
    from .rewriting import derivation_search

    d = derivation_search(lifted.grammar, g, h, max_depth)
    if d is None:
        return None
    return derivation_to_square(lifted, d)


def _span_iso(r1: Rule, r2: Rule) -> bool:
    """Rules as abstract spans: isos of all three objects commuting with legs."""
    if (r1.kind != r2.kind):
        return False
    for p, q in ((r1.left, r2.left), (r1.mid, r2.mid), (r1.right, r2.right)):
        if canonical_key(p) != canonical_key(q):
            return False
    isos_l = [m for m in hom_enumerate(r1.left, r2.left, monic_only=True) if m.is_iso()]
    isos_r = [m for m in hom_enumerate(r1.right, r2.right, monic_only=True) if m.is_iso()]
    for im in (m for m in hom_enumerate(r1.mid, r2.mid, monic_only=True) if m.is_iso()):
        want_l = r1.leg_l
        want_r = r1.leg_r
        if any(im.then(r2.leg_l) == want_l.then(il) for il in isos_l) and any(
            im.then(r2.leg_r) == want_r.then(ir) for ir in isos_r
        ):
            return True
    return False


def derived_closure_step(g: Grammar, bounds: dict[str, int]) -> Grammar:
    """Add every derived rule obtainable on hosts within bounds.

    A step l <- k -> r applied inside a host gives the derived span
    g <- d -> h; the closure is idempotent relative to the bound.
    """
    new_rules = list(g.rules)
    for host in enumerate_hosts(g.interface, bounds):
        for st in one_step(g, host):
            cand = Rule(
                f"derived-{len(new_rules)}",
                st.match.target,
                st.d,
                st.result,
                st.d_to_g,
                st.d_to_h,
                st.rule.kind,
            )
            if not any(_span_iso(cand, old) for old in new_rules):
                new_rules.append(cand)
    return Grammar(g.interface, tuple(new_rules), g.monic_matches)


@dataclass(frozen=True)
class Cut:
    """A separating cut of a closed system: interface-sort elements shared
    between the two sides, plus a side for every other element."""

    members: tuple[int, ...]
    sides: dict[str, tuple[str, ...]]  # "L" | "R" | "C" per element


def _cut_closure(iface: Interface, apex: Presheaf, members: tuple[int, ...]) -> dict[str, set[int]]:
    """All elements generated by the cut: images of the representable maps."""
    homs, _ = iface._representable
    out = {s: set() for s in iface.schema.sorts}
    for c in members:
        for s in iface.schema.sorts:
            for h in homs[s]:
                out[s].add(c if h is None else apex.apply(h, c))
    return out


def _side_members(apex: Presheaf, sides: dict[str, tuple[str, ...]], which: str) -> Subobject:
    return Subobject(apex, {
        s: tuple(sorted(e for e in apex.elements(s) if sides[s][e] in (which, "C")))
        for s in apex.schema.sorts
    })


def decompose_closed(c: StructuredCospan, cut: Cut) -> tuple[StructuredCospan, StructuredCospan]:
    """Split a closed system along a separating cut; composing the halves
    over the cut recovers the system up to iso."""
    if c.left_foot or c.right_foot:
        raise NotClosed("decomposition needs empty feet")
    iface = c.interface
    apex = c.apex
    closure = _cut_closure(iface, apex, cut.members)
    sort = iface.interface_sort
    for s in iface.schema.sorts:
        if len(cut.sides.get(s, ())) != apex.size(s):
            raise SeparationViolation(f"side table for sort {s!r} has wrong length")
        for e in apex.elements(s):
            tag = cut.sides[s][e]
            if (tag == "C") != (e in closure[s]):
                raise SeparationViolation(
                    f"element {s}:{e} tagged {tag!r} but cut closure says otherwise"
                )
    for a in iface.schema.arrows:
        for e in apex.elements(a.src):
            tag = cut.sides[a.src][e]
            if tag == "C":
                continue
            tgt_tag = cut.sides[a.dst][apex.apply(a.name, e)]
            if tgt_tag not in (tag, "C"):
                raise SeparationViolation(
                    f"{a.name} sends {a.src}:{e} ({tag}) across the cut to ({tgt_tag})"
                )
    halves = []
    for which in ("L", "R"):
        sub = _side_members(apex, cut.sides, which)
        dom = sub.domain()
        pos = {v: i for i, v in enumerate(sub.members[sort])}
        images = [pos[m] for m in cut.members]
        if which == "L":
            halves.append(open_graph(iface, dom, [], images))
        else:
            halves.append(open_graph(iface, dom, images, []))
    return halves[0], halves[1]
