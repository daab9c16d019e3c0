"""Double-pushout rewriting on presheaves.

A rule is a span ``l <- k -> r``; applying it at a match ``m: l -> g``
removes the matched copy of ``l`` (pushout complement along the left leg)
and glues in ``r`` (pushout along the right leg).  Grammars bundle named
rules; the rewrite relation is explored breadth-first with a canonical-key
visited set.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .adjunction import Interface
from .colimits import (
    Complement,
    coproduct,
    enumerate_complements,
    pushout,
    pushout_complement,
)
from .presheaf import (
    Morphism,
    Presheaf,
    SchemaMismatch,
    canonical_key,
    check_morphism,
    hom_enumerate,
    iso_search,
)


class GluingViolation(ValueError):
    pass


class AmbiguousComplement(ValueError):
    pass


@dataclass(frozen=True)
class Rule:
    name: str
    left: Presheaf
    mid: Presheaf
    right: Presheaf
    leg_l: Morphism
    leg_r: Morphism
    kind: str = "fine"

    def __post_init__(self) -> None:
        if self.kind not in ("fine", "bold"):
            raise ValueError(f"unknown rule kind {self.kind!r}")
        if self.leg_l.source != self.mid or self.leg_l.target != self.left:
            raise ValueError("left leg must map mid -> left")
        if self.leg_r.source != self.mid or self.leg_r.target != self.right:
            raise ValueError("right leg must map mid -> right")
        check_morphism(self.leg_l)
        check_morphism(self.leg_r)
        if self.kind == "fine" and not (self.leg_l.is_mono() and self.leg_r.is_mono()):
            raise ValueError("fine rules need monic legs")

    def inverse(self) -> Rule:
        return Rule(self.name + "^-1", self.right, self.mid, self.left, self.leg_r, self.leg_l, self.kind)


@dataclass(frozen=True)
class Grammar:
    interface: Interface
    rules: tuple[Rule, ...]
    monic_matches: bool = False

    def __post_init__(self) -> None:
        names = [r.name for r in self.rules]
        if len(set(names)) != len(names):
            raise ValueError("duplicate rule names")
        for r in self.rules:
            if r.left.schema.name != self.interface.schema.name:
                raise SchemaMismatch(f"rule {r.name!r} not on the workspace schema")

    def rule(self, name: str) -> Rule:
        for r in self.rules:
            if r.name == name:
                return r
        raise KeyError(name)


@dataclass(frozen=True)
class Step:
    """One DPO step: the full diagram l <- k -> r over g <- d -> h."""

    rule: Rule
    match: Morphism
    d: Presheaf
    k_to_d: Morphism
    d_to_g: Morphism
    d_to_h: Morphism
    comatch: Morphism
    result: Presheaf

    def verify(self) -> bool:
        """Re-check both squares as pushouts via their universal property."""
        for leg, m_up, m_down in (
            (self.rule.leg_l, self.match, self.d_to_g),
            (self.rule.leg_r, self.comatch, self.d_to_h),
        ):
            po = pushout(leg, self.k_to_d)
            try:
                med = po.factorize(m_up, m_down)
            except Exception:
                return False
            if not med.is_iso():
                return False
        return True


@dataclass(frozen=True)
class Derivation:
    start: Presheaf
    end: Presheaf
    steps: tuple[Step, ...]

    def verify(self) -> bool:
        g = self.start
        for st in self.steps:
            if st.match.target != g or not st.verify():
                return False
            g = st.result
        return g == self.end


def _complement_ok(rule: Rule, match: Morphism) -> bool:
    if rule.leg_l.is_mono():
        return pushout_complement(rule.leg_l, match) is not None
    return bool(enumerate_complements(rule.leg_l, match))


def find_matches(rule: Rule, g: Presheaf, monic_matches: bool = False) -> list[Morphism]:
    if rule.left.schema.name != g.schema.name:
        raise SchemaMismatch(f"{rule.left.schema.name} vs {g.schema.name}")
    return [m for m in hom_enumerate(rule.left, g, monic_only=monic_matches) if _complement_ok(rule, m)]


def apply_rule(rule: Rule, match: Morphism, complement: Complement | None = None) -> Step:
    if complement is None:
        if rule.leg_l.is_mono():
            complement = pushout_complement(rule.leg_l, match)
            if complement is None:
                raise GluingViolation(f"no pushout complement for rule {rule.name!r} at this match")
        else:
            comps = enumerate_complements(rule.leg_l, match)
            if not comps:
                raise GluingViolation(f"no pushout complement for rule {rule.name!r} at this match")
            if len(comps) > 1:
                raise AmbiguousComplement(
                    f"rule {rule.name!r}: {len(comps)} complement classes; pass one explicitly"
                )
            complement = comps[0]
    po = pushout(rule.leg_r, complement.k_to_d)
    step = Step(
        rule=rule,
        match=match,
        d=complement.d,
        k_to_d=complement.k_to_d,
        d_to_g=complement.d_to_g,
        d_to_h=po.right,
        comatch=po.left,
        result=po.apex,
    )
    assert step.verify()
    return step


def one_step(grammar: Grammar, g: Presheaf) -> list[Step]:
    """All successors over all rules and matches, one per successor iso class."""
    out: list[Step] = []
    seen: set[tuple] = set()
    for rule in grammar.rules:
        for m in find_matches(rule, g, grammar.monic_matches):
            try:
                step = apply_rule(rule, m)
            except AmbiguousComplement:
                for comp in enumerate_complements(rule.leg_l, m):
                    step = apply_rule(rule, m, comp)
                    key = canonical_key(step.result)
                    if key not in seen:
                        seen.add(key)
                        out.append(step)
                continue
            key = canonical_key(step.result)
            if key not in seen:
                seen.add(key)
                out.append(step)
    return out


def derivation_search(
    grammar: Grammar, g: Presheaf, h: Presheaf, max_depth: int
) -> Derivation | None:
    """Shortest derivation g => ... => h (endpoint compared up to iso)."""
    target_key = canonical_key(h)
    if canonical_key(g) == target_key:
        return Derivation(g, g, ())
    frontier: deque[tuple[Presheaf, tuple[Step, ...]]] = deque([(g, ())])
    visited = {canonical_key(g)}
    depth = 0
    while frontier and depth < max_depth:
        depth += 1
        for _ in range(len(frontier)):
            cur, path = frontier.popleft()
            for step in one_step(grammar, cur):
                key = canonical_key(step.result)
                if key in visited:
                    continue
                visited.add(key)
                if key == target_key:
                    return Derivation(g, step.result, path + (step,))
                frontier.append((step.result, path + (step,)))
    return None


def concat_derivations(d1: Derivation, d2: Derivation) -> Derivation:
    """Run d1 on the left summand of start1 + start2, then d2 on the right.

    Each standalone step is replayed on the combined host; the embeddings of
    both summands into the evolving host are carried along — the untouched
    side by factoring through the complement, the rewritten side via the
    universal property of its own right-hand pushout square.
    """
    apex, inl, inr = coproduct(d1.start, d2.start)
    steps: list[Step] = []
    embs = [inl, inr]
    for side, deriv in ((0, d1), (1, d2)):
        for st in deriv.steps:
            new = apply_rule(st.rule, st.match.then(embs[side]))
            d_in_h = _transport(st.d_to_g.then(embs[side]), new)
            po = pushout(st.rule.leg_r, st.k_to_d)  # standalone right square, same apex as st.result
            embs[side] = po.factorize(new.comatch, d_in_h)
            embs[1 - side] = _transport(embs[1 - side], new)
            steps.append(new)
    g = steps[-1].result if steps else apex
    return Derivation(apex, g, tuple(steps))


def _transport(emb: Morphism, step: Step) -> Morphism:
    """Push a summand embedding through one rewrite of the other summand.

    The embedded part is untouched by the step, so it factors through d and
    then maps forward into the result.
    """
    comps = {}
    inv = {
        s: {step.d_to_g.components[s][i]: i for i in range(step.d.size(s))}
        for s in emb.source.schema.sorts
    }
    for s in emb.source.schema.sorts:
        col = []
        for e in emb.source.elements(s):
            img = emb.components[s][e]
            if img not in inv[s]:
                raise GluingViolation("summand was touched by a step on the other side")
            col.append(step.d_to_h.components[s][inv[s][img]])
        comps[s] = tuple(col)
    return check_morphism(Morphism(emb.source, step.result, comps))
