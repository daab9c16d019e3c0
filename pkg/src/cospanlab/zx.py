"""ZX-calculus diagrams as typed open graphs, with a DPO rule pack.

A diagram is a structured cospan of graphs plus a node typing into
{white, black, yellow, green(phase), red(phase)}; every edge must touch a
white node, and the feet land on white nodes.  The typing is symbolic —
the type graph has a continuum of colored nodes, so it is never
materialized.  Phases are exact rationals in units of pi.  Rules apply
through the plain DPO engine on the apex with the feet held fixed; the
spider rule is an arity family instantiated lazily at each matched site.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .adjunction import graph_interface
from .cospans import StructuredCospan, open_graph
from .presheaf import Morphism, Presheaf, canonical_key, check_morphism, graph, hom_enumerate
from .colimits import pushout, pushout_complement
from .rewriting import Rule, Step, apply_rule
from .schema import GRAPH


class ArityMismatch(ValueError):
    pass


class ZXValidationError(ValueError):
    pass


@dataclass(frozen=True)
class Phase:
    """An exact phase q*pi with q rational, normalized into [-1, 1)."""

    value: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "value", (Fraction(self.value) + 1) % 2 - 1)

    def __add__(self, other: Phase) -> Phase:
        return Phase(self.value + other.value)

    def __neg__(self) -> Phase:
        return Phase(-self.value)

    def __str__(self) -> str:
        return str(self.value)


ZERO = Phase(Fraction(0))
PI = Phase(Fraction(1))


def phase_add(p: Phase, q: Phase) -> Phase:
    return p + q


@dataclass(frozen=True)
class NodeType:
    tag: str  # white | black | yellow | green | red
    phase: Phase | None = None

    def __post_init__(self) -> None:
        if self.tag in ("green", "red"):
            if self.phase is None:
                raise ZXValidationError(f"{self.tag} node needs a phase")
        elif self.phase is not None:
            raise ZXValidationError(f"{self.tag} node cannot carry a phase")

    @property
    def is_white(self) -> bool:
        return self.tag == "white"


WHITE = NodeType("white")
BLACK = NodeType("black")
YELLOW = NodeType("yellow")


def green(p: Phase | Fraction | int = 0) -> NodeType:
    return NodeType("green", p if isinstance(p, Phase) else Phase(Fraction(p)))


def red(p: Phase | Fraction | int = 0) -> NodeType:
    return NodeType("red", p if isinstance(p, Phase) else Phase(Fraction(p)))


@dataclass(frozen=True)
class ZXDiagram:
    cospan: StructuredCospan
    types: tuple[NodeType, ...]

    def key(self) -> tuple:
        """Canonical form: the cospan key with types painted as base colors."""
        c = self.cospan
        left, right = c.leg_images()
        base: dict[tuple[str, int], tuple] = {}
        for v, t in enumerate(self.types):
            base[("n", v)] = (("T", t.tag, None if t.phase is None else t.phase.value),)
        for j, e in enumerate(left):
            base[("n", e)] = base[("n", e)] + (("L", j),)
        for j, e in enumerate(right):
            base[("n", e)] = base[("n", e)] + (("R", j),)
        return (c.left_foot, c.right_foot, canonical_key(c.apex, base))


def validate_zx(d: ZXDiagram) -> list[str]:
    report = []
    apex = d.cospan.apex
    if apex.schema.name != GRAPH.name:
        return ["apex is not a graph"]
    if len(d.types) != apex.size("n"):
        return ["one type per node required"]
    for e in apex.elements("e"):
        u, v = apex.apply("s", e), apex.apply("t", e)
        if not (d.types[u].is_white or d.types[v].is_white):
            report.append(f"edge {e} connects two colored nodes")
    for images in d.cospan.leg_images():
        for v in images:
            if not d.types[v].is_white:
                report.append(f"foot lands on colored node {v}")
    return report


def check_zx(d: ZXDiagram) -> ZXDiagram:
    report = validate_zx(d)
    if report:
        raise ZXValidationError("; ".join(report))
    return d


def _diagram(apex: Presheaf, types: list[NodeType], left: list[int], right: list[int]) -> ZXDiagram:
    return check_zx(ZXDiagram(open_graph(graph_interface(), apex, left, right), tuple(types)))


def generator(kind: str, n: int, m: int, phase: Phase | Fraction | int = 0) -> ZXDiagram:
    """The basic diagrams, drawn with edges flowing inputs -> center -> outputs."""
    ph = phase if isinstance(phase, Phase) else Phase(Fraction(phase))

    def expect(en: int | None, em: int | None) -> None:
        if (en is not None and n != en) or (em is not None and m != em):
            raise ArityMismatch(f"{kind} cannot have arity ({n}, {m})")

    if kind == "wire":
        expect(1, 1)
        return _diagram(graph(2, [(0, 1)]), [WHITE, WHITE], [0], [1])
    if kind in ("green", "red"):
        center = NodeType(kind, ph)
        edges = [(i, n + m) for i in range(n)] + [(n + m, n + i) for i in range(m)]
        return _diagram(
            graph(n + m + 1, edges),
            [WHITE] * (n + m) + [center],
            list(range(n)),
            [n + i for i in range(m)],
        )
    if kind == "hadamard":
        expect(1, 1)
        return _diagram(graph(3, [(0, 2), (2, 1)]), [WHITE, WHITE, YELLOW], [0], [1])
    if kind == "diamond":
        expect(0, 0)
        return _diagram(graph(1, []), [BLACK], [], [])
    if kind == "cup":
        expect(None, 0)
        edges = [(i, n) for i in range(n)]
        return _diagram(graph(n + 1, edges), [WHITE] * (n + 1), list(range(n)), [])
    if kind == "cap":
        expect(0, None)
        edges = [(m, i) for i in range(m)]
        return _diagram(graph(m + 1, edges), [WHITE] * (m + 1), [], list(range(m)))
    if kind == "braid":
        expect(2, 2)
        return _diagram(
            graph(4, [(0, 3), (1, 2)]), [WHITE] * 4, [0, 1], [2, 3]
        )
    if kind == "multiplication":
        expect(2, 1)
        return _diagram(graph(1, []), [WHITE], [0, 0], [0])
    if kind == "comultiplication":
        expect(1, 2)
        return _diagram(graph(1, []), [WHITE], [0], [0, 0])
    if kind == "unit":
        expect(0, 1)
        return _diagram(graph(1, []), [WHITE], [], [0])
    if kind == "counit":
        expect(1, 0)
        return _diagram(graph(1, []), [WHITE], [0], [])
    raise ArityMismatch(f"unknown generator kind {kind!r}")


def dagger(d: ZXDiagram) -> ZXDiagram:
    """Swap feet, reverse edge flow, negate spider phases."""
    apex = d.cospan.apex
    flipped = Presheaf(
        apex.schema,
        dict(apex.carriers),
        {"s": apex.action["t"], "t": apex.action["s"]},
    )
    c = d.cospan
    new = StructuredCospan(
        c.interface, c.right_foot, c.left_foot, flipped,
        Morphism(c.right_leg.source, flipped, c.right_leg.components),
        Morphism(c.left_leg.source, flipped, c.left_leg.components),
    )
    types = tuple(
        NodeType(t.tag, -t.phase) if t.phase is not None else t for t in d.types
    )
    return ZXDiagram(new, types)


def zx_compose(d1: ZXDiagram, d2: ZXDiagram) -> ZXDiagram:
    po = pushout(d1.cospan.right_leg, d2.cospan.left_leg)
    c = StructuredCospan(
        d1.cospan.interface, d1.cospan.left_foot, d2.cospan.right_foot, po.apex,
        d1.cospan.left_leg.then(po.left), d2.cospan.right_leg.then(po.right),
    )
    types: list[NodeType | None] = [None] * po.apex.size("n")
    for v in d2.cospan.apex.elements("n"):
        types[po.right("n", v)] = d2.types[v]
    for v in d1.cospan.apex.elements("n"):
        types[po.left("n", v)] = d1.types[v]
    return check_zx(ZXDiagram(c, tuple(types)))


def zx_tensor(d1: ZXDiagram, d2: ZXDiagram) -> ZXDiagram:
    from .cospans import tensor

    return check_zx(ZXDiagram(tensor(d1.cospan, d2.cospan), d1.types + d2.types))


# -- rules -----------------------------------------------------------------


@dataclass(frozen=True)
class ZXRuleInstance:
    """A concrete typed DPO rule at a specific match site."""

    rule: Rule
    match: Morphism
    right_types: tuple[NodeType, ...]


@dataclass(frozen=True)
class ZXRuleSchema:
    """A rule with concrete shapes; phases may be variables bound at match time."""

    name: str
    kind: str
    left: Presheaf
    mid: Presheaf
    right: Presheaf
    leg_l: Morphism
    leg_r: Morphism
    left_types: tuple  # NodeType or (tag, varname)
    right_types: tuple  # NodeType or (tag, expr)

    def instances(self, d: ZXDiagram) -> list[ZXRuleInstance]:
        out = []
        for m in hom_enumerate(self.left, d.cospan.apex, monic_only=True):
            env: dict[str, Phase] = {}
            if not all(
                _pat_match(self.left_types[v], d.types[m("n", v)], env)
                for v in self.left.elements("n")
            ):
                continue
            rt = tuple(_pat_eval(t, env) for t in self.right_types)
            rule = Rule(self.name, self.left, self.mid, self.right,
                        self.leg_l, self.leg_r, self.kind)
            out.append(ZXRuleInstance(rule, m, rt))
        return out

    def reversed(self) -> ZXRuleSchema:
        if any(isinstance(t, tuple) for t in self.left_types + self.right_types):
            raise ZXValidationError(
                f"cannot reverse rule {self.name!r}: phase variables are one-way"
            )
        return ZXRuleSchema(
            self.name + "^-1", self.kind, self.right, self.mid, self.left,
            self.leg_r, self.leg_l, self.right_types, self.left_types,
        )


def _pat_match(pat, actual: NodeType, env: dict[str, Phase]) -> bool:
    if isinstance(pat, NodeType):
        return pat == actual
    tag, var = pat
    if actual.tag != tag or actual.phase is None:
        return False
    if var in env:
        return env[var] == actual.phase
    env[var] = actual.phase
    return True


def _pat_eval(pat, env: dict[str, Phase]) -> NodeType:
    if isinstance(pat, NodeType):
        return pat
    tag, expr = pat
    return NodeType(tag, _phase_expr(expr, env))


def _phase_expr(expr: str, env: dict[str, Phase]) -> Phase:
    """Sums of variables and rational constants: "a+b", "-a", "a+1/2"."""
    total = Phase(Fraction(0))
    for sign, term in _terms(expr):
        p = env[term] if term in env else Phase(Fraction(term))
        total = total + (-p if sign == "-" else p)
    return total


def _terms(expr: str):
    expr = expr.replace(" ", "")
    sign = "+"
    buf = ""
    for ch in expr:
        if ch in "+-" and buf:
            yield sign, buf
            sign, buf = ch, ""
        elif ch in "+-":
            sign = "-" if (sign == "-") != (ch == "-") else "+"
        else:
            buf += ch
    if buf:
        yield sign, buf


class SpiderFuse:
    """Two same-color spiders joined through white nodes fuse, adding phases.

    An arity family: the concrete rule is built from each matched site (the
    connecting whites are deleted, the centers merged, boundary wires kept).
    """

    name = "spider-fuse"

    def instances(self, d: ZXDiagram) -> list[ZXRuleInstance]:
        apex = d.cospan.apex
        incident: dict[int, list[tuple[int, int, int]]] = {}
        for e in apex.elements("e"):
            u, v = apex.apply("s", e), apex.apply("t", e)
            incident.setdefault(u, []).append((e, u, v))
            if v != u:
                incident.setdefault(v, []).append((e, u, v))
        centers = [v for v in apex.elements("n") if d.types[v].tag in ("green", "red")]
        legs = set(itertools.chain(*d.cospan.leg_images()))
        out = []
        for c1, c2 in itertools.combinations(centers, 2):
            if d.types[c1].tag != d.types[c2].tag:
                continue
            between = [
                w for w in apex.elements("n")
                if d.types[w].is_white and w not in legs
                and len(incident.get(w, ())) == 2
                and {c1, c2} == {
                    (u if u != w else v) for (_, u, v) in incident[w]
                }
            ]
            if not between:
                continue
            out.append(self._site(d, c1, c2, tuple(between), incident))
        return out

    def _site(self, d, c1, c2, between, incident) -> ZXRuleInstance:
        apex = d.cospan.apex
        site_edges = sorted({e for c in (c1, c2) for (e, _, _) in incident.get(c, ())})
        boundary = sorted({
            (u if u not in (c1, c2) else v)
            for e in site_edges
            for (u, v) in [(apex.apply("s", e), apex.apply("t", e))]
            if (u in (c1, c2)) != (v in (c1, c2))
        } - set(between))
        nodes = boundary + [c1, c2] + list(between)
        n_idx = {v: i for i, v in enumerate(nodes)}
        l_edges = [(n_idx[apex.apply("s", e)], n_idx[apex.apply("t", e)]) for e in site_edges]
        left = graph(len(nodes), l_edges)
        mid = graph(len(boundary), [])
        leg_l = check_morphism(Morphism(mid, left, {
            "n": tuple(range(len(boundary))), "e": ()
        }))
        # the fused center replaces both old ones; boundary wires re-attach
        fused = len(boundary)
        r_edges = []
        for e in site_edges:
            u, v = apex.apply("s", e), apex.apply("t", e)
            if u in (c1, c2) and v in (c1, c2):
                continue
            if u in between or v in between:
                continue
            r_edges.append((
                fused if u in (c1, c2) else boundary.index(u),
                fused if v in (c1, c2) else boundary.index(v),
            ))
        right = graph(len(boundary) + 1, r_edges)
        leg_r = check_morphism(Morphism(mid, right, {
            "n": tuple(range(len(boundary))), "e": ()
        }))
        rule = Rule(self.name, left, mid, right, leg_l, leg_r, "bold")
        match = check_morphism(Morphism(left, apex, {
            "n": tuple(nodes), "e": tuple(site_edges)
        }))
        t1, t2 = d.types[c1], d.types[c2]
        rt = tuple(WHITE for _ in boundary) + (NodeType(t1.tag, t1.phase + t2.phase),)
        return ZXRuleInstance(rule, match, rt)


def _schema(name, kind, l_nodes, l_edges, k_count, r_nodes, r_edges,
            leg_l_nodes, leg_r_nodes) -> ZXRuleSchema:
    left = graph(len(l_nodes), l_edges)
    mid = graph(k_count, [])
    right = graph(len(r_nodes), r_edges)
    leg_l = check_morphism(Morphism(mid, left, {"n": tuple(leg_l_nodes), "e": ()}))
    leg_r = check_morphism(Morphism(mid, right, {"n": tuple(leg_r_nodes), "e": ()}))
    return ZXRuleSchema(name, kind, left, mid, right, leg_l, leg_r,
                        tuple(l_nodes), tuple(r_nodes))


def builtin_rules() -> list:
    """The certified pack: spider fusion, cup, wire, and trivial spider."""
    wire = _schema(
        "wire", "bold",
        [WHITE, WHITE], [(0, 1)], 2,
        [WHITE], [],
        [0, 1], [0, 0],
    )
    cup = _schema(
        "cup", "fine",
        [WHITE, WHITE, green(0)], [(0, 2), (1, 2)], 2,
        [WHITE, WHITE, WHITE], [(0, 2), (1, 2)],
        [0, 1], [0, 1],
    )
    trivial = _schema(
        "trivial-spider", "fine",
        [WHITE, WHITE, green(0)], [(0, 2), (2, 1)], 2,
        [WHITE, WHITE], [(0, 1)],
        [0, 1], [0, 1],
    )
    return [SpiderFuse(), cup, wire, trivial]


def load_rule_pack(path: str | Path) -> list[ZXRuleSchema]:
    """Rule packs are JSON arrays: nodes carry type tags, spiders may use
    phase variables on the left and phase expressions on the right."""
    data = json.loads(Path(path).read_text())
    if not isinstance(data, list):
        raise ZXValidationError("rule pack must be a JSON array")
    packs = []
    for entry in data:
        try:
            packs.append(_schema(
                entry["name"], entry.get("kind", "bold"),
                [_decode_type(t) for t in entry["l"]["nodes"]],
                [tuple(e) for e in entry["l"]["edges"]],
                entry["k"],
                [_decode_type(t) for t in entry["r"]["nodes"]],
                [tuple(e) for e in entry["r"]["edges"]],
                entry["leg_l"], entry["leg_r"],
            ))
        except (KeyError, TypeError, ValueError) as exc:
            raise ZXValidationError(f"bad rule entry: {exc}") from exc
    return packs


def _decode_type(t):
    if isinstance(t, str):
        if t in ("white", "black", "yellow"):
            return NodeType(t)
        raise ZXValidationError(f"unknown node type {t!r}")
    (tag, val), = t.items()
    if tag not in ("green", "red"):
        raise ZXValidationError(f"unknown node type {tag!r}")
    try:
        return NodeType(tag, Phase(Fraction(val)))
    except ValueError:
        return (tag, val)  # phase variable or expression


@dataclass(frozen=True)
class ZXStep:
    rule_name: str
    step: Step
    result: ZXDiagram


@dataclass(frozen=True)
class ZXDerivation:
    start: ZXDiagram
    end: ZXDiagram
    steps: tuple[ZXStep, ...]


def _apply_instance(d: ZXDiagram, inst: ZXRuleInstance) -> list[ZXStep]:
    from .colimits import enumerate_complements

    if inst.rule.leg_l.is_mono():
        comp = pushout_complement(inst.rule.leg_l, inst.match)
        complements = [] if comp is None else [comp]
    else:
        complements = enumerate_complements(inst.rule.leg_l, inst.match)
    out = []
    for comp in complements:
        # feet are held fixed: both legs must factor through the complement
        g_to_d = {
            s: {comp.d_to_g(s, i): i for i in comp.d.elements(s)} for s in ("n", "e")
        }
        c = d.cospan
        if any(
            v not in g_to_d["n"] for images in c.leg_images() for v in images
        ):
            continue
        st = apply_rule(inst.rule, inst.match, comp)
        legs = []
        for leg in (c.left_leg, c.right_leg):
            comps = {
                s: tuple(
                    st.d_to_h(s, g_to_d[s][leg(s, j)]) for j in leg.source.elements(s)
                )
                for s in ("n", "e")
            }
            legs.append(check_morphism(Morphism(leg.source, st.result, comps)))
        new_cospan = StructuredCospan(
            c.interface, c.left_foot, c.right_foot, st.result, legs[0], legs[1]
        )
        types: list[NodeType | None] = [None] * st.result.size("n")
        for v in comp.d.elements("n"):
            types[st.d_to_h("n", v)] = d.types[comp.d_to_g("n", v)]
        for v in inst.rule.right.elements("n"):
            types[st.comatch("n", v)] = inst.right_types[v]
        new = ZXDiagram(new_cospan, tuple(types))
        if not validate_zx(new):
            out.append(ZXStep(inst.rule.name, st, new))
    return out


def zx_one_step(d: ZXDiagram, pack: list | None = None) -> list[ZXStep]:
    """All successor diagrams, one per typed iso class."""
    pack = builtin_rules() if pack is None else pack
    out = []
    seen = set()
    for schema in pack:
        for inst in schema.instances(d):
            for res in _apply_instance(d, inst):
                key = res.result.key()
                if key not in seen:
                    seen.add(key)
                    out.append(res)
    return out


def zx_apply(d: ZXDiagram, pack: list | None = None, rule: str | None = None,
             index: int = 0) -> ZXDerivation:
    """Apply one rule instance (the index-th, optionally filtered by name)."""
    pack = builtin_rules() if pack is None else pack
    steps = [
        st
        for schema in pack
        if rule is None or schema.name == rule
        for inst in schema.instances(d)
        for st in _apply_instance(d, inst)
    ]
    if index >= len(steps):
        raise IndexError(f"only {len(steps)} applicable instances")
    st = steps[index]
    return ZXDerivation(d, st.result, (st,))


def zx_simplify(
    d: ZXDiagram,
    pack: list | None = None,
    strategy: str = "exhaustive-bfs",
    budget: int = 6,
) -> ZXDerivation:
    """Reduce a diagram; returns the smallest representative reached."""
    pack = builtin_rules() if pack is None else pack
    if strategy == "first-match":
        steps = []
        cur = d
        for _ in range(budget):
            nxt = zx_one_step(cur, pack)
            if not nxt:
                break
            steps.append(nxt[0])
            cur = nxt[0].result
        return ZXDerivation(d, cur, tuple(steps))
    if strategy != "exhaustive-bfs":
        raise ValueError(f"unknown strategy {strategy!r}")
    best = (d.cospan.apex.total_size(), d, ())
    frontier = [(d, ())]
    visited = {d.key()}
    for _ in range(budget):
        nxt = []
        for cur, path in frontier:
            for st in zx_one_step(cur, pack):
                key = st.result.key()
                if key in visited:
                    continue
                visited.add(key)
                cand = (st.result.cospan.apex.total_size(), st.result, path + (st,))
                if cand[0] < best[0]:
                    best = cand
                nxt.append((st.result, path + (st,)))
        frontier = nxt
        if not frontier:
            break
    return ZXDerivation(d, best[1], best[2])


def decat_equal(d1: ZXDiagram, d2: ZXDiagram, budget: int = 4) -> bool:
    """Equality modulo the rules: a bounded semi-decision.

    First both diagrams are reduced forwards and every key reached on
    either side is compared.  Failing that, a short zig-zag phase also
    applies reversible rules backwards, capped so diagrams cannot grow
    past the larger input (plus slack), and looks for a common key.
    """
    if (d1.cospan.left_foot, d1.cospan.right_foot) != (
        d2.cospan.left_foot,
        d2.cospan.right_foot,
    ):
        return False
    pack = builtin_rules()
    seen1, seen2 = {d1.key()}, {d2.key()}
    front1, front2 = [d1], [d2]
    for _ in range(budget):
        if seen1 & seen2:
            return True
        for seen, front in ((seen1, front1), (seen2, front2)):
            nxt = []
            for cur in front:
                for st in zx_one_step(cur, pack):
                    key = st.result.key()
                    if key not in seen:
                        seen.add(key)
                        nxt.append(st.result)
            front[:] = nxt
    if seen1 & seen2:
        return True
    both_ways = list(pack)
    for schema in pack:
        try:
            both_ways.append(schema.reversed())
        except (AttributeError, ZXValidationError):
            pass
    cap = max(d1.cospan.apex.total_size(), d2.cospan.apex.total_size()) + 2
    front1, front2 = [d1], [d2]
    for _ in range(budget):
        for seen, front in ((seen1, front1), (seen2, front2)):
            nxt = []
            for cur in front:
                for st in zx_one_step(cur, both_ways):
                    if st.result.cospan.apex.total_size() > cap:
                        continue
                    key = st.result.key()
                    if key not in seen:
                        seen.add(key)
                        nxt.append(st.result)
            front[:] = nxt
        if seen1 & seen2:
            return True
        if not front1 and not front2:
            return False
    return False
