"""Canonical JSON encodings for every domain type.

All serializers emit plain dict/list trees; ``canonical_dumps`` renders
them with sorted keys and no insignificant whitespace so files diff
stably.  Decoders validate and raise ``ParseError`` with a human-readable
detail on malformed input.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .adjunction import Interface
from .cospans import StructuredCospan, open_graph
from .presheaf import Morphism, Presheaf, check_morphism, validate_presheaf
from .rewriting import Derivation, Grammar, Rule, Step
from .schema import GRAPH, RGRAPH, SET, Arrow, Schema
from .squares import SquareRep, VerticalArrow, check_square
from .zx import NodeType, Phase, ZXDiagram, check_zx

BUILTIN_SCHEMAS = {s.name: s for s in (SET, GRAPH, RGRAPH)}


class ParseError(ValueError):
    pass


def canonical_dumps(tree: Any) -> str:
    return json.dumps(tree, sort_keys=True, separators=(",", ":"))


def _field(obj: dict, key: str, kind=None):
    if not isinstance(obj, dict) or key not in obj:
        raise ParseError(f"missing field {key!r}")
    val = obj[key]
    if kind is not None and not isinstance(val, kind):
        raise ParseError(f"field {key!r} has the wrong shape")
    return val


# -- schemas, presheaves, morphisms ----------------------------------------


def encode_schema(s: Schema) -> dict:
    return {
        "sorts": list(s.sorts),
        "arrows": [{"name": a.name, "src": a.src, "dst": a.dst} for a in s.arrows],
        "comp": [[f, g, h] for (f, g), h in sorted(s.compositions.items())],
    }


def decode_schema(tree) -> Schema:
    if isinstance(tree, str):
        if tree not in BUILTIN_SCHEMAS:
            raise ParseError(f"unknown schema {tree!r}")
        return BUILTIN_SCHEMAS[tree]
    return Schema(
        tuple(_field(tree, "sorts", list)),
        tuple(
            Arrow(_field(a, "name"), _field(a, "src"), _field(a, "dst"))
            for a in _field(tree, "arrows", list)
        ),
        {(f, g): h for f, g, h in _field(tree, "comp", list)},
    )


def encode_presheaf(p: Presheaf) -> dict:
    return {
        "schema": p.schema.name if p.schema.name in BUILTIN_SCHEMAS else encode_schema(p.schema),
        "carriers": dict(p.carriers),
        "action": {a: list(t) for a, t in p.action.items()},
    }


def decode_presheaf(tree) -> Presheaf:
    schema = decode_schema(_field(tree, "schema"))
    p = Presheaf(
        schema,
        {s: int(n) for s, n in _field(tree, "carriers", dict).items()},
        {a: tuple(t) for a, t in _field(tree, "action", dict).items()},
    )
    report = validate_presheaf(p)
    if report:
        raise ParseError("; ".join(report))
    return p


def encode_morphism(m: Morphism) -> dict:
    return {
        "src": encode_presheaf(m.source),
        "dst": encode_presheaf(m.target),
        "components": {s: list(c) for s, c in m.components.items()},
    }


def decode_morphism(tree) -> Morphism:
    try:
        return check_morphism(Morphism(
            decode_presheaf(_field(tree, "src")),
            decode_presheaf(_field(tree, "dst")),
            {s: tuple(c) for s, c in _field(tree, "components", dict).items()},
        ))
    except ParseError:
        raise
    except Exception as exc:
        raise ParseError(f"bad morphism: {exc}") from exc


# -- cospans ---------------------------------------------------------------


def encode_cospan(c: StructuredCospan) -> dict:
    left, right = c.leg_images()
    return {
        "left_foot": c.left_foot,
        "right_foot": c.right_foot,
        "apex": encode_presheaf(c.apex),
        "left_leg": list(left),
        "right_leg": list(right),
    }


def decode_cospan(tree, iface: Interface) -> StructuredCospan:
    apex = decode_presheaf(_field(tree, "apex"))
    try:
        return open_graph(
            iface, apex,
            [int(j) for j in _field(tree, "left_leg", list)],
            [int(j) for j in _field(tree, "right_leg", list)],
        )
    except ParseError:
        raise
    except Exception as exc:
        raise ParseError(f"bad cospan: {exc}") from exc


# -- rules, grammars, derivations ------------------------------------------


def encode_rule(r: Rule) -> dict:
    return {
        "name": r.name,
        "kind": r.kind,
        "l": encode_presheaf(r.left),
        "k": encode_presheaf(r.mid),
        "r": encode_presheaf(r.right),
        "leg_l": {s: list(c) for s, c in r.leg_l.components.items()},
        "leg_r": {s: list(c) for s, c in r.leg_r.components.items()},
    }


def decode_rule(tree) -> Rule:
    left = decode_presheaf(_field(tree, "l"))
    mid = decode_presheaf(_field(tree, "k"))
    right = decode_presheaf(_field(tree, "r"))

    def leg(key, target):
        comps = {s: tuple(c) for s, c in _field(tree, key, dict).items()}
        return check_morphism(Morphism(mid, target, comps))

    try:
        return Rule(
            _field(tree, "name", str), left, mid, right,
            leg("leg_l", left), leg("leg_r", right),
            tree.get("kind", "fine"),
        )
    except ParseError:
        raise
    except Exception as exc:
        raise ParseError(f"bad rule: {exc}") from exc


def encode_grammar(g: Grammar) -> dict:
    return {
        "interface": {
            "schema": g.interface.schema.name,
            "interface_sorts": [g.interface.interface_sort],
        },
        "monic_matches": g.monic_matches,
        "rules": [encode_rule(r) for r in g.rules],
    }


def decode_grammar(tree) -> Grammar:
    iface_tree = _field(tree, "interface", dict)
    schema = decode_schema(_field(iface_tree, "schema"))
    sorts = _field(iface_tree, "interface_sorts", list)
    if len(sorts) != 1:
        raise ParseError("exactly one interface sort expected")
    try:
        return Grammar(
            Interface(schema, sorts[0]),
            tuple(decode_rule(r) for r in _field(tree, "rules", list)),
            bool(tree.get("monic_matches", False)),
        )
    except ParseError:
        raise
    except Exception as exc:
        raise ParseError(f"bad grammar: {exc}") from exc


def encode_step(st: Step) -> dict:
    return {
        "rule": st.rule.name,
        "match": {s: list(c) for s, c in st.match.components.items()},
        "d": encode_presheaf(st.d),
        "k_to_d": {s: list(c) for s, c in st.k_to_d.components.items()},
        "d_to_g": {s: list(c) for s, c in st.d_to_g.components.items()},
        "d_to_h": {s: list(c) for s, c in st.d_to_h.components.items()},
        "comatch": {s: list(c) for s, c in st.comatch.components.items()},
        "result": encode_presheaf(st.result),
    }


def encode_derivation(d: Derivation) -> dict:
    return {
        "start": encode_presheaf(d.start),
        "end": encode_presheaf(d.end),
        "steps": [encode_step(st) for st in d.steps],
    }


def decode_derivation(tree, grammar: Grammar) -> Derivation:
    start = decode_presheaf(_field(tree, "start"))
    end = decode_presheaf(_field(tree, "end"))
    steps = []
    g = start
    try:
        for st_tree in _field(tree, "steps", list):
            rule = grammar.rule(_field(st_tree, "rule", str))
            d = decode_presheaf(_field(st_tree, "d"))
            result = decode_presheaf(_field(st_tree, "result"))

            def comp(key, src, dst):
                comps = {s: tuple(c) for s, c in _field(st_tree, key, dict).items()}
                return check_morphism(Morphism(src, dst, comps))

            steps.append(Step(
                rule=rule,
                match=comp("match", rule.left, g),
                d=d,
                k_to_d=comp("k_to_d", rule.mid, d),
                d_to_g=comp("d_to_g", d, g),
                d_to_h=comp("d_to_h", d, result),
                comatch=comp("comatch", rule.right, result),
                result=result,
            ))
            g = result
    except ParseError:
        raise
    except KeyError as exc:
        raise ParseError(f"unknown rule {exc}") from exc
    except Exception as exc:
        raise ParseError(f"bad derivation step: {exc}") from exc
    deriv = Derivation(start, end, tuple(steps))
    if not deriv.verify():
        raise ParseError("derivation does not re-verify")
    return deriv


# -- squares ---------------------------------------------------------------


def _encode_vertical(v: VerticalArrow) -> dict:
    return {"top": v.top, "mid": v.mid, "bot": v.bot,
            "up": list(v.up), "down": list(v.down)}


def _decode_vertical(tree) -> VerticalArrow:
    return VerticalArrow(
        _field(tree, "top", int), _field(tree, "mid", int), _field(tree, "bot", int),
        tuple(_field(tree, "up", list)), tuple(_field(tree, "down", list)),
    )


def encode_square(s: SquareRep) -> dict:
    return {
        "rows": [encode_cospan(c) for c in (s.top, s.mid, s.bot)],
        "v_feet": [_encode_vertical(s.v_left), _encode_vertical(s.v_right)],
        "v_apex": [
            {st: list(c) for st, c in s.up.components.items()},
            {st: list(c) for st, c in s.down.components.items()},
        ],
        "fine": s.fine,
    }


def decode_square(tree, iface: Interface) -> SquareRep:
    rows = _field(tree, "rows", list)
    if len(rows) != 3:
        raise ParseError("a square has exactly three rows")
    top, mid, bot = (decode_cospan(r, iface) for r in rows)
    feet = _field(tree, "v_feet", list)
    apexes = _field(tree, "v_apex", list)
    if len(feet) != 2 or len(apexes) != 2:
        raise ParseError("two vertical feet and two apex maps expected")

    def apex_map(tree_m, dst):
        comps = {s: tuple(c) for s, c in tree_m.items()}
        return check_morphism(Morphism(mid.apex, dst, comps))

    try:
        return check_square(SquareRep(
            top, mid, bot,
            _decode_vertical(feet[0]), _decode_vertical(feet[1]),
            apex_map(apexes[0], top.apex), apex_map(apexes[1], bot.apex),
            bool(tree.get("fine", False)),
        ))
    except ParseError:
        raise
    except Exception as exc:
        raise ParseError(f"bad square: {exc}") from exc


# -- ZX diagrams -----------------------------------------------------------


def _encode_type(t: NodeType):
    if t.phase is None:
        return t.tag
    return {t.tag: str(t.phase.value)}


def _decode_type(tree) -> NodeType:
    if isinstance(tree, str):
        if tree not in ("white", "black", "yellow"):
            raise ParseError(f"unknown node type {tree!r}")
        return NodeType(tree)
    if isinstance(tree, dict) and len(tree) == 1:
        (tag, val), = tree.items()
        if tag in ("green", "red"):
            try:
                return NodeType(tag, Phase(Fraction(val)))
            except (ValueError, ZeroDivisionError) as exc:
                raise ParseError(f"bad phase {val!r}") from exc
    raise ParseError(f"unknown node type {tree!r}")


def encode_zx(d: ZXDiagram) -> dict:
    tree = encode_cospan(d.cospan)
    tree["types"] = {str(v): _encode_type(t) for v, t in enumerate(d.types)}
    return tree


def decode_zx(tree, iface: Interface) -> ZXDiagram:
    cospan = decode_cospan(tree, iface)
    type_tree = _field(tree, "types", dict)
    types = []
    for v in range(cospan.apex.size("n")):
        if str(v) not in type_tree:
            raise ParseError(f"node {v} has no type")
        types.append(_decode_type(type_tree[str(v)]))
    try:
        return check_zx(ZXDiagram(cospan, tuple(types)))
    except Exception as exc:
        raise ParseError(f"bad diagram: {exc}") from exc
