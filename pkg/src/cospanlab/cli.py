"""Command-line interface.

stdout carries canonical JSON only; human summaries go to stderr.
Exit codes: 0 success (or positive result), 1 negative result (no
derivation, failed check), 2 malformed input.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from . import io as enc
from .adjunction import graph_interface
from .cospans import FeetMismatch, compose, tensor
from .language import Cut, decompose_closed
from .laws import SUITES
from .presheaf import canonical_key, validate_presheaf
from .rewriting import apply_rule, derivation_search, find_matches
from .zx import builtin_rules, load_rule_pack, validate_zx, zx_simplify


def _emit(tree, summary: str) -> None:
    click.echo(enc.canonical_dumps(tree))
    click.echo(summary, err=True)


def _fail(code: str, detail: str, exit_code: int = 2):
    click.echo(enc.canonical_dumps({"error": {"code": code, "detail": detail}}))
    click.echo(f"error: {detail}", err=True)
    sys.exit(exit_code)


def _load(path: str):
    try:
        return json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        _fail("parse", f"{path}: {exc}")


def _cospan(path: str):
    try:
        return enc.decode_cospan(_load(path), graph_interface())
    except enc.ParseError as exc:
        _fail("validation", f"{path}: {exc}")


def _grammar(path: str):
    try:
        return enc.decode_grammar(_load(path))
    except enc.ParseError as exc:
        _fail("validation", f"{path}: {exc}")


def _presheaf(path: str):
    try:
        return enc.decode_presheaf(_load(path))
    except enc.ParseError as exc:
        _fail("validation", f"{path}: {exc}")


@click.group()
def main() -> None:
    """Open-graph rewriting toolkit."""


@main.command()
@click.argument("file")
@click.option("--grammar", "grammar_file", default=None,
              help="grammar file, required to re-verify a derivation")
def validate(file: str, grammar_file: str | None) -> None:
    """Check a presheaf, cospan, ZX diagram, or derivation file."""
    tree = _load(file)
    try:
        if isinstance(tree, dict) and "steps" in tree:
            if grammar_file is None:
                _fail("validation", "a derivation needs --grammar to re-verify")
            d = enc.decode_derivation(tree, _grammar(grammar_file))
            report = []
            key = repr(canonical_key(d.end))
        elif isinstance(tree, dict) and "types" in tree:
            d = enc.decode_zx(tree, graph_interface())
            report = validate_zx(d)
            key = repr(d.key())
        elif isinstance(tree, dict) and "apex" in tree:
            c = enc.decode_cospan(tree, graph_interface())
            report = []
            key = repr(c.key())
        else:
            p = enc.decode_presheaf(tree)
            report = validate_presheaf(p)
            key = repr(canonical_key(p))
    except enc.ParseError as exc:
        _fail("validation", str(exc))
    if report:
        _fail("validation", "; ".join(report))
    _emit({"ok": True, "key": key}, "valid")


def _binary(op, path1: str, path2: str, what: str) -> None:
    c1, c2 = _cospan(path1), _cospan(path2)
    try:
        result = op(c1, c2)
    except FeetMismatch as exc:
        _fail("feet", str(exc))
    _emit(
        enc.encode_cospan(result),
        f"{what}: feet {result.left_foot}/{result.right_foot}, "
        f"apex {dict(result.apex.carriers)}",
    )


@main.command("compose")
@click.argument("c1")
@click.argument("c2")
def compose_cmd(c1: str, c2: str) -> None:
    """Glue two cospan files along their shared foot."""
    _binary(compose, c1, c2, "composite")


@main.command("tensor")
@click.argument("c1")
@click.argument("c2")
def tensor_cmd(c1: str, c2: str) -> None:
    """Place two cospan files side by side."""
    _binary(tensor, c1, c2, "tensor")


@main.command()
@click.argument("grammar")
@click.argument("host")
@click.option("--monic", is_flag=True)
def matches(grammar: str, host: str, monic: bool) -> None:
    """List applicable matches of every rule into the host."""
    g = _grammar(grammar)
    h = _presheaf(host)
    out = []
    for rule in g.rules:
        for i, m in enumerate(find_matches(rule, h, monic or g.monic_matches)):
            out.append({
                "rule": rule.name,
                "match_index": i,
                "components": {s: list(c) for s, c in m.components.items()},
            })
    _emit(out, f"{len(out)} match(es)")


@main.command("apply")
@click.argument("grammar")
@click.argument("host")
@click.option("--rule", required=True)
@click.option("--match", "match_index", type=int, required=True)
def apply_cmd(grammar: str, host: str, rule: str, match_index: int) -> None:
    """Apply one rule at the given match index."""
    g = _grammar(grammar)
    h = _presheaf(host)
    try:
        r = g.rule(rule)
    except KeyError:
        _fail("rule", f"no rule named {rule!r}")
    ms = find_matches(r, h, g.monic_matches)
    if not 0 <= match_index < len(ms):
        _fail("match", f"match index {match_index} out of range ({len(ms)} found)")
    st = apply_rule(r, ms[match_index])
    _emit(
        {"result": enc.encode_presheaf(st.result), "step": enc.encode_step(st)},
        f"applied {rule}: result {dict(st.result.carriers)}",
    )


@main.command()
@click.argument("grammar")
@click.argument("start")
@click.argument("goal")
@click.option("--depth", type=int, default=4)
def derive(grammar: str, start: str, goal: str, depth: int) -> None:
    """Search for a derivation from start to goal (up to iso)."""
    g = _grammar(grammar)
    s, t = _presheaf(start), _presheaf(goal)
    d = derivation_search(g, s, t, depth)
    if d is None:
        click.echo(enc.canonical_dumps(None))
        click.echo(f"no derivation within depth {depth}", err=True)
        sys.exit(1)
    _emit(enc.encode_derivation(d), f"derivation with {len(d.steps)} step(s)")


@main.command()
@click.argument("suite", type=click.Choice(sorted(SUITES)))
def check(suite: str) -> None:
    """Run a law-check suite; exit 1 when it fails."""
    report = SUITES[suite]()
    _emit(report, f"{suite}: {'ok' if report['ok'] else 'FAILED'} "
                  f"({report['checked']} checks)")
    if not report["ok"]:
        sys.exit(1)


@main.group()
def zx() -> None:
    """ZX-calculus commands."""


@zx.command()
@click.argument("diagram")
@click.option("--strategy", type=click.Choice(["first-match", "exhaustive-bfs"]),
              default="exhaustive-bfs")
@click.option("--budget", type=int, default=6)
@click.option("--pack", "pack_file", default=None,
              help="extra rule-pack JSON applied alongside the builtins")
def simplify(diagram: str, strategy: str, budget: int, pack_file: str | None) -> None:
    """Reduce a ZX diagram file under the rule pack."""
    try:
        d = enc.decode_zx(_load(diagram), graph_interface())
    except enc.ParseError as exc:
        _fail("validation", str(exc))
    pack = builtin_rules()
    if pack_file is not None:
        try:
            pack += load_rule_pack(pack_file)
        except Exception as exc:
            _fail("parse", f"{pack_file}: {exc}")
    der = zx_simplify(d, pack, strategy, budget)
    _emit(
        {
            "end": enc.encode_zx(der.end),
            "rules": [st.rule_name for st in der.steps],
        },
        f"{len(der.steps)} step(s); final apex {dict(der.end.cospan.apex.carriers)}",
    )


@main.command()
@click.argument("cospan")
@click.option("--cut", "cut_file", required=True)
def decompose(cospan: str, cut_file: str) -> None:
    """Split a closed cospan along a separating cut."""
    c = _cospan(cospan)
    tree = _load(cut_file)
    try:
        cut = Cut(
            tuple(tree["members"]),
            {s: tuple(v) for s, v in tree["sides"].items()},
        )
        left, right = decompose_closed(c, cut)
    except (KeyError, TypeError) as exc:
        _fail("parse", f"bad cut: {exc}")
    except ValueError as exc:
        _fail("cut", str(exc), exit_code=1)
    _emit(
        {"left": enc.encode_cospan(left), "right": enc.encode_cospan(right)},
        f"halves {dict(left.apex.carriers)} / {dict(right.apex.carriers)}",
    )


@main.command()
@click.option("--port", type=int, default=8321)
@click.option("--bind", default="127.0.0.1")
def serve(port: int, bind: str) -> None:
    """Run the session HTTP service."""
    import uvicorn

    from .service import app

    uvicorn.run(app, host=bind, port=port)


if __name__ == "__main__":
    main()
