import json

import pytest
from click.testing import CliRunner

from cospanlab import io as enc
from cospanlab.cli import main
from cospanlab.cospans import open_graph
from cospanlab.presheaf import graph


@pytest.fixture()
def runner():
    return CliRunner()


@pytest.fixture()
def files(tmp_path, iface, loops):
    paths = {}

    def put(name, tree):
        p = tmp_path / name
        p.write_text(json.dumps(tree))
        paths[name] = str(p)

    put("c1.json", enc.encode_cospan(
        open_graph(iface, graph(4, [(0, 2), (1, 2), (2, 3)]), [0, 1], [3])
    ))
    put("c2.json", enc.encode_cospan(
        open_graph(iface, graph(4, [(0, 1), (0, 2), (0, 3)]), [0], [1, 2, 3])
    ))
    put("loops.json", enc.encode_grammar(loops))
    put("host.json", enc.encode_presheaf(graph(2, [(0, 0), (0, 1)])))
    put("goal.json", enc.encode_presheaf(graph(2, [(0, 1)])))
    put("far.json", enc.encode_presheaf(graph(3, [])))
    (tmp_path / "bad.json").write_text("{not json")
    paths["bad.json"] = str(tmp_path / "bad.json")
    put("badcospan.json", {"apex": {"schema": "GRAPH"}})
    return paths


def _out(result):
    return json.loads(result.stdout.strip().splitlines()[-1])


def test_validate_presheaf(runner, files):
    r = runner.invoke(main, ["validate", files["host.json"]])
    assert r.exit_code == 0
    assert _out(r)["ok"] is True


def test_validate_rejects_garbage(runner, files):
    r = runner.invoke(main, ["validate", files["bad.json"]])
    assert r.exit_code == 2
    assert _out(r)["error"]["code"] == "parse"


def test_compose_matches_library(runner, files, iface):
    r = runner.invoke(main, ["compose", files["c1.json"], files["c2.json"]])
    assert r.exit_code == 0
    c = enc.decode_cospan(_out(r), iface)
    assert c.apex.size("n") == 7 and c.apex.size("e") == 6
    assert (c.left_foot, c.right_foot) == (2, 3)


def test_tensor(runner, files, iface):
    r = runner.invoke(main, ["tensor", files["c1.json"], files["c2.json"]])
    c = enc.decode_cospan(_out(r), iface)
    assert c.apex.size("n") == 8


def test_compose_feet_mismatch_is_input_error(runner, files):
    r = runner.invoke(main, ["compose", files["c2.json"], files["c2.json"]])
    assert r.exit_code == 2
    assert _out(r)["error"]["code"] == "feet"


def test_matches_lists_rule_and_index(runner, files):
    r = runner.invoke(main, ["matches", files["loops.json"], files["host.json"]])
    assert r.exit_code == 0
    out = _out(r)
    assert out == [{"rule": "drop-loop", "match_index": 0,
                    "components": out[0]["components"]}]


def test_apply_step(runner, files):
    r = runner.invoke(main, [
        "apply", files["loops.json"], files["host.json"],
        "--rule", "drop-loop", "--match", "0",
    ])
    assert r.exit_code == 0
    assert _out(r)["result"]["carriers"] == {"e": 1, "n": 2}


def test_apply_bad_match_index(runner, files):
    r = runner.invoke(main, [
        "apply", files["loops.json"], files["host.json"],
        "--rule", "drop-loop", "--match", "5",
    ])
    assert r.exit_code == 2


def test_derive_success(runner, files):
    r = runner.invoke(main, [
        "derive", files["loops.json"], files["host.json"], files["goal.json"],
    ])
    assert r.exit_code == 0
    assert len(_out(r)["steps"]) == 1


def test_derive_absence_exits_one(runner, files):
    r = runner.invoke(main, [
        "derive", files["loops.json"], files["host.json"], files["far.json"],
    ])
    assert r.exit_code == 1
    assert _out(r) is None


def test_check_suite_runs(runner):
    r = runner.invoke(main, ["check", "snake"])
    assert r.exit_code == 0
    assert _out(r)["ok"] is True


def test_check_unknown_suite_rejected(runner):
    r = runner.invoke(main, ["check", "nonsense"])
    assert r.exit_code == 2


def test_zx_simplify(runner, tmp_path):
    from fractions import Fraction

    from cospanlab.zx import generator, zx_compose

    d = zx_compose(
        generator("green", 1, 1, Fraction(1, 4)),
        generator("green", 1, 1, Fraction(1, 2)),
    )
    p = tmp_path / "d.json"
    p.write_text(json.dumps(enc.encode_zx(d)))
    r = runner.invoke(main, ["zx", "simplify", str(p), "--budget", "3"])
    assert r.exit_code == 0
    out = _out(r)
    assert out["rules"] == ["spider-fuse"]
    assert any(t == {"green": "3/4"} for t in out["end"]["types"].values())


def test_decompose_round(runner, files, tmp_path, iface):
    closed = open_graph(iface, graph(4, [(0, 1), (1, 2), (2, 3)]), [], [])
    cpath = tmp_path / "closed.json"
    cpath.write_text(json.dumps(enc.encode_cospan(closed)))
    cut = tmp_path / "cut.json"
    cut.write_text(json.dumps({
        "members": [2],
        "sides": {"n": ["L", "L", "C", "R"], "e": ["L", "L", "R"]},
    }))
    r = runner.invoke(main, ["decompose", str(cpath), "--cut", str(cut)])
    assert r.exit_code == 0
    out = _out(r)
    assert out["left"]["apex"]["carriers"]["n"] == 3
    assert out["right"]["apex"]["carriers"]["n"] == 2


def test_validate_derivation_with_grammar(runner, files, tmp_path, loops):
    from cospanlab.rewriting import derivation_search

    d = derivation_search(loops, graph(1, [(0, 0)]), graph(1, []), 2)
    p = tmp_path / "deriv.json"
    p.write_text(json.dumps(enc.encode_derivation(d)))
    r = runner.invoke(main, ["validate", str(p), "--grammar", files["loops.json"]])
    assert r.exit_code == 0
    assert _out(r)["ok"] is True
    r2 = runner.invoke(main, ["validate", str(p)])
    assert r2.exit_code == 2
