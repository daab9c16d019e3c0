import pytest
from fastapi.testclient import TestClient

from cospanlab import __version__
from cospanlab import io as enc
from cospanlab.cospans import open_graph
from cospanlab.presheaf import graph
from cospanlab.service import VERSION_HEADER, app


@pytest.fixture()
def client():
    return TestClient(app)


@pytest.fixture()
def session(client, loops):
    body = {
        "grammar": enc.encode_grammar(loops),
        "start": enc.encode_presheaf(graph(2, [(0, 0), (0, 1), (1, 1)])),
    }
    r = client.post("/sessions", json=body)
    assert r.status_code == 201
    return r.json()


def test_create_session_reports_state(client, session):
    assert session["depth"] == 0
    assert session["current"]["carriers"] == {"e": 3, "n": 2}


def test_version_header_on_every_response(client, session):
    r = client.get(f"/sessions/{session['id']}")
    assert r.headers[VERSION_HEADER] == __version__
    r404 = client.get("/sessions/nope")
    assert r404.headers[VERSION_HEADER] == __version__


def test_missing_session_is_404(client):
    r = client.get("/sessions/nope")
    assert r.status_code == 404
    assert r.json()["error"]["code"] == "session"


def test_invalid_grammar_is_422(client):
    r = client.post("/sessions", json={"grammar": {"bogus": 1}, "start": {"x": 2}})
    assert r.status_code == 422


def test_matches_carry_preview_keys(client, session):
    r = client.get(f"/sessions/{session['id']}/matches")
    assert r.status_code == 200
    out = r.json()
    assert len(out["matches"]) == 2
    assert all(m["rule"] == "drop-loop" for m in out["matches"])
    assert all("preview_key" in m for m in out["matches"])


def test_apply_undo_round_trip(client, session):
    sid = session["id"]
    r = client.post(f"/sessions/{sid}/apply", json={"rule": "drop-loop", "match_index": 0})
    assert r.status_code == 200
    state = r.json()["state"]
    assert state["depth"] == 1
    assert state["current"]["carriers"]["e"] == 2
    r2 = client.post(f"/sessions/{sid}/undo")
    assert r2.status_code == 200
    assert r2.json()["key"] == session["key"]
    assert r2.json()["depth"] == 0


def test_stale_epoch_conflicts(client, session):
    sid = session["id"]
    client.post(f"/sessions/{sid}/apply", json={"rule": "drop-loop", "match_index": 0})
    r = client.post(
        f"/sessions/{sid}/apply",
        json={"rule": "drop-loop", "match_index": 0, "matches_epoch": 0},
    )
    assert r.status_code == 409
    assert r.json()["error"]["code"] == "stale"


def test_undo_on_empty_stack_conflicts(client, session):
    r = client.post(f"/sessions/{session['id']}/undo")
    assert r.status_code == 409


def test_trace_replays_and_verifies(client, session, loops):
    sid = session["id"]
    client.post(f"/sessions/{sid}/apply", json={"rule": "drop-loop", "match_index": 0})
    client.post(f"/sessions/{sid}/apply", json={"rule": "drop-loop", "match_index": 0})
    r = client.get(f"/sessions/{sid}/trace")
    assert r.status_code == 200
    d = enc.decode_derivation(r.json(), loops)
    assert d.verify() and len(d.steps) == 2
    assert d.end.size("e") == 1


def test_eval_compose(client, iface):
    c1 = open_graph(iface, graph(4, [(0, 2), (1, 2), (2, 3)]), [0, 1], [3])
    c2 = open_graph(iface, graph(4, [(0, 1), (0, 2), (0, 3)]), [0], [1, 2, 3])
    r = client.post("/eval/compose", json={
        "c1": enc.encode_cospan(c1), "c2": enc.encode_cospan(c2),
    })
    assert r.status_code == 200
    out = enc.decode_cospan(r.json(), iface)
    assert out.apex.size("n") == 7 and out.apex.size("e") == 6


def test_eval_compose_feet_mismatch(client, iface):
    c = open_graph(iface, graph(2, [(0, 1)]), [0, 1], [])
    r = client.post("/eval/compose", json={
        "c1": enc.encode_cospan(c), "c2": enc.encode_cospan(c),
    })
    assert r.status_code == 422


def test_rulepacks_listing(client, monkeypatch, tmp_path):
    monkeypatch.setenv("ZX_PACK_DIR", "rulepacks")
    r = client.get("/rulepacks")
    assert r.status_code == 200
    packs = r.json()["packs"]
    assert any(p["file"] == "zx-uncertified.json" for p in packs)
    assert any("color-change" in p["rules"] for p in packs)
    monkeypatch.setenv("ZX_PACK_DIR", str(tmp_path))
    assert client.get("/rulepacks").json() == {"packs": []}
