import warnings

import pytest

with warnings.catch_warnings():
    warnings.simplefilter("ignore")
    from fastapi.testclient import TestClient

from atfkit.service.app import app


@pytest.fixture(scope="module")
def client():
    with TestClient(app) as c:
        yield c


def test_health(client):
    body = client.get("/health").json()
    assert body["status"] == "ok"


def test_markov_check(client):
    assert client.post("/markov/check", json={"a": "1", "b": "2", "c": "5"}).json() == {
        "is_markov": True
    }
    assert client.post("/markov/check", json={"a": "1", "b": "2", "c": "6"}).json() == {
        "is_markov": False
    }


def test_markov_mutate(client):
    r = client.post("/markov/mutate", json={"triple": ["1", "2", "5"], "slot": 0})
    assert r.status_code == 200
    assert r.json() == {"triple": ["29", "2", "5"]}


def test_markov_mutate_rejects_non_markov(client):
    r = client.post("/markov/mutate", json={"triple": ["1", "2", "6"], "slot": 0})
    assert r.status_code == 400
    assert r.json()["error"] == "not_markov"


def test_markov_reduce(client):
    r = client.post("/markov/reduce", json={"triple": ["2", "5", "29"]}).json()
    assert r["chain"][0] == {"triple": ["2", "5", "29"]}
    assert r["chain"][-1] == {"triple": ["1", "1", "1"]}
    assert len(r["steps"]) == len(r["chain"]) - 1


def test_markov_enumerate(client):
    r = client.post("/markov/enumerate", json={"max_entry": 5}).json()
    assert r == {
        "triples": [
            {"triple": ["1", "1", "1"]},
            {"triple": ["1", "1", "2"]},
            {"triple": ["1", "2", "5"]},
        ]
    }


def test_polytope_build(client):
    r = client.post("/polytope/build", json={"triple": ["1", "2", "5"]}).json()
    assert r["vertices"] == [["0", "0"], ["4", "-1"], ["0", "-25"]]
    assert r["m1"] == "1" and r["m2"] == "6"
    assert r["lens"] == [["4", "1"], ["25", "4"], ["1", "0"]]


def test_polytope_verify(client):
    r = client.post("/polytope/verify", json={"triple": ["2", "5", "29"]}).json()
    assert r["ok"] is True
    assert all(r["checks"].values())


def test_atf_diagram_and_surgeries(client):
    dia = client.post("/atf/diagram", json={"triple": ["1", "1", "2"]}).json()
    assert len(dia["nodes"]) == 3
    out = client.post(
        "/atf/transfer", json={"diagram": dia, "node": 0, "side": "left"}
    )
    assert out.status_code == 200
    assert out.json()["polygon"]["vertices"] != dia["polygon"]["vertices"]

    bad = client.post(
        "/atf/transfer", json={"diagram": dia, "node": 7, "side": "left"}
    )
    assert bad.status_code == 400
    assert bad.json()["error"] == "invalid_diagram"


def test_atf_slide_rejections(client):
    dia = client.post("/atf/diagram", json={"triple": ["1", "1", "1"]}).json()
    r = client.post(
        "/atf/slide", json={"diagram": dia, "node": 0, "new_length": "100"}
    )
    assert r.status_code == 400
    assert r.json()["error"] == "slide_out_of_bounds"


def test_atf_mutate(client):
    r = client.post("/atf/mutate", json={"triple": ["1", "2", "5"], "slot": 0}).json()
    assert r["triple"] == ["2", "5", "29"]
    assert r["diagram"]["provenance"] == {"triple": ["2", "5", "29"]}


def test_hull_endpoints(client):
    r = client.post("/hull/build", json={"triple": ["1", "1", "2"]}).json()
    assert r["lengths"] == ["1", "1", "2"]
    r = client.post("/hull/lengths", json={"triple": ["2", "5", "29"]}).json()
    assert r["lengths"] == ["2", "5", "29"]
    r = client.post(
        "/hull/compare", json={"first": ["1", "1", "1"], "second": ["1", "1", "2"]}
    ).json()
    assert r["distinct"] is True
    assert r["certificate"]["kind"] == "length_multisets"
    r = client.post(
        "/hull/compare", json={"first": ["1", "2", "5"], "second": ["5", "2", "1"]}
    ).json()
    assert r["distinct"] is False
    assert r["certificate"]["kind"] == "equivalence_witness"


def test_render_endpoints(client):
    r = client.post("/render/diagram", json={"triple": ["1", "1", "2"]})
    assert r.status_code == 200
    assert r.headers["content-type"].startswith("image/svg+xml")
    assert r.content.startswith(b"<?xml")

    r = client.post("/render/hull", json={"triple": ["1", "2", "5"]})
    assert r.status_code == 200

    r = client.post("/render/chain", json={"triple": ["1", "2", "5"]})
    assert r.status_code == 200
    assert r.content.count(b'class="fiber"') == 3


def test_render_diagram_requires_one_source(client):
    r = client.post("/render/diagram", json={})
    assert r.status_code == 400


def test_verify_all(client):
    r = client.post("/verify/all", json={"max_entry": 50}).json()
    assert r["ok"] is True
    suites = {s["suite"] for s in r["results"]}
    assert suites == {"per_triple_invariants", "pairwise_hull_distinctness"}


def test_validation_errors_are_422(client):
    r = client.post("/markov/mutate", json={"triple": ["1", "2"], "slot": 0})
    assert r.status_code == 422
