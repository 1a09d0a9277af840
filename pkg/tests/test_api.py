"""HTTP service endpoints."""
import pytest
from fastapi.testclient import TestClient

from cosetgame.api import app

client = TestClient(app)


def test_healthz():
    r = client.get("/healthz")
    assert r.status_code == 200
    assert r.json() == {"status": "ok"}


def test_bound_endpoint():
    r = client.get("/bound", params={"m_max": 2})
    assert r.status_code == 200
    rows = r.json()["rows"]
    assert [row["bound"] for row in rows] == ["2/3", "2/5"]
    assert rows[0]["envelope_ok"] is True


def test_bound_rejects_bad_m_max():
    assert client.get("/bound", params={"m_max": 0}).status_code == 400


def test_exact_endpoint():
    r = client.get("/exact", params={"m": 3})
    assert r.status_code == 200
    body = r.json()
    assert body["value"] == "2/9" and body["tight"] is True
    assert client.get("/exact", params={"m": 4}).status_code == 400


def test_simulate_endpoint_is_deterministic():
    params = {"m": 2, "rounds": 300, "seed": 12}
    a = client.get("/simulate", params=params).json()
    b = client.get("/simulate", params=params).json()
    assert a == b
    assert a["joint_wins"] <= min(a["bob_wins"], a["charlie_wins"])
    assert client.get("/simulate", params={"m": 2, "rounds": 0, "seed": 1}).status_code == 400


def test_subspace_endpoint():
    r = client.post("/subspace", json={"matrix": "101001,011101,000010"})
    assert r.status_code == 200
    body = r.json()
    assert body["rref"] == "101001,011101,000010"
    assert body["pivots"] == [1, 2, 5]
    assert body["residual_pairs"] == [[1, 4], [2, 6]]
    assert body["win_probability"] == "1/4"
    assert client.post("/subspace", json={"matrix": "zz"}).status_code == 400


def test_verify_endpoint():
    r = client.get("/verify", params={"m": 1})
    assert r.status_code == 200
    body = r.json()
    assert body["all_passed"] is True
    assert all(c["passed"] for c in body["checks"])
    assert client.get("/verify", params={"m": 5}).status_code == 400
