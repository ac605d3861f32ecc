"""HTTP service endpoints."""

from fastapi.testclient import TestClient

from modulitr import __version__
from modulitr.service import create_app


def client():
    return TestClient(create_app())


def test_health():
    resp = client().get("/health")
    assert resp.status_code == 200
    assert resp.json() == {"status": "ok", "version": __version__}


def test_correlator_endpoint():
    resp = client().get("/correlator", params={"g": 2, "k": "4"})
    assert resp.status_code == 200
    assert resp.json() == {"g": 2, "k": [4], "value": "1/1152"}


def test_correlator_rejects_unstable():
    resp = client().get("/correlator", params={"g": 0, "k": "0,0"})
    assert resp.status_code == 422


def test_check_endpoint():
    resp = client().post(
        "/check",
        json={"suites": ["n10"], "gmax": 1},
    )
    assert resp.status_code == 200
    doc = resp.json()
    assert doc["summary"]["fail"] == 0
    assert doc["records"][0]["check"] == "n10"


def test_check_endpoint_rejects_unknown_suite():
    resp = client().post("/check", json={"suites": ["nope"]})
    assert resp.status_code == 422
