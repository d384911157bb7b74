"""HTTP service: endpoints mirror the command layer and map precondition
violations to status 400."""

import pytest
from fastapi.testclient import TestClient

from omprog import __version__
from omprog.service import app

DOC = "rank 2\nelements 1 2 3\n+-0\n+0+\n0++\n"


@pytest.fixture(scope="module")
def client():
    return TestClient(app)


def test_health(client):
    response = client.get("/health")
    assert response.status_code == 200
    assert response.json() == {"ok": True, "version": __version__}


def test_validate(client):
    response = client.post("/validate", json={"document": DOC})
    assert response.status_code == 200
    report = response.json()
    assert report["verdict"] is True
    assert report["rank_computed"] == 2


def test_validate_malformed_is_400(client):
    response = client.post("/validate", json={"document": "junk"})
    assert response.status_code == 400
    assert "rank" in response.json()["detail"]


def test_euclidean(client):
    response = client.post("/euclidean", json={"document": DOC, "g": "3", "f": "1"})
    assert response.status_code == 200
    assert response.json()["verdict"] is True
    response = client.post("/euclidean", json={"document": DOC, "all_pairs": True})
    assert response.json()["verdict"] is True
    response = client.post("/euclidean", json={"document": DOC, "g": "3"})
    assert response.status_code == 400


def test_lex_extend(client):
    response = client.post(
        "/lex-extend",
        json={"document": DOC, "base": ["1", "2"], "signs": "++", "name": "p"},
    )
    assert response.status_code == 200
    assert response.json()["document"] == (
        "rank 2\nelements 1 2 3 p\n+--0\n+-0+\n+0++\n0+++\n"
    )


def test_lex_extend_dependent_base_is_400(client):
    response = client.post(
        "/lex-extend",
        json={"document": DOC, "base": ["1", "1"], "signs": "++", "name": "p"},
    )
    assert response.status_code == 400


def test_parallel_extend(client):
    response = client.post(
        "/parallel-extend",
        json={"document": DOC, "g": "3", "f": "1", "through": "0++", "name": "p"},
    )
    assert response.status_code == 200
    assert response.json()["localization"] == {"+-0": 1, "+0+": 1, "0++": 0}


def test_sweep(client):
    response = client.post("/sweep", json={"document": DOC, "g": "3", "f": "1"})
    assert response.status_code == 200
    report = response.json()
    assert report["order"] == ["+0+"]
    assert report["names"] == ["h1"]
    response = client.post(
        "/sweep", json={"document": DOC, "g": "3", "f": "1", "order": "+0+\n"}
    )
    assert response.json()["inputs"]["order_given"] is True


def test_shell(client):
    response = client.post(
        "/shell", json={"document": DOC, "f": "1", "scope": "tope", "g": "3"}
    )
    assert response.status_code == 200
    assert response.json()["order"] == ["0++", "+0+"]
    response = client.post(
        "/shell",
        json={"document": DOC, "f": "3", "scope": "whole", "basis": ["1", "2"]},
    )
    assert response.json()["order"] == ["0-", "-0", "+0", "0+"]
    response = client.post(
        "/shell", json={"document": DOC, "f": "1", "scope": "corner"}
    )
    assert response.status_code == 400


def test_verify_shelling(client):
    response = client.post(
        "/verify-shelling",
        json={"document": DOC, "f": "3", "order": "0-\n-0\n+0\n0+\n"},
    )
    assert response.status_code == 200
    assert response.json()["verdict"] is True
    response = client.post(
        "/verify-shelling",
        json={"document": DOC, "f": "3", "order": "0-\n0+\n+0\n-0\n"},
    )
    assert response.json()["verdict"] is False


def test_from_matrix(client):
    response = client.post("/from-matrix", json={"matrix": "1 0\n0 1\n1 1\n"})
    assert response.status_code == 200
    assert response.json()["document"] == DOC


def test_timing(client):
    response = client.post("/validate", json={"document": DOC, "timing": True})
    assert response.json()["timing"]["seconds"] >= 0
