import pytest
from fastapi.testclient import TestClient

from thuelat.service.app import app


@pytest.fixture(scope="module")
def client():
    return TestClient(app)


def test_healthz(client):
    r = client.get("/healthz")
    assert r.status_code == 200 and r.json() == {"status": "ok"}


def test_analyze(client):
    r = client.post("/v1/analyze", json={"form": "3: 1 0 0 1", "m": 7})
    assert r.status_code == 200
    body = r.json()
    assert body["discriminant"] == -27
    assert body["c_F_m"] == 3
    assert body["primes"] == [{"p": 7, "v_p_m": 1, "v_p_disc": 0, "c_F_p": 3}]


def test_solve(client):
    r = client.post("/v1/solve", json={"form": "3: 1 0 0 1", "m": 7, "radius": 50})
    assert r.status_code == 200
    body = r.json()
    assert body["count"] == 4
    assert {(s["x"], s["y"]) for s in body["solutions"]} == {
        (2, -1), (-2, 1), (-1, 2), (1, -2),
    }


def test_solve_with_convergents(client):
    r = client.post(
        "/v1/solve",
        json={
            "form": "3: 1 0 0 -2",
            "m": 6,
            "mode": "leq",
            "radius": 10,
            "convergents": True,
            "y_max": 10**6,
        },
    )
    assert r.status_code == 200
    body = r.json()
    assert body["convergents_scanned_to"] == 10**6
    assert body["region_complete"] is False


def test_lattices(client):
    r = client.post("/v1/lattices", json={"form": "3: 1 0 0 1", "m": 7})
    assert r.status_code == 200
    assert [row["lattice"] for row in r.json()["lattices"]] == [
        "7: 7 6 1", "7: 7 3 1", "7: 7 5 1",
    ]


def test_verify(client):
    r = client.post("/v1/verify", json={"form": "3: 1 0 0 1", "m": 7, "radius": 50})
    assert r.status_code == 200
    body = r.json()
    assert body["covered"] is True
    assert sorted(row["solutions"] for row in body["lattices"]) == [0, 2, 2]


def test_bounds(client):
    r = client.post("/v1/bounds", json={"name": "theorem2", "d": 3, "m": 10**6, "A": 625})
    assert r.status_code == 200
    rep = r.json()["reports"][0]
    assert rep["name"] == "theorem2-large-A"
    assert abs(rep["value"] - 347.012) < 0.05
    r = client.post(
        "/v1/bounds",
        json={"name": "lemmas", "d": 3, "c": 2, "B": 100, "C1": 10**4, "C2": 1e20},
    )
    assert r.status_code == 200
    assert [rep["name"] for rep in r.json()["reports"]] == ["lemma6", "lemma7", "lemma8"]


def test_census(client):
    r = client.post("/v1/census", json={"m_from": 101, "m_to": 101, "delta": "1/4"})
    assert r.status_code == 200
    body = r.json()
    assert body["rows"][0]["total"] == 102
    assert body["rows"][0]["short_count"] == 12
    assert body["summary"]["bound_violations"] == 0


def test_exceptional(client):
    r = client.post(
        "/v1/exceptional", json={"form": "3: 1 0 0 -2", "x": 5, "y": 4, "eps": "0.9"}
    )
    assert r.status_code == 200
    assert r.json()["verdict"] is True


def test_classify(client):
    r = client.post(
        "/v1/classify",
        json={"form": "5: 1 0 0 0 0 -2", "m": 1022, "eps": "1/2", "radius": 60},
    )
    assert r.status_code == 200
    body = r.json()
    assert body["m_of_F"] == 511
    assert body["rows"][0]["non_exceptional_pairs"] == 1


def test_error_mapping(client):
    r = client.post("/v1/verify", json={"form": "3: 1 0 0 1", "m": 21})
    assert r.status_code == 422
    assert r.json()["code"] == "hypothesis-violated"

    r = client.post("/v1/analyze", json={"form": "nope", "m": 7})
    assert r.status_code == 422
    assert r.json()["code"] == "rejected-input"

    r = client.post("/v1/analyze", json={"form": "3: 1 0 0 1"})
    assert r.status_code == 422  # pydantic validation: missing m


def test_openapi_lists_endpoints(client):
    spec = client.get("/openapi.json").json()
    paths = set(spec["paths"])
    assert {
        "/v1/analyze", "/v1/solve", "/v1/lattices", "/v1/verify",
        "/v1/bounds", "/v1/census", "/v1/exceptional", "/v1/classify",
    } <= paths
