import pytest
from fastapi.testclient import TestClient

from commfibre.service import create_app
from commfibre.service.models import AnalyzeResponse, VerifyResponse


@pytest.fixture(scope="module")
def client():
    return TestClient(create_app())


HEIS_TEXT = "field p=3\ngens x1 x2 y1\nbracket x1 x2 : y1\n"


def test_health(client):
    resp = client.get("/health")
    assert resp.status_code == 200
    assert resp.json()["status"] == "ok"


def test_examples(client):
    resp = client.get("/examples")
    assert resp.status_code == 200
    names = [b["name"] for b in resp.json()["builtins"]]
    assert names == ["elliptic9", "heisenberg", "quadric7", "quadric8"]
    elliptic = resp.json()["builtins"][0]
    assert elliptic["params"] == ["alpha"]


def test_analyze_builtin(client):
    resp = client.post(
        "/analyze",
        json={"source": {"builtin": "heisenberg"}, "t": [1, 2]},
    )
    assert resp.status_code == 200
    doc = AnalyzeResponse.model_validate(resp.json())
    assert doc.class_number == "11"
    assert doc.rank_profile == [1, 2]
    assert len(doc.classes) == 2
    zero = doc.classes[0]
    assert zero.g == [0] and zero.multiplicity == 1
    assert [s.N for s in zero.stats] == ["297", "181521"]
    nz = doc.classes[1]
    assert nz.multiplicity == 2
    assert [s.N for s in nz.stats] == ["216", "174960"]
    assert all(b.holds for b in doc.bounds)


def test_analyze_text_source(client):
    resp = client.post("/analyze", json={"source": {"text": HEIS_TEXT}})
    assert resp.status_code == 200
    assert resp.json()["class_number"] == "11"


def test_analyze_with_base_extension(client):
    resp = client.post(
        "/analyze",
        json={"source": {"text": HEIS_TEXT}, "field": {"p": 3, "k": 2}},
    )
    assert resp.status_code == 200
    doc = AnalyzeResponse.model_validate(resp.json())
    assert doc.field.q == 9
    assert doc.class_number == "89"
    # extension-field coordinates are k-element lists
    assert doc.classes[1].g == [[1, 0]] or isinstance(doc.classes[1].g[0], list)


def test_analyze_elliptic_alpha(client):
    resp = client.post(
        "/analyze",
        json={
            "source": {"builtin": "elliptic9", "alpha": 2},
            "field": {"p": 5},
        },
    )
    assert resp.status_code == 200
    doc = AnalyzeResponse.model_validate(resp.json())
    assert doc.presentation.a == 6
    assert doc.rank_profile[1] == 0  # no half-rank-1 stratum for the 3x3 block


def test_verify_endpoint(client):
    resp = client.post(
        "/verify", json={"source": {"builtin": "heisenberg"}, "t_max": 2}
    )
    assert resp.status_code == 200
    doc = VerifyResponse.model_validate(resp.json())
    assert doc.ok
    assert doc.class_number_formula == doc.class_number_oracle == "11"
    assert doc.mismatches == []


def test_bound_endpoint(client):
    resp = client.post(
        "/bound", json={"source": {"builtin": "heisenberg"}, "t": 1}
    )
    assert resp.status_code == 200
    doc = resp.json()
    assert doc["bound_squared"] == "2/81"
    assert doc["l1"] == "4/27"
    assert doc["holds"] is True


def test_unknown_builtin_maps_to_400(client):
    resp = client.post("/analyze", json={"source": {"builtin": "nope"}})
    assert resp.status_code == 400
    assert resp.json()["error"]["kind"] == "unknown-name"


def test_parse_error_carries_line(client):
    resp = client.post(
        "/analyze", json={"source": {"text": "field p=3\ngens a b\nbracket a a : b\n"}}
    )
    assert resp.status_code == 400
    err = resp.json()["error"]
    assert err["kind"] == "parse-error"
    assert err["line"] == 3


def test_budget_exceeded_kind(client):
    resp = client.post(
        "/analyze",
        json={"source": {"builtin": "quadric8"}, "enum_budget": 5},
    )
    assert resp.status_code == 400
    assert resp.json()["error"]["kind"] == "budget-exceeded"


def test_source_must_be_exclusive(client):
    resp = client.post(
        "/analyze",
        json={"source": {"builtin": "heisenberg", "text": HEIS_TEXT}},
    )
    assert resp.status_code == 400
    resp = client.post("/analyze", json={"source": {}})
    assert resp.status_code == 400


def test_malformed_request_is_422(client):
    resp = client.post("/analyze", json={"source": {"builtin": 7}})
    assert resp.status_code == 422


def test_class_too_large_rejected(client):
    text = (
        "field p=3\n"
        "gens x1 x2 x3 x4\n"
        "bracket x1 x2 : x3\n"
        "bracket x1 x3 : x4\n"
    )
    resp = client.post("/analyze", json={"source": {"text": text}})
    assert resp.status_code == 400
    assert resp.json()["error"]["kind"] == "class-too-large"
