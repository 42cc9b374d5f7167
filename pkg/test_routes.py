import math

import pytest
from fastapi.testclient import TestClient

from main import app

client = TestClient(app)


def test_root_and_health():
    assert client.get("/").json()["documentation"] == "/docs"
    response = client.get("/health")
    assert response.status_code == 200
    assert response.json()["status"] == "healthy"


def test_normalize_and_reduce():
    response = client.post("/algebra/normalize", json={"expr": "d*X"})
    assert response.status_code == 200
    assert response.json()["results"][0]["normal_form"] == "X*d + 1"

    response = client.post("/algebra/reduce", json={"expr": "d*X^3", "config": {"lambda": "0.5"}})
    assert response.status_code == 200
    assert response.json()["results"][0]["reduced"] == "1.75*X^2"


def test_expand_reports_values():
    response = client.post("/algebra/expand", json={"expr": "X^2", "config": {"model": "delta"}})
    assert response.status_code == 200
    assert response.json()["results"] == [{"k": 2, "a_k": 1, "basis": "falling-factorial"}]


def test_expand_evaluates_with_a_periodic_generator():
    body = {"expr": "X", "p": "exp(2*pi*1i*t)", "at": [1.5], "config": {"model": "delta"}}
    response = client.post("/algebra/expand", json=body)
    assert response.status_code == 200
    report = response.json()
    assert report["config"]["p"] == "exp(2*pi*1i*t)"
    value = report["agreement"][0]["value"]
    assert value["re"] == pytest.approx(-1.5)
    assert value["im"] == pytest.approx(0, abs=1e-9)


def test_extract():
    body = {"f": "pow(2,t)", "method": "oracle", "config": {"model": "delta", "K": 4}}
    response = client.post("/coefficients/extract", json=body)
    assert response.status_code == 200
    values = [row["re"] for row in response.json()["results"]]
    assert values == pytest.approx([1 / math.factorial(k) for k in range(5)])


def test_residue():
    response = client.post("/coefficients/residue", json={"g": "1/t", "config": {"r": 2, "N": 256}})
    assert response.status_code == 200
    assert response.json()["results"][0]["value"]["re"] == pytest.approx(1)


def test_verdict():
    response = client.post("/liouville/verdict", json={"f": "5", "config": {"K": 4}})
    assert response.status_code == 200
    assert response.json()["verdict"] == "consistent"

    response = client.post("/liouville/verdict", json={"f": "t - 1", "config": {"model": "qa", "q": "0.5", "K": 4}})
    assert response.status_code == 200
    assert response.json()["verdict"] == "hypothesis-violated"


def test_charlier():
    response = client.post("/charlier/evaluate", json={"n": 2, "a": 2, "x": [3]})
    assert response.status_code == 200
    agreement = response.json()["agreement"][0]
    assert agreement["values"]["sum"]["re"] == pytest.approx(-0.5)


def test_parse_errors_are_bad_requests():
    response = client.post("/algebra/normalize", json={"expr": "X + * d"})
    assert response.status_code == 400
    assert "position 4" in response.json()["detail"]


@pytest.mark.parametrize(
    "path, body",
    [
        ("/coefficients/extract", {"f": "t", "config": {"model": "qa"}}),
        ("/coefficients/extract", {"f": "t", "config": {"K": -1}}),
        ("/coefficients/extract", {"f": "t", "config": {"colour": "blue"}}),
        ("/coefficients/residue", {"g": "1/(t - 2)", "config": {"r": 2, "N": 8}}),
        ("/charlier/evaluate", {"n": 2, "a": 0}),
        ("/liouville/verdict", {"f": "t", "config": {"model": "qb", "q": "0.5"}}),
    ],
)
def test_domain_and_configuration_errors_are_unprocessable(path, body):
    assert client.post(path, json=body).status_code == 422
