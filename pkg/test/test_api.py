#!/usr/bin/env python3
"""
HTTP API 테스트

FastAPI TestClient 로 groups / checks / verify / moduli 라우터의 응답 형식과
에러 코드(400 / 404 / 422)를 확인합니다.
"""
import sys
from pathlib import Path

# Add project root to Python path
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

import pytest
from fastapi.testclient import TestClient

from app.main import app
from app.middleware import SLOW_EXACT_SECONDS, SLOW_REQUEST_SECONDS, slow_threshold


@pytest.fixture(scope="module")
def client():
    with TestClient(app) as c:
        yield c


def test_root_and_health(client):
    response = client.get("/")
    assert response.status_code == 200
    assert response.json()["status"] == "running"
    assert response.json()["types"]["G"] == {"minRank": 2, "maxRank": 2}
    assert "fused_double" in response.json()["models"]
    assert "x-process-time" in response.headers

    assert client.get("/health").json() == {"status": "healthy"}


def test_slow_thresholds():
    assert slow_threshold("/api/verify/varpi") == SLOW_REQUEST_SECONDS
    assert slow_threshold("/api/moduli/sample") == SLOW_REQUEST_SECONDS
    assert slow_threshold("/api/groups/E/8/strata") == SLOW_EXACT_SECONDS


def test_root_datum(client):
    response = client.get("/api/groups/F/4")
    assert response.status_code == 200
    body = response.json()
    assert body["success"] is True
    assert body["data"]["marks"] == [2, 3, 2, 1, 1]
    assert body["data"]["groupDim"] == 52


def test_invalid_group(client):
    response = client.get("/api/groups/E/5")
    assert response.status_code == 400
    assert "E" in response.json()["detail"]


def test_strata(client):
    response = client.get("/api/groups/C/2/strata")
    assert response.status_code == 200
    dims = [s["stratumDim"] for s in response.json()["data"]]
    assert dims == [0, 4, 0, 8, 8, 8, 12]


def test_faces_and_smoothness(client):
    faces = client.get("/api/groups/A/2/faces").json()["data"]
    assert [f["label"] for f in faces["faces"]] == ["0", "1", "2", "01", "02", "12", "A"]
    assert faces["chamberFaceCount"] == 4

    smooth = client.get("/api/groups/A/3/smooth", params={"face": "01"}).json()["data"]
    assert len(smooth) == 1
    assert smooth[0]["removable"] is False

    assert client.get("/api/groups/A/3/smooth", params={"face": "w9"}).status_code == 400


def test_reduce(client):
    response = client.post("/api/groups/A/2/reduce", json={"point": ["7/3", "-1/3", "-2"]})
    assert response.status_code == 200
    data = response.json()["data"]
    assert data["steps"] > 0
    assert data["face"]["faceId"]

    bad = client.post("/api/groups/A/2/reduce", json={"point": ["1/0", "0", "0"]})
    assert bad.status_code == 400


def test_weights_zeta_symmetries(client):
    weights = client.get("/api/groups/G/2/weights").json()["data"]
    assert weights["toric"]["lCoefficients"] == [2, 1, 2]
    assert weights["edgeWeightsOk"] is True

    zeta = client.get("/api/groups/A/3/zeta").json()["data"]
    assert zeta["isHomomorphism"] and zeta["isInjective"]

    symmetries = client.get("/api/groups/D/4/symmetries").json()["data"]
    assert all(symmetries["checks"].values())


def test_group_checks(client):
    for check in ("centralizer", "integrality", "dk-dimensions"):
        response = client.get(f"/api/checks/{check}/B/3")
        assert response.status_code == 200, response.text
        assert response.json()["data"]["passed"] is True

    assert client.get("/api/checks/unknown/B/3").status_code == 404
    assert client.get("/api/checks/centralizer/A/1").status_code == 400
    assert client.get("/api/checks/su-embedding/4").json()["data"]["passed"] is True
    assert client.get("/api/checks/su-embedding/12").status_code == 400


def test_verify_endpoints(client):
    models = client.get("/api/verify/models").json()["data"]
    assert "exp_cotangent" in models

    response = client.post("/api/verify/varpi", json={"n": 2, "samples": 10, "seed": 1})
    assert response.status_code == 200
    assert response.json()["data"]["verdict"] == "pass"

    response = client.post("/api/verify/models/double", json={"n": 2, "samples": 3})
    assert response.json()["data"]["model"] == "double"

    assert client.post("/api/verify/models/torus", json={}).status_code == 404
    assert client.post("/api/verify/nothing", json={}).status_code == 404
    assert client.post("/api/verify/varpi", json={"samples": 0}).status_code == 422
    assert client.post("/api/verify/sphere", json={"n": 2, "samples": 2, "levels": [5.0]}).status_code == 400


def test_moduli_endpoints(client):
    response = client.post("/api/moduli/sample", json={"g": 1, "n": 2, "samples": 5})
    assert response.status_code == 200
    data = response.json()["data"]
    assert data["sampler"]["verdict"] == "pass"
    assert data["point"]["residual"] <= 1e-12

    response = client.post("/api/moduli/dimensions", json={"g": 0, "n": 3, "type": "A", "rank": 1})
    dims = response.json()["data"]["dims"]
    assert dims["dim_M_Sigma"] == 12
    assert dims["dim_reduction_generic"] == 0

    bad = client.post("/api/moduli/dimensions", json={"g": 0, "n": 3, "type": "A", "rank": 1, "faces": ["A"]})
    assert bad.status_code == 400
