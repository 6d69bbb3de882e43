"""
HTTP API tests through FastAPI's TestClient.
"""
from __future__ import annotations

import pytest
from fastapi.testclient import TestClient

from app.main import app
from core import ms
from tests.builders import network_json, streams_json


@pytest.fixture(scope="module")
def client() -> TestClient:
    return TestClient(app)


@pytest.fixture(scope="module")
def scheduled(client) -> dict:
    r = client.post("/api/schedule", json={"network": network_json(), "streams": streams_json()})
    assert r.status_code == 200
    return r.json()


def _body(**extra) -> dict:
    return {"network": network_json(), "streams": streams_json(), **extra}


class TestApi:

    def test_health(self, client):
        assert client.get("/api/health").json() == {"status": "ok"}

    def test_schedule(self, scheduled):
        assert scheduled["summary"]["accepted"] == ["w0", "w1"]
        assert scheduled["config"]["hypercycle_ns"] == ms(10)

    def test_schedule_with_rejection(self, client):
        r = client.post("/api/schedule", json={
            "network": network_json(), "streams": streams_json(latency_ns=ms(4)), "mode": "sti",
        })
        assert r.status_code == 200
        assert r.json()["summary"]["rejected"] == {"w1": "violates_latency"}

    def test_simulate(self, client, scheduled):
        r = client.post("/api/simulate", json=_body(config=scheduled["config"], cycles=10, include_trace=True))
        assert r.status_code == 200
        body = r.json()
        assert [s["released"] for s in body["report"]["streams"]] == [10, 10]
        assert body["trace"]["n_cycles"] == 10

    def test_verify(self, client, scheduled):
        r = client.post("/api/verify", json=_body(config=scheduled["config"], samples=10))
        assert r.status_code == 200
        assert r.json()["ok"] is True

    def test_verify_submitted_trace(self, client, scheduled):
        sim = client.post(
            "/api/simulate",
            json=_body(config=scheduled["config"], cycles=3, clip_to_pdb=True, include_trace=True),
        ).json()
        r = client.post("/api/verify", json=_body(config=scheduled["config"], trace=sim["trace"]))
        assert r.json() == {"ok": True, "samples": 3, "psfp_drops": 0, "violations": []}

    def test_unknown_mode(self, client):
        r = client.post("/api/schedule", json=_body(mode="edf"))
        assert r.status_code == 422

    def test_schema_violation(self, client):
        streams = streams_json()
        streams["streams"][0]["colour"] = "red"
        r = client.post("/api/schedule", json={"network": network_json(), "streams": streams})
        assert r.status_code == 422
        assert "streams.0.colour" in r.json()["detail"]

    def test_histogram_files_are_refused(self, client):
        net = network_json()
        net["histogram_files"] = {"up": "/etc/passwd"}
        r = client.post("/api/schedule", json={"network": net, "streams": streams_json()})
        assert r.status_code == 400

    def test_cycle_limit(self, client, scheduled):
        r = client.post("/api/simulate", json=_body(config=scheduled["config"], cycles=1_000_000))
        assert r.status_code == 422
