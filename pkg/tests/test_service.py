import base64
import time

import numpy as np
import pytest
from fastapi.testclient import TestClient

from payscan.imgproc import GrayImage, RectI
from payscan.pipeline import PipelineConfig
from payscan.pngio import encode_png
from payscan.service import create_app
from payscan.synth import render

from conftest import pos_scene


@pytest.fixture(scope="module")
def frames():
    valid, _ = render(pos_scene(frame=(960, 1280), screen=RectI(180, 320, 600, 450),
                                scale=2))
    # a screen far too small in the frame: TooFar
    toofar, _ = render(pos_scene(frame=(960, 1280), screen=RectI(400, 550, 160, 120),
                                 scale=1))
    black = GrayImage(np.zeros((240, 320), np.uint8))
    return {name: base64.b64encode(encode_png(img)).decode()
            for name, img in (("valid", valid), ("toofar", toofar), ("black", black))}


@pytest.fixture(scope="module")
def client():
    with TestClient(create_app(PipelineConfig())) as c:
        yield c


def post_frame(client, sid, png_b64):
    r = client.post(f"/session/{sid}/frame", json={"png": png_b64})
    assert r.status_code == 200, r.text
    return r.json()


def test_health(client):
    r = client.get("/health")
    assert r.status_code == 200
    assert r.text == "ok"


def test_five_valid_frames_fire_recognition(client, frames):
    sid = client.post("/session").json()["id"]
    for i in range(4):
        resp = post_frame(client, sid, frames["valid"])
        assert resp["status"] == "Valid"
        assert resp["consecutive"] == i + 1
        assert resp["ready"] is False
        assert "outcome" not in resp
    resp = post_frame(client, sid, frames["valid"])
    assert resp["ready"] is True
    assert resp["outcome"]["value"]["cents"] == 12345
    assert resp["outcome"]["operation"]["label"] == "CREDITO"
    assert resp["rect"]["w"] > 0


def test_invalid_frame_resets_counter(client, frames):
    sid = client.post("/session").json()["id"]
    for _ in range(4):
        post_frame(client, sid, frames["valid"])
    resp = post_frame(client, sid, frames["toofar"])
    assert resp["status"] == "TooFar"
    assert resp["consecutive"] == 0
    for i in range(4):
        resp = post_frame(client, sid, frames["valid"])
        assert resp["ready"] is False
    resp = post_frame(client, sid, frames["valid"])
    assert resp["ready"] is True


def test_interleaved_sessions_are_independent(client, frames):
    a = client.post("/session").json()["id"]
    b = client.post("/session").json()["id"]
    for i in range(4):
        ra = post_frame(client, a, frames["valid"])
        rb = post_frame(client, b, frames["black"])
        assert ra["consecutive"] == i + 1
        assert rb["consecutive"] == 0
        assert rb["status"] == "NoScreen"
    ra = post_frame(client, a, frames["valid"])
    assert ra["ready"] is True


def test_unknown_session_404(client, frames):
    r = client.post("/session/deadbeef/frame", json={"png": frames["valid"]})
    assert r.status_code == 404


def test_session_expiry():
    app = create_app(PipelineConfig(), session_ttl=0.05)
    with TestClient(app) as client:
        sid = client.post("/session").json()["id"]
        time.sleep(0.1)
        r = client.post(f"/session/{sid}/frame", json={"png": "aGk="})
        assert r.status_code == 404


def test_malformed_body_400(client):
    r = client.post("/recognize", content=b"{not json",
                    headers={"content-type": "application/json"})
    assert r.status_code == 400
    r = client.post("/recognize", json={"png": "!!!not-base64!!!"})
    assert r.status_code == 400
    r = client.post("/recognize", json={"other": 1})
    assert r.status_code == 400


def test_oversized_body_413(client):
    blob = "A" * (17 * 1024 * 1024)
    r = client.post("/recognize", json={"png": blob})
    assert r.status_code == 413


def test_recognize_endpoint(client, frames):
    r = client.post("/recognize", json={"png": frames["valid"]})
    assert r.status_code == 200
    out = r.json()
    assert out["value"]["cents"] == 12345
    assert out["operation"]["label"] == "CREDITO"


def test_recognize_threshold_override(client, frames):
    r = client.post("/recognize", json={"png": frames["valid"], "thr_value": 101})
    assert r.status_code == 400  # out of range
    r = client.post("/recognize", json={"png": frames["black"], "thr_value": 0})
    assert r.status_code == 200
    assert r.json()["value"] is None  # no screen: empty outcome


def test_recognize_bad_threshold_type(client, frames):
    r = client.post("/recognize", json={"png": frames["valid"], "thr_value": "x"})
    assert r.status_code == 400
