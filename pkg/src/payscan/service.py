"""Local HTTP service driving the live positioning loop and recognition."""

from __future__ import annotations

import base64
import binascii
import json
import os
import threading
import time
import uuid
from contextlib import asynccontextmanager
from dataclasses import dataclass, field, replace

import anyio.to_thread
from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse, PlainTextResponse

from .imgproc import GrayImage
from .pipeline import PipelineConfig, recognize
from .pngio import decode_png
from .screen import (FeedbackTracker, FrameFeedback, ScreenDetection,
                     assess_frame, detect_screen, tracker_update)

MAX_BODY_BYTES = 16 * 1024 * 1024
SESSION_TTL_SECONDS = 60.0


@dataclass
class SessionState:
    tracker: FeedbackTracker = field(default_factory=FeedbackTracker)
    last_detection: ScreenDetection | None = None
    last_seen: float = field(default_factory=time.monotonic)
    lock: threading.Lock = field(default_factory=threading.Lock)


class SessionStore:
    def __init__(self, ttl: float = SESSION_TTL_SECONDS):
        self.ttl = ttl
        self._lock = threading.Lock()
        self._sessions: dict[str, SessionState] = {}

    def _purge(self, now: float) -> None:
        dead = [sid for sid, s in self._sessions.items()
                if now - s.last_seen > self.ttl]
        for sid in dead:
            del self._sessions[sid]

    def create(self) -> str:
        sid = uuid.uuid4().hex
        with self._lock:
            self._purge(time.monotonic())
            self._sessions[sid] = SessionState()
        return sid

    def get(self, sid: str) -> SessionState | None:
        now = time.monotonic()
        with self._lock:
            self._purge(now)
            sess = self._sessions.get(sid)
            if sess is not None:
                sess.last_seen = now
            return sess


def _bad_request(message: str) -> JSONResponse:
    return JSONResponse({"error": message}, status_code=400)


async def _read_json(request: Request) -> dict | JSONResponse:
    body = await request.body()
    if len(body) > MAX_BODY_BYTES:
        return JSONResponse({"error": "body too large"}, status_code=413)
    try:
        payload = json.loads(body)
    except (UnicodeDecodeError, json.JSONDecodeError):
        return _bad_request("body must be JSON")
    if not isinstance(payload, dict):
        return _bad_request("body must be a JSON object")
    return payload


def _decode_frame(payload: dict) -> GrayImage | JSONResponse:
    png_b64 = payload.get("png")
    if not isinstance(png_b64, str):
        return _bad_request("missing 'png' field")
    try:
        data = base64.b64decode(png_b64, validate=True)
        return decode_png(data)
    except (binascii.Error, ValueError, OSError):
        return _bad_request("'png' is not a valid base64 PNG")


def _detection_fields(det: ScreenDetection | None) -> dict:
    if det is None:
        return {}
    return {
        "rect": {"x": det.rect.x, "y": det.rect.y, "w": det.rect.w, "h": det.rect.h},
        "angle": det.angle,
        "focus": det.focus,
    }


def create_app(cfg: PipelineConfig | None = None,
               session_ttl: float = SESSION_TTL_SECONDS) -> FastAPI:
    cfg = cfg or PipelineConfig()

    @asynccontextmanager
    async def lifespan(_: FastAPI):
        # bound the pipeline worker pool to the CPU count
        limiter = anyio.to_thread.current_default_thread_limiter()
        limiter.total_tokens = max(2, os.cpu_count() or 2)
        yield

    app = FastAPI(title="payscan", lifespan=lifespan)
    store = SessionStore(ttl=session_ttl)
    app.state.store = store

    @app.middleware("http")
    async def _limit_body(request: Request, call_next):
        length = request.headers.get("content-length")
        if length is not None and length.isdigit() and int(length) > MAX_BODY_BYTES:
            return JSONResponse({"error": "body too large"}, status_code=413)
        return await call_next(request)

    @app.get("/health")
    async def health():
        return PlainTextResponse("ok")

    @app.post("/session")
    async def new_session():
        return {"id": store.create()}

    @app.post("/session/{sid}/frame")
    async def frame(sid: str, request: Request):
        payload = await _read_json(request)
        if isinstance(payload, JSONResponse):
            return payload
        sess = store.get(sid)
        if sess is None:
            return JSONResponse({"error": "unknown session"}, status_code=404)
        img = _decode_frame(payload)
        if isinstance(img, JSONResponse):
            return img

        def process() -> dict:
            det = detect_screen(img, cfg.screen)
            fb = assess_frame(det, (img.width, img.height), cfg.screen)
            with sess.lock:
                sess.tracker, ready = tracker_update(sess.tracker, fb)
                sess.last_detection = det
                consecutive = sess.tracker.consecutive_valid
            resp = {"status": fb.value, "consecutive": consecutive, "ready": ready,
                    **_detection_fields(det)}
            if ready:
                resp["outcome"] = recognize(img, det, cfg).to_dict()
            return resp

        return await anyio.to_thread.run_sync(process)

    @app.post("/recognize")
    async def recognize_once(request: Request):
        payload = await _read_json(request)
        if isinstance(payload, JSONResponse):
            return payload
        img = _decode_frame(payload)
        if isinstance(img, JSONResponse):
            return img
        run_cfg = cfg
        overrides = {}
        for key, attr in (("thr_value", "value_threshold"), ("thr_op", "operation_threshold")):
            if key in payload:
                try:
                    overrides[attr] = float(payload[key])
                except (TypeError, ValueError):
                    return _bad_request(f"'{key}' must be a number")
        if overrides:
            try:
                run_cfg = replace(cfg, extract=replace(cfg.extract, **overrides))
            except ValueError as e:
                return _bad_request(str(e))

        def process() -> dict:
            det = detect_screen(img, run_cfg.screen)
            if det is None:
                from .extract import (OperationCandidate, RecognitionOutcome,
                                      UNKNOWN)
                return RecognitionOutcome(
                    None, OperationCandidate(UNKNOWN, 0.0), 0, ()).to_dict()
            return recognize(img, det, run_cfg).to_dict()

        return await anyio.to_thread.run_sync(process)

    return app
