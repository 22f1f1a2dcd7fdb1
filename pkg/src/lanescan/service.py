"""Stateful HTTP API mirroring the interactive analysis workflow.

One endpoint per user step: upload, rotate, preview, lane rectangle,
seed/front marks, chromatogram, peaks, finalize.  Sessions live in
memory (idle ones are evicted); finalize persists the output bundle to
the state directory.  Requests within a session are serialized by a
per-session lock; the JSON handlers run sync in the threadpool so the
lock is safe to hold.
"""

from __future__ import annotations

import io
import math
import threading
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Optional

import numpy as np
from fastapi import FastAPI, Request, Response
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse, PlainTextResponse
from PIL import Image
from pydantic import BaseModel
from starlette.exceptions import HTTPException as StarletteHTTPException

from . import image as image_mod
from . import lane as lane_mod
from .chromatogram import Chromatogram, compute_profile
from .errors import (
    CoincidentMarksError,
    DegenerateSelectionError,
    LanescanError,
    UnsupportedFormatError,
)
from .peaks import BaselineMode, PeakResult, analyze_run
from .report import (
    PlotStyle,
    RunReport,
    format_report,
    write_chromatogram,
    write_grayscale,
    write_report,
)

DEFAULT_IDLE_TTL_SECONDS = 30.0 * 60.0
DEFAULT_MAX_UPLOAD_BYTES = 32 * 1024 * 1024


class ApiError(Exception):
    """An HTTP error with the {code, message, field?} envelope."""

    def __init__(self, status: int, code: str, message: str, field: str | None = None):
        super().__init__(message)
        self.status = status
        self.code = code
        self.message = message
        self.field = field


@dataclass
class RunState:
    """Per-run server state; rotation wipes everything but the id."""

    run_id: int
    rect: Optional[lane_mod.LaneRect] = None
    crop: Optional[lane_mod.LaneCrop] = None
    chrom: Optional[Chromatogram] = None
    peaks: Optional[list[PeakResult]] = None
    baseline: BaselineMode = BaselineMode.RAW
    comments: str = ""

    def invalidate(self):
        self.rect = None
        self.crop = None
        self.chrom = None
        self.peaks = None


@dataclass
class AnalysisSession:
    """One uploaded plate and its in-progress runs."""

    session_id: str
    image_name: str
    original: np.ndarray
    gray: np.ndarray
    rotation_degrees: float = 0.0
    runs: list[RunState] = field(default_factory=list)
    created_at: float = 0.0
    last_touch: float = 0.0
    lock: threading.Lock = field(default_factory=threading.Lock)


class SessionStore:
    """In-memory session registry with lazy idle eviction.

    Session ids are sequential so that replaying a recorded request
    sequence against a fresh service yields byte-identical bodies.
    """

    def __init__(self, idle_ttl_seconds: float, clock: Callable[[], float]):
        self._sessions: dict[str, AnalysisSession] = {}
        self._lock = threading.Lock()
        self._counter = 0
        self._ttl = idle_ttl_seconds
        self._clock = clock

    def create(self, image_name: str, original: np.ndarray, gray: np.ndarray) -> AnalysisSession:
        now = self._clock()
        with self._lock:
            self._evict(now)
            self._counter += 1
            sid = f"s{self._counter:06d}"
            sess = AnalysisSession(
                session_id=sid,
                image_name=image_name or f"upload-{sid}.png",
                original=original,
                gray=gray,
                created_at=now,
                last_touch=now,
            )
            self._sessions[sid] = sess
            return sess

    def get(self, session_id: str) -> AnalysisSession:
        now = self._clock()
        with self._lock:
            self._evict(now)
            sess = self._sessions.get(session_id)
            if sess is None:
                raise ApiError(404, "unknown_session", f"no session {session_id!r}")
            sess.last_touch = now
            return sess

    def _evict(self, now: float):
        stale = [k for k, s in self._sessions.items() if now - s.last_touch > self._ttl]
        for k in stale:
            del self._sessions[k]


class RotationBody(BaseModel):
    degrees: float


class RectBody(BaseModel):
    rect_clicks: list[list[float]]


class MarksBody(BaseModel):
    seed_click_y: float
    front_click_y: float


class PeaksBody(BaseModel):
    peak_clicks: list[list[list[float]]]
    baseline: str = "raw"
    comments: str = ""


def create_app(
    state_dir="lanescan_state",
    *,
    static_dir=None,
    max_upload_bytes: int = DEFAULT_MAX_UPLOAD_BYTES,
    idle_ttl_seconds: float = DEFAULT_IDLE_TTL_SECONDS,
    clock: Callable[[], float] = time.monotonic,
) -> FastAPI:
    """Build the analysis service around a fresh in-memory session store.

    ``static_dir`` optionally mounts a directory of built web-UI assets
    at the root path; API routes keep precedence over it.
    """
    app = FastAPI(title="lanescan", docs_url=None, redoc_url=None)
    store = SessionStore(idle_ttl_seconds, clock)
    app.state.store = store
    app.state.state_dir = Path(state_dir)

    @app.exception_handler(ApiError)
    async def _api_error(_request: Request, exc: ApiError):
        body = {"code": exc.code, "message": exc.message}
        if exc.field is not None:
            body["field"] = exc.field
        return JSONResponse(body, status_code=exc.status)

    @app.exception_handler(RequestValidationError)
    async def _validation_error(_request: Request, exc: RequestValidationError):
        errors = exc.errors()
        body = {
            "code": "validation_error",
            "message": errors[0]["msg"] if errors else "invalid request body",
        }
        if errors and len(errors[0].get("loc", ())) > 1:
            body["field"] = ".".join(str(p) for p in errors[0]["loc"][1:])
        return JSONResponse(body, status_code=422)

    @app.exception_handler(StarletteHTTPException)
    async def _http_error(_request: Request, exc: StarletteHTTPException):
        return JSONResponse(
            {"code": "http_error", "message": str(exc.detail)},
            status_code=exc.status_code,
        )

    @app.get("/healthz")
    def healthz():
        return PlainTextResponse("ok")

    @app.post("/sessions", status_code=201)
    async def create_session(request: Request):
        content_type = request.headers.get("content-type", "")
        if content_type.startswith("multipart/form-data"):
            form = await request.form()
            upload = next((v for v in form.values() if hasattr(v, "read")), None)
            if upload is None:
                raise ApiError(
                    422, "validation_error", "multipart body carries no file", "file"
                )
            data = await upload.read()
            name = upload.filename or ""
        else:
            data = await request.body()
            name = ""
        if len(data) > max_upload_bytes:
            raise ApiError(
                413, "payload_too_large", f"image exceeds {max_upload_bytes} bytes"
            )
        try:
            original = image_mod.decode_image(data)
        except UnsupportedFormatError as exc:
            raise ApiError(415, exc.code, str(exc)) from exc
        gray = image_mod.to_grayscale(original)
        sess = store.create(Path(name).name if name else "", original, gray)
        h, w = gray.shape
        return JSONResponse(
            {"session_id": sess.session_id, "width": w, "height": h}, status_code=201
        )

    @app.post("/sessions/{sid}/rotation")
    def set_rotation(sid: str, body: RotationBody):
        sess = store.get(sid)
        if not math.isfinite(body.degrees):
            raise ApiError(
                422, "non_finite_angle", "rotation angle must be finite", "degrees"
            )
        with sess.lock:
            # absolute angle from the original; downstream coordinates are stale
            sess.gray = image_mod.rotate(
                image_mod.to_grayscale(sess.original), body.degrees
            )
            sess.rotation_degrees = body.degrees
            for run in sess.runs:
                run.invalidate()
            h, w = sess.gray.shape
        return {"width": w, "height": h}

    @app.get("/sessions/{sid}/preview.png")
    def preview(sid: str):
        sess = store.get(sid)
        with sess.lock:
            buf = io.BytesIO()
            Image.fromarray(sess.gray).save(buf, format="PNG")
        return Response(buf.getvalue(), media_type="image/png")

    @app.post("/sessions/{sid}/runs", status_code=201)
    def create_run(sid: str, body: RectBody):
        clicks = _click_pair(body.rect_clicks, "rect_clicks")
        sess = store.get(sid)
        with sess.lock:
            h, w = sess.gray.shape
            try:
                rect = lane_mod.make_rect(clicks[0], clicks[1], w, h)
            except DegenerateSelectionError as exc:
                raise ApiError(422, exc.code, str(exc)) from exc
            run = RunState(run_id=len(sess.runs) + 1)
            run.rect = rect
            run.crop = lane_mod.crop(sess.gray, rect)
            sess.runs.append(run)
            return JSONResponse(
                {
                    "run_id": run.run_id,
                    "crop_width": rect.width,
                    "crop_height": rect.height,
                },
                status_code=201,
            )

    @app.post("/sessions/{sid}/runs/{rid}/marks")
    def set_marks(sid: str, rid: int, body: MarksBody):
        _require_finite(body.seed_click_y, "seed_click_y")
        _require_finite(body.front_click_y, "front_click_y")
        sess = store.get(sid)
        with sess.lock:
            run = _run_of(sess, rid)
            if run.rect is None or run.crop is None:
                raise ApiError(
                    409,
                    "missing_rect",
                    "select the lane rectangle for this run before marking",
                )
            try:
                marks = lane_mod.make_marks(
                    body.seed_click_y, body.front_click_y, run.rect.height
                )
            except CoincidentMarksError as exc:
                raise ApiError(422, exc.code, str(exc)) from exc
            run.crop.marks = marks
            run.chrom = compute_profile(run.crop)
            run.peaks = None  # marks moved; any previous peaks are stale
            return {"seed_row": marks.seed_row, "front_row": marks.front_row}

    @app.get("/sessions/{sid}/runs/{rid}/chromatogram")
    def get_chromatogram(sid: str, rid: int):
        sess = store.get(sid)
        with sess.lock:
            run = _run_of(sess, rid)
            if run.chrom is None:
                raise ApiError(
                    409,
                    "missing_marks",
                    "mark the seed and front before reading the chromatogram",
                )
            return {
                "signal": run.chrom.signal.tolist(),
                "seed_idx": run.chrom.seed_idx,
                "front_idx": run.chrom.front_idx,
            }

    @app.post("/sessions/{sid}/runs/{rid}/peaks")
    def set_peaks(sid: str, rid: int, body: PeaksBody):
        pairs = _peak_pairs(body.peak_clicks)
        try:
            mode = BaselineMode.parse(body.baseline)
        except ValueError as exc:
            raise ApiError(422, "validation_error", str(exc), "baseline") from exc
        sess = store.get(sid)
        with sess.lock:
            run = _run_of(sess, rid)
            if run.chrom is None:
                raise ApiError(
                    409, "missing_marks", "mark the seed and front before selecting peaks"
                )
            try:
                results = analyze_run(run.chrom, pairs, mode)
            except LanescanError as exc:
                raise ApiError(422, exc.code, str(exc)) from exc
            run.peaks = results
            run.baseline = mode
            run.comments = body.comments
            report_text = format_report(_report_for(sess, run))
            return {
                "peaks": [_peak_json(p) for p in results],
                "report_text": report_text,
            }

    @app.post("/sessions/{sid}/finalize")
    def finalize(sid: str):
        sess = store.get(sid)
        with sess.lock:
            completed = [r for r in sess.runs if r.peaks is not None]
            if not completed:
                raise ApiError(
                    409, "no_completed_runs", "no run has peaks selected yet"
                )
            out_dir = app.state.state_dir / Path(sess.image_name).stem
            out_dir.mkdir(parents=True, exist_ok=True)
            files = [write_grayscale(out_dir, sess.gray)]
            for run in completed:
                png_path, svg_path = write_chromatogram(
                    out_dir, run.run_id, run.chrom, run.peaks, PlotStyle()
                )
                files += [png_path, svg_path, write_report(out_dir, _report_for(sess, run))]
            return {
                "output_dir": str(out_dir),
                "files": sorted(f.name for f in files),
            }

    if static_dir is not None and Path(static_dir).is_dir():
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=str(static_dir), html=True), name="ui")

    return app


def _report_for(sess: AnalysisSession, run: RunState) -> RunReport:
    return RunReport(
        image_name=sess.image_name,
        run_number=run.run_id,
        comments=run.comments,
        baseline_mode=run.baseline,
        marks=run.crop.marks,
        rect=run.rect,
        peaks=run.peaks,
    )


def _run_of(sess: AnalysisSession, rid: int) -> RunState:
    if not 1 <= rid <= len(sess.runs):
        raise ApiError(404, "unknown_run", f"session has no run {rid}")
    return sess.runs[rid - 1]


def _peak_json(p: PeakResult) -> dict:
    return {
        "number": p.number,
        "start_idx": p.bounds.start_idx,
        "end_idx": p.bounds.end_idx,
        "area": p.area,
        "percent": p.percent,
        "apex_idx": p.apex_idx,
        "rf": p.rf,
    }


def _click_pair(clicks: list[list[float]], field_name: str) -> list[tuple[float, float]]:
    if len(clicks) != 2:
        raise ApiError(
            422, "validation_error", f"{field_name} needs exactly 2 clicks", field_name
        )
    return [_click(c, f"{field_name}[{i}]") for i, c in enumerate(clicks)]


def _peak_pairs(peak_clicks: list[list[list[float]]]) -> list[tuple]:
    if not peak_clicks:
        raise ApiError(
            422, "validation_error", "peak_clicks must not be empty", "peak_clicks"
        )
    pairs = []
    for i, pair in enumerate(peak_clicks):
        if len(pair) != 2:
            raise ApiError(
                422,
                "validation_error",
                f"peak_clicks[{i}] needs exactly 2 clicks",
                f"peak_clicks[{i}]",
            )
        pairs.append(
            (_click(pair[0], f"peak_clicks[{i}][0]"), _click(pair[1], f"peak_clicks[{i}][1]"))
        )
    return pairs


def _click(point: list[float], where: str) -> tuple[float, float]:
    if len(point) != 2:
        raise ApiError(
            422, "validation_error", f"{where} must be an [x, y] pair", where
        )
    x, y = float(point[0]), float(point[1])
    if not (math.isfinite(x) and math.isfinite(y)):
        raise ApiError(422, "validation_error", f"{where} must be finite", where)
    return (x, y)


def _require_finite(value: float, field_name: str):
    if not math.isfinite(value):
        raise ApiError(
            422, "validation_error", f"{field_name} must be finite", field_name
        )
