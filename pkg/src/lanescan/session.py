"""Recorded analysis sessions: JSON schema, validation, and batch replay.

A session file captures every interactive choice (rotation, lane-corner
clicks, seed/front clicks, peak clicks, comments) so a whole analysis
replays deterministically with no prompts.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import jsonschema

from . import image as image_mod
from . import lane as lane_mod
from .chromatogram import compute_profile
from .errors import LanescanError, SessionSchemaError
from .peaks import BaselineMode, analyze_run
from .report import (
    PlotStyle,
    RunReport,
    output_dir_for,
    write_chromatogram,
    write_grayscale,
    write_report,
)

_CLICK = {
    "type": "array",
    "items": {"type": "number"},
    "minItems": 2,
    "maxItems": 2,
}

SESSION_SCHEMA = {
    "type": "object",
    "required": ["image", "runs"],
    "additionalProperties": False,
    "properties": {
        "image": {"type": "string", "minLength": 1},
        "rotation_degrees": {"type": "number"},
        "baseline": {"enum": ["raw", "linear"]},
        "runs": {
            "type": "array",
            "minItems": 1,
            "items": {
                "type": "object",
                "required": ["rect_clicks", "seed_click_y", "front_click_y", "peak_clicks"],
                "additionalProperties": False,
                "properties": {
                    "rect_clicks": {
                        "type": "array",
                        "items": _CLICK,
                        "minItems": 2,
                        "maxItems": 2,
                    },
                    "seed_click_y": {"type": "number"},
                    "front_click_y": {"type": "number"},
                    "peak_clicks": {
                        "type": "array",
                        "minItems": 1,
                        "items": {
                            "type": "array",
                            "items": _CLICK,
                            "minItems": 2,
                            "maxItems": 2,
                        },
                    },
                    "comments": {"type": "string"},
                },
            },
        },
    },
}


@dataclass(frozen=True)
class RunSpec:
    """The clicks and comments of one recorded run."""

    rect_clicks: tuple
    seed_click_y: float
    front_click_y: float
    peak_clicks: tuple
    comments: str = ""


@dataclass(frozen=True)
class Session:
    """A validated session document."""

    image: str
    runs: tuple[RunSpec, ...]
    rotation_degrees: float = 0.0
    baseline: BaselineMode = BaselineMode.RAW


class RunAnalysisError(LanescanError):
    """An analysis step failed for one run of a session replay."""

    def __init__(self, run_index: int, cause: LanescanError):
        super().__init__(
            f"run {run_index}: {cause} (fix that entry in the session file and re-run)"
        )
        self.code = cause.code
        self.run_index = run_index
        self.cause = cause


def parse_session(doc: dict) -> Session:
    """Validate a session document against the schema and build the Session."""
    try:
        jsonschema.validate(doc, SESSION_SCHEMA)
    except jsonschema.ValidationError as exc:
        field = "$" + "".join(
            f"[{p}]" if isinstance(p, int) else f".{p}" for p in exc.absolute_path
        )
        raise SessionSchemaError(f"{field}: {exc.message}", field=field) from exc

    runs = tuple(
        RunSpec(
            rect_clicks=tuple(tuple(c) for c in r["rect_clicks"]),
            seed_click_y=float(r["seed_click_y"]),
            front_click_y=float(r["front_click_y"]),
            peak_clicks=tuple((tuple(p[0]), tuple(p[1])) for p in r["peak_clicks"]),
            comments=r.get("comments", ""),
        )
        for r in doc["runs"]
    )
    return Session(
        image=doc["image"],
        rotation_degrees=float(doc.get("rotation_degrees", 0.0)),
        baseline=BaselineMode.parse(doc.get("baseline", "raw")),
        runs=runs,
    )


def load_session(path) -> Session:
    """Read and validate a recorded session file."""
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise SessionSchemaError(f"not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise SessionSchemaError("session document must be a JSON object", field="$")
    return parse_session(doc)


@dataclass
class RunOutcome:
    """Artifacts produced for one run of a replayed session."""

    report: RunReport
    report_path: Path
    chromatogram_png: Path
    chromatogram_svg: Path


def execute_session(
    session: Session,
    *,
    session_dir=None,
    out_dir=None,
    baseline_override: Optional[BaselineMode] = None,
    style: PlotStyle = PlotStyle(),
) -> tuple[Path, list[RunOutcome]]:
    """Replay a recorded session end to end and write the output bundle.

    Relative image paths resolve against ``session_dir`` (normally the
    directory holding the session file).  ``out_dir`` overrides the
    default sibling-folder rule.  Returns the bundle directory and one
    outcome per run, numbered in session order.
    """
    image_path = Path(session.image)
    if not image_path.is_absolute() and session_dir is not None:
        image_path = Path(session_dir) / image_path

    rgb = image_mod.load_image(image_path)
    gray = image_mod.rotate(image_mod.to_grayscale(rgb), session.rotation_degrees)
    mode = baseline_override if baseline_override is not None else session.baseline

    if out_dir is not None:
        bundle_dir = Path(out_dir)
        bundle_dir.mkdir(parents=True, exist_ok=True)
    else:
        bundle_dir = output_dir_for(image_path)
    write_grayscale(bundle_dir, gray)

    h, w = gray.shape
    outcomes = []
    for run_number, run in enumerate(session.runs, start=1):
        try:
            rect = lane_mod.make_rect(run.rect_clicks[0], run.rect_clicks[1], w, h)
            lane_crop = lane_mod.crop(gray, rect)
            lane_crop.marks = lane_mod.make_marks(
                run.seed_click_y, run.front_click_y, rect.height
            )
            chrom = compute_profile(lane_crop)
            results = analyze_run(chrom, run.peak_clicks, mode)
        except LanescanError as exc:
            raise RunAnalysisError(run_number, exc) from exc

        run_report = RunReport(
            image_name=image_path.name,
            run_number=run_number,
            comments=run.comments,
            baseline_mode=mode,
            marks=lane_crop.marks,
            rect=rect,
            peaks=results,
        )
        report_path = write_report(bundle_dir, run_report)
        png_path, svg_path = write_chromatogram(
            bundle_dir, run_number, chrom, results, style
        )
        outcomes.append(RunOutcome(run_report, report_path, png_path, svg_path))
    return bundle_dir, outcomes
