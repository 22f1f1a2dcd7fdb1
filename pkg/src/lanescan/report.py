"""Per-image output bundle: grayscale PNG, annotated chromatogram, text report.

Bundle layout for an image ``plate.png`` analyzed with N runs::

    plate/grayscale.png
    plate/chromatogram_run<k>.png   and  .svg     (k = 1..N)
    plate/results_run<k>.txt

The text grammar is fixed: four header lines, a tab-separated column
header, then one tab-separated row per peak with areas at 4 decimals,
percents at 2, Rf at 3, all rounded half-up.
"""

from __future__ import annotations

import io
from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal
from pathlib import Path
from typing import Sequence

import numpy as np
from matplotlib import rc_context
from matplotlib.figure import Figure
from PIL import Image

from .chromatogram import Chromatogram
from .lane import LaneMarks, LaneRect
from .peaks import BaselineMode, PeakResult


@dataclass
class RunReport:
    """Everything one analyzed run reports, plus provenance metadata."""

    image_name: str
    run_number: int
    comments: str
    baseline_mode: BaselineMode
    marks: LaneMarks
    rect: LaneRect
    peaks: list[PeakResult]

    def __post_init__(self):
        if self.run_number < 1:
            raise ValueError("run_number is 1-based")
        numbers = [p.number for p in self.peaks]
        if numbers != list(range(1, len(numbers) + 1)):
            raise ValueError(f"peak numbers must be 1..n contiguous, got {numbers}")


@dataclass(frozen=True)
class PlotStyle:
    """Chromatogram rendering knobs: color, axis labels, font, canvas size."""

    line_color: str = "#1f77b4"
    x_label: str = "distance from seed (px)"
    y_label: str = "intensity"
    font_size: float = 10.0
    width_px: int = 800
    height_px: int = 480

    def __post_init__(self):
        if self.font_size <= 0:
            raise ValueError("font size must be positive")
        if self.width_px <= 0 or self.height_px <= 0:
            raise ValueError("output pixel dimensions must be positive")


def output_dir_for(image_path) -> Path:
    """Sibling directory named after the image stem; created if absent.

    Existing contents are preserved so repeat runs of the same image
    append rather than clobber.
    """
    p = Path(image_path)
    if not p.stem:
        raise ValueError(f"image path {image_path!r} has no file name")
    out = p.parent / p.stem
    out.mkdir(parents=True, exist_ok=True)
    return out


def write_grayscale(out_dir, gray: np.ndarray) -> Path:
    """Save the working grayscale image as a lossless 8-bit PNG."""
    path = Path(out_dir) / "grayscale.png"
    Image.fromarray(np.asarray(gray, dtype=np.uint8)).save(path, format="PNG")
    return path


def render_chromatogram(
    chrom: Chromatogram,
    peaks: Sequence[PeakResult],
    style: PlotStyle = PlotStyle(),
) -> tuple[bytes, str]:
    """Render the annotated chromatogram; returns (png_bytes, svg_text).

    Each peak span is shaded and numbered at its apex; dashed verticals
    mark the seed and the solvent front.  SVG keeps text as text nodes
    and every peak number carries the gid ``peak-label-<n>``, so renders
    are assertable without image diffing.
    """
    dpi = 100.0
    with rc_context({"svg.fonttype": "none", "font.size": style.font_size}):
        fig = Figure(figsize=(style.width_px / dpi, style.height_px / dpi), dpi=dpi)
        ax = fig.subplots()
        x = np.arange(len(chrom))
        ax.plot(x, chrom.signal, color=style.line_color, linewidth=1.2)
        ax.axvline(chrom.seed_idx, linestyle="--", color="0.4", linewidth=0.9)
        ax.axvline(chrom.front_idx, linestyle="--", color="0.4", linewidth=0.9)
        for peak in peaks:
            ax.axvspan(
                peak.bounds.start_idx,
                peak.bounds.end_idx,
                color=style.line_color,
                alpha=0.15,
            )
            label = ax.annotate(
                str(peak.number),
                xy=(peak.apex_idx, float(chrom.signal[peak.apex_idx])),
                xytext=(0, 6),
                textcoords="offset points",
                ha="center",
                fontsize=style.font_size,
            )
            label.set_gid(f"peak-label-{peak.number}")
        ax.set_xlabel(style.x_label)
        ax.set_ylabel(style.y_label)
        ax.set_xlim(0, len(chrom) - 1)
        fig.tight_layout()

        png_buf = io.BytesIO()
        fig.savefig(png_buf, format="png")
        svg_buf = io.BytesIO()
        fig.savefig(svg_buf, format="svg", metadata={"Date": None})
    return png_buf.getvalue(), svg_buf.getvalue().decode("utf-8")


def write_chromatogram(
    out_dir,
    run_number: int,
    chrom: Chromatogram,
    peaks: Sequence[PeakResult],
    style: PlotStyle = PlotStyle(),
) -> tuple[Path, Path]:
    """Write ``chromatogram_run<N>.png`` and ``.svg``; newest run wins."""
    png_bytes, svg_text = render_chromatogram(chrom, peaks, style)
    png_path = Path(out_dir) / f"chromatogram_run{run_number}.png"
    svg_path = Path(out_dir) / f"chromatogram_run{run_number}.svg"
    png_path.write_bytes(png_bytes)
    svg_path.write_text(svg_text, encoding="utf-8")
    return png_path, svg_path


def format_report(report: RunReport) -> str:
    """Serialize a run to the text grammar (UTF-8, LF, trailing newline)."""
    flattened = (
        report.comments.replace("\r\n", "\n").replace("\r", "\n").replace("\n", "\\n")
    )
    lines = [
        f"image: {report.image_name}",
        f"run: {report.run_number}",
        f"baseline: {report.baseline_mode.value}",
        f"comments: {flattened}",
        "peak\tarea\tpercent\trf",
    ]
    for p in report.peaks:
        lines.append(
            f"{p.number}\t{_fixed(p.area, 4)}\t{_fixed(p.percent, 2)}\t{_fixed(p.rf, 3)}"
        )
    return "\n".join(lines) + "\n"


def write_report(out_dir, report: RunReport) -> Path:
    """Write ``results_run<N>.txt``; a repeat of the same run number wins."""
    path = Path(out_dir) / f"results_run{report.run_number}.txt"
    path.write_text(format_report(report), encoding="utf-8", newline="\n")
    return path


@dataclass(frozen=True)
class ParsedReport:
    """Round-trip view of a results file; rows are (number, area, percent, rf)."""

    image_name: str
    run_number: int
    baseline: str
    comments: str
    rows: tuple[tuple[int, float, float, float], ...]


def parse_report(text: str) -> ParsedReport:
    """Strict reader for the ``results_run<N>.txt`` grammar."""
    if not text.endswith("\n"):
        raise ValueError("report must end with a newline")
    lines = text.split("\n")[:-1]
    if len(lines) < 5:
        raise ValueError("report needs 4 header lines plus the column header")

    image_name = _after(lines[0], "image: ")
    run_number = int(_after(lines[1], "run: "))
    baseline = _after(lines[2], "baseline: ")
    if baseline not in ("raw", "linear"):
        raise ValueError(f"unknown baseline {baseline!r}")
    comments = _after(lines[3], "comments: ").replace("\\n", "\n")
    if lines[4] != "peak\tarea\tpercent\trf":
        raise ValueError(f"bad column header {lines[4]!r}")

    rows = []
    for line in lines[5:]:
        cells = line.split("\t")
        if len(cells) != 4:
            raise ValueError(f"peak row needs 4 tab-separated cells, got {line!r}")
        rows.append((int(cells[0]), float(cells[1]), float(cells[2]), float(cells[3])))
    return ParsedReport(image_name, run_number, baseline, comments, tuple(rows))


def _after(line: str, prefix: str) -> str:
    if not line.startswith(prefix):
        raise ValueError(f"expected line starting with {prefix!r}, got {line!r}")
    return line[len(prefix):]


def _fixed(value: float, places: int) -> str:
    """Fixed-point formatting with round-half-up on the decimal value."""
    quantum = Decimal(1).scaleb(-places)
    return str(Decimal(repr(float(value))).quantize(quantum, rounding=ROUND_HALF_UP))
