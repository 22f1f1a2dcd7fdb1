"""Peak definition and quantification on a chromatogram.

Clicks snap onto the curve by their x value alone, areas come from the
trapezoid rule over unit-spaced samples, percentages are taken relative
to the sum of all selected peak areas, and each peak's Rf is its apex
position between the seed and front marks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

import numpy as np

from .chromatogram import Chromatogram
from .errors import (
    DegenerateFrontError,
    EmptyPeakSetError,
    InvalidBoundsError,
    OverlappingPeaksError,
    ZeroTotalAreaError,
)


class BaselineMode(Enum):
    """Integration baseline: literal area under the curve, or chord-subtracted."""

    RAW = "raw"
    LINEAR_CHORD = "linear"

    @classmethod
    def parse(cls, label: str) -> "BaselineMode":
        for mode in cls:
            if mode.value == label:
                return mode
        raise ValueError(f"unknown baseline mode {label!r}; expected 'raw' or 'linear'")


@dataclass(frozen=True)
class PeakBounds:
    """Inclusive chromatogram index range of one peak."""

    start_idx: int
    end_idx: int

    def __post_init__(self):
        if not 0 <= self.start_idx < self.end_idx:
            raise InvalidBoundsError(
                f"need 0 <= start < end, got [{self.start_idx}, {self.end_idx}]"
            )


@dataclass(frozen=True)
class PeakResult:
    """One quantified peak; ``number`` is 1-based in selection order."""

    number: int
    bounds: PeakBounds
    area: float  # signal * pixels
    percent: float
    apex_idx: int
    rf: float


def snap_click(chrom: Chromatogram, click_x: float, click_y: float = 0.0) -> tuple[int, float]:
    """Locate a click on the curve: x rounds to the nearest sample, y is ignored."""
    if not math.isfinite(click_x):
        raise InvalidBoundsError(f"click x must be finite, got {click_x!r}")
    n = len(chrom)
    x = min(max(float(click_x), 0.0), float(n - 1))
    idx = int(math.floor(x + 0.5))
    return idx, float(chrom.signal[idx])


def integrate_peak(
    chrom: Chromatogram, bounds: PeakBounds, mode: BaselineMode = BaselineMode.RAW
) -> float:
    """Trapezoid-rule area of the signal between the peak bounds.

    RAW integrates the curve as-is.  LINEAR_CHORD first subtracts the
    straight line joining the two endpoint samples, clamping each
    adjusted sample at zero so concave stretches cannot go negative.
    """
    seg = _segment(chrom, bounds)
    if mode is BaselineMode.LINEAR_CHORD:
        chord = np.linspace(seg[0], seg[-1], seg.shape[0])
        seg = np.maximum(seg - chord, 0.0)
    return float(np.sum((seg[:-1] + seg[1:]) / 2.0))


def find_apex(chrom: Chromatogram, bounds: PeakBounds) -> int:
    """Index of the maximum sample within bounds; ties break toward the seed."""
    seg = _segment(chrom, bounds)
    return bounds.start_idx + int(np.argmax(seg))


def compute_rf(apex_idx: int, seed_idx: int, front_idx: int) -> float:
    """Retention factor: apex migration relative to the solvent front's.

    Clamped to [0, 1] because peaks may be selected outside the marked span.
    """
    if seed_idx >= front_idx:
        raise DegenerateFrontError(
            f"front mark ({front_idx}) must lie beyond the seed mark ({seed_idx})"
        )
    rf = (apex_idx - seed_idx) / (front_idx - seed_idx)
    return min(max(rf, 0.0), 1.0)


def analyze_run(
    chrom: Chromatogram,
    peak_clicks: Sequence[tuple],
    mode: BaselineMode = BaselineMode.RAW,
) -> list[PeakResult]:
    """Quantify every selected peak: area, percent of total area, apex Rf.

    ``peak_clicks`` is an ordered list of (start_click, end_click) pairs,
    each click an (x, y) point; y never matters and either click may come
    first.  Peaks may touch at a single shared sample, but interior
    overlap is rejected so the selection can be corrected and re-sent.
    """
    if not peak_clicks:
        raise EmptyPeakSetError("select at least one peak")

    bounds_list: list[PeakBounds] = []
    for pair_no, (start_click, end_click) in enumerate(peak_clicks, start=1):
        i, _ = snap_click(chrom, *start_click)
        j, _ = snap_click(chrom, *end_click)
        if i == j:
            raise InvalidBoundsError(
                f"peak {pair_no} collapses to a single sample at index {i}; re-select it"
            )
        bounds_list.append(PeakBounds(min(i, j), max(i, j)))

    ordered = sorted(bounds_list, key=lambda b: (b.start_idx, b.end_idx))
    for prev, nxt in zip(ordered, ordered[1:]):
        if nxt.start_idx < prev.end_idx:
            raise OverlappingPeaksError(
                f"peaks [{prev.start_idx},{prev.end_idx}] and "
                f"[{nxt.start_idx},{nxt.end_idx}] overlap; re-select the peaks"
            )

    areas = [integrate_peak(chrom, b, mode) for b in bounds_list]
    total = sum(areas)
    if total <= 0.0:
        raise ZeroTotalAreaError(
            "every selected peak has zero area; percentages are undefined"
        )

    results = []
    for number, (bounds, area) in enumerate(zip(bounds_list, areas), start=1):
        apex = find_apex(chrom, bounds)
        results.append(
            PeakResult(
                number=number,
                bounds=bounds,
                area=area,
                percent=100.0 * area / total,
                apex_idx=apex,
                rf=compute_rf(apex, chrom.seed_idx, chrom.front_idx),
            )
        )
    return results


def _segment(chrom: Chromatogram, bounds: PeakBounds) -> np.ndarray:
    if bounds.end_idx > len(chrom) - 1:
        raise InvalidBoundsError(
            f"bounds [{bounds.start_idx}, {bounds.end_idx}] exceed "
            f"signal length {len(chrom)}"
        )
    return chrom.signal[bounds.start_idx : bounds.end_idx + 1]
