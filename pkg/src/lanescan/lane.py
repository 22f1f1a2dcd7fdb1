"""Run selection: lane rectangle from two clicks, crop, seed/front marks."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import (
    CoincidentMarksError,
    DegenerateSelectionError,
    RectOutOfBoundsError,
)


@dataclass(frozen=True)
class LaneRect:
    """Pixel rectangle: x0/y0 inclusive top-left, x1/y1 exclusive bottom-right."""

    x0: int
    y0: int
    x1: int
    y1: int

    def __post_init__(self):
        if not (0 <= self.x0 < self.x1 and 0 <= self.y0 < self.y1):
            raise ValueError(f"malformed rectangle {self}")
        if self.y1 - self.y0 < 2:
            # seed and front need distinct rows inside the crop
            raise ValueError("lane rectangle must be at least 2 rows tall")

    @property
    def width(self) -> int:
        return self.x1 - self.x0

    @property
    def height(self) -> int:
        return self.y1 - self.y0


@dataclass(frozen=True)
class LaneMarks:
    """Seed and solvent-front rows within a crop; row 0 is the crop top."""

    seed_row: int
    front_row: int

    def __post_init__(self):
        if not 0 <= self.front_row < self.seed_row:
            raise ValueError(
                "seed must lie strictly below the front (larger row index)"
            )


@dataclass
class LaneCrop:
    """A cropped run plus, once step 6 completes, its seed/front marks."""

    rect: LaneRect
    pixels: np.ndarray  # (rect.height, rect.width) uint8
    marks: Optional[LaneMarks] = None

    def __post_init__(self):
        if self.pixels.shape != (self.rect.height, self.rect.width):
            raise ValueError(
                f"crop pixels {self.pixels.shape} do not match rect "
                f"{(self.rect.height, self.rect.width)}"
            )


def make_rect(click_a, click_b, image_w: int, image_h: int) -> LaneRect:
    """Build the lane rectangle from two opposite-corner clicks.

    Clicks are clamped into the image, floored to pixel indices, and
    normalized so either corner order is accepted.  A selection with zero
    width or fewer than two rows is rejected so the caller can re-prompt.
    """
    ax, ay = _clamped_pixel(click_a, image_w, image_h)
    bx, by = _clamped_pixel(click_b, image_w, image_h)
    if ax == bx:
        raise DegenerateSelectionError(
            "selection has zero width; click two opposite corners"
        )
    y0, y1 = min(ay, by), max(ay, by) + 1
    if y1 - y0 < 2:
        raise DegenerateSelectionError(
            "selection must span at least two rows; click two opposite corners"
        )
    return LaneRect(min(ax, bx), y0, max(ax, bx) + 1, y1)


def _clamped_pixel(click, image_w: int, image_h: int) -> tuple[int, int]:
    x, y = click
    if not (math.isfinite(x) and math.isfinite(y)):
        raise DegenerateSelectionError(f"click coordinates must be finite, got {click}")
    xi = int(math.floor(min(max(float(x), 0.0), float(image_w - 1))))
    yi = int(math.floor(min(max(float(y), 0.0), float(image_h - 1))))
    return xi, yi


def crop(img: np.ndarray, rect: LaneRect) -> LaneCrop:
    """Cut the rectangle out of the grayscale image, pixel-exact."""
    h, w = img.shape
    if rect.x1 > w or rect.y1 > h:
        raise RectOutOfBoundsError(f"{rect} exceeds the {w}x{h} image")
    return LaneCrop(rect, img[rect.y0 : rect.y1, rect.x0 : rect.x1].copy())


def make_marks(seed_click_y: float, front_click_y: float, crop_height: int) -> LaneMarks:
    """Turn the two mark clicks into seed/front rows, order-insensitively.

    Clicks are clamped into the crop and rounded to the nearest row; the
    lower click (larger row index) always becomes the seed.
    """
    a = _rounded_row(seed_click_y, crop_height)
    b = _rounded_row(front_click_y, crop_height)
    if a == b:
        raise CoincidentMarksError(
            f"seed and front both round to row {a}; click two distinct rows"
        )
    return LaneMarks(seed_row=max(a, b), front_row=min(a, b))


def _rounded_row(y: float, crop_height: int) -> int:
    if not math.isfinite(y):
        raise CoincidentMarksError(f"mark click must be finite, got {y!r}")
    clamped = min(max(float(y), 0.0), float(crop_height - 1))
    return int(math.floor(clamped + 0.5))
