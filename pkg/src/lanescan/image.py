"""Plate image decoding, grayscale conversion, and rotation correction.

Images are numpy arrays in row-major order with row 0 at the TOP of the
plate; larger row indices sit lower on the plate (seed side).  RGB images
have shape (height, width, 3), grayscale images (height, width), both uint8.
"""

from __future__ import annotations

import io
import math
from pathlib import Path

import numpy as np
from PIL import Image, UnidentifiedImageError

from .errors import FileUnreadableError, NonFiniteAngleError, UnsupportedFormatError

# Integer form of the Rec. 601 luma weights: (299 R + 587 G + 114 B + 500) // 1000
# is round-half-up of 0.299 R + 0.587 G + 0.114 B without float noise.
_LUMA = (299, 587, 114)

# Pillow modes holding more than 8 bits per sample; only the high byte is kept.
_DEEP_GRAY_MODES = {"I", "I;16", "I;16B", "I;16L", "I;16N"}

BACKGROUND_GRAY = 255  # plates are light; uncovered canvas must not read as signal


def decode_image(data: bytes) -> np.ndarray:
    """Decode raw PNG/JPEG/BMP/TIFF bytes into an (h, w, 3) uint8 RGB array.

    16-bit sources keep only their high byte, grayscale sources expand to
    neutral RGB, and alpha is composited over white.
    """
    try:
        img = Image.open(io.BytesIO(data))
        img.load()
    except UnidentifiedImageError as exc:
        raise UnsupportedFormatError(f"not a decodable image: {exc}") from exc
    except OSError as exc:
        raise UnsupportedFormatError(f"corrupt image data: {exc}") from exc

    if img.mode in _DEEP_GRAY_MODES:
        gray = np.asarray(img, dtype=np.int64) >> 8
        gray = np.clip(gray, 0, 255).astype(np.uint8)
        return np.repeat(gray[:, :, None], 3, axis=2)
    if img.mode in ("P", "PA"):
        img = img.convert("RGBA")
    if img.mode in ("RGBA", "LA"):
        white = Image.new("RGBA", img.size, (255, 255, 255, 255))
        img = Image.alpha_composite(white, img.convert("RGBA")).convert("RGB")
    elif img.mode != "RGB":
        img = img.convert("RGB")
    return np.asarray(img, dtype=np.uint8)


def load_image(path) -> np.ndarray:
    """Read a plate scan from disk; see :func:`decode_image` for conventions."""
    try:
        data = Path(path).read_bytes()
    except (FileNotFoundError, PermissionError, IsADirectoryError) as exc:
        raise FileUnreadableError(f"cannot read {path}: {exc}") from exc
    return decode_image(data)


def to_grayscale(img: np.ndarray) -> np.ndarray:
    """Convert an RGB scan to 8-bit grayscale (Rec. 601 luma, round half-up)."""
    rgb = np.asarray(img)
    if rgb.ndim != 3 or rgb.shape[2] != 3:
        raise ValueError(f"expected an (h, w, 3) RGB array, got shape {rgb.shape}")
    r, g, b = (rgb[:, :, i].astype(np.int64) for i in range(3))
    gray = (_LUMA[0] * r + _LUMA[1] * g + _LUMA[2] * b + 500) // 1000
    return gray.astype(np.uint8)


def rotate(img: np.ndarray, angle: float) -> np.ndarray:
    """Rotate a grayscale image counterclockwise about its center.

    The output canvas is the ceil of the axis-aligned bounding box of the
    rotated extent; canvas the source does not cover is filled with white
    (255, the plate background).  Exact multiples of 90 degrees take a
    lossless pixel-permutation path; every other angle is resampled with
    bilinear interpolation via inverse mapping.
    """
    if not math.isfinite(angle):
        raise NonFiniteAngleError(f"rotation angle must be finite, got {angle!r}")
    gray = np.asarray(img, dtype=np.uint8)
    if gray.ndim != 2:
        raise ValueError(f"expected an (h, w) grayscale array, got shape {gray.shape}")

    turns = angle % 360.0
    if turns % 90.0 == 0.0:
        return np.rot90(gray, int(turns // 90.0)).copy()

    rad = math.radians(turns)
    c, s = math.cos(rad), math.sin(rad)
    h, w = gray.shape
    out_w = math.ceil(w * abs(c) + h * abs(s))
    out_h = math.ceil(w * abs(s) + h * abs(c))

    yo, xo = np.indices((out_h, out_w), dtype=np.float64)
    dx = xo - (out_w - 1) / 2.0
    dy = yo - (out_h - 1) / 2.0
    # Inverse of the display-space (y grows downward) CCW rotation.
    xs = c * dx - s * dy + (w - 1) / 2.0
    ys = s * dx + c * dy + (h - 1) / 2.0

    x0 = np.floor(xs).astype(np.int64)
    y0 = np.floor(ys).astype(np.int64)
    fx = xs - x0
    fy = ys - y0

    def tap(yi: np.ndarray, xi: np.ndarray) -> np.ndarray:
        inside = (xi >= 0) & (xi < w) & (yi >= 0) & (yi < h)
        vals = gray[np.clip(yi, 0, h - 1), np.clip(xi, 0, w - 1)].astype(np.float64)
        return np.where(inside, vals, float(BACKGROUND_GRAY))

    acc = (
        tap(y0, x0) * (1.0 - fx) * (1.0 - fy)
        + tap(y0, x0 + 1) * fx * (1.0 - fy)
        + tap(y0 + 1, x0) * (1.0 - fx) * fy
        + tap(y0 + 1, x0 + 1) * fx * fy
    )
    return np.clip(np.floor(acc + 0.5), 0, 255).astype(np.uint8)
