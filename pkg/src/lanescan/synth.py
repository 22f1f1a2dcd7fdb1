"""Synthetic TLC plates with analytically known ground truth.

Spots are Gaussian along the migration axis and uniform across the lane
width, so each spot contributes amplitude*sigma*sqrt(2*pi) of profile
area and its expected share of a lane is amplitude*sigma over the lane's
total.  Generation is deterministic for a fixed (spec, rng_seed).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import jsonschema
import numpy as np

from .errors import PlateSpecError, SessionSchemaError


@dataclass(frozen=True)
class SpotSpec:
    """One compound spot: position as an Rf fraction, depth, Gaussian width."""

    center_rf: float  # fraction of the seed-to-front distance, in [0, 1]
    amplitude: float  # gray-level depth of the spot, in (0, 255]
    sigma: float      # Gaussian width along the migration axis, pixels

    def __post_init__(self):
        if not 0.0 <= self.center_rf <= 1.0:
            raise PlateSpecError(f"center_rf {self.center_rf} outside [0, 1]")
        if not 0.0 < self.amplitude <= 255.0:
            raise PlateSpecError(f"amplitude {self.amplitude} outside (0, 255]")
        if not self.sigma > 0.0:
            raise PlateSpecError(f"sigma must be positive, got {self.sigma}")


@dataclass(frozen=True)
class LaneSpec:
    """One lane: column range [x0, x1), seed/front rows, and its spots."""

    x0: int
    x1: int
    seed_row: int
    front_row: int
    spots: tuple[SpotSpec, ...]

    def __post_init__(self):
        object.__setattr__(self, "spots", tuple(self.spots))
        if self.x1 <= self.x0:
            raise PlateSpecError(f"lane x-range [{self.x0}, {self.x1}) is empty")
        if self.front_row >= self.seed_row:
            raise PlateSpecError(
                f"seed_row ({self.seed_row}) must exceed front_row ({self.front_row}); "
                "the seed sits below the front"
            )


@dataclass(frozen=True)
class PlateSpec:
    """Full synthetic plate description."""

    width: int
    height: int
    lanes: tuple[LaneSpec, ...]
    background_gray: int = 255
    noise_sigma: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "lanes", tuple(self.lanes))
        if self.width < 1 or self.height < 2:
            raise PlateSpecError(f"plate must be at least 1x2, got {self.width}x{self.height}")
        if not 0 <= self.background_gray <= 255:
            raise PlateSpecError(f"background_gray {self.background_gray} outside [0, 255]")
        if self.noise_sigma < 0.0:
            raise PlateSpecError(f"noise_sigma must be >= 0, got {self.noise_sigma}")
        for k, one in enumerate(self.lanes):
            if one.x0 < 0 or one.x1 > self.width:
                raise PlateSpecError(
                    f"lanes[{k}] x-range [{one.x0}, {one.x1}) outside plate width {self.width}"
                )
            if not 0 <= one.front_row < one.seed_row <= self.height - 1:
                raise PlateSpecError(
                    f"lanes[{k}] rows (seed {one.seed_row}, front {one.front_row}) "
                    f"outside plate height {self.height}"
                )


@dataclass(frozen=True)
class SpotTruth:
    center_rf: float
    amplitude: float
    sigma: float
    expected_fraction: float


@dataclass(frozen=True)
class LaneTruth:
    spots: tuple[SpotTruth, ...]


@dataclass(frozen=True)
class GroundTruth:
    """Per-lane expected Rf and area fraction for every spot."""

    lanes: tuple[LaneTruth, ...]


def generate_plate(spec: PlateSpec, rng_seed: int) -> tuple[np.ndarray, GroundTruth]:
    """Render the plate as a neutral-RGB scan and return its ground truth.

    Within each lane's x-range the gray level is
    ``clamp(background - sum_of_gaussians + noise, 0, 255)``; everything
    outside the lanes stays at the background level.
    """
    rng = np.random.default_rng(rng_seed)
    canvas = np.full((spec.height, spec.width), float(spec.background_gray))
    rows = np.arange(spec.height, dtype=np.float64)

    truths = []
    for one in spec.lanes:
        depth = np.zeros(spec.height)
        for spot in one.spots:
            spot_row = one.seed_row - spot.center_rf * (one.seed_row - one.front_row)
            depth += spot.amplitude * np.exp(
                -((rows - spot_row) ** 2) / (2.0 * spot.sigma**2)
            )
        band = canvas[:, one.x0 : one.x1]
        band -= depth[:, None]
        if spec.noise_sigma > 0.0:
            band += rng.normal(0.0, spec.noise_sigma, size=band.shape)

        weights = [s.amplitude * s.sigma for s in one.spots]
        total = sum(weights)
        truths.append(
            LaneTruth(
                tuple(
                    SpotTruth(s.center_rf, s.amplitude, s.sigma, wt / total)
                    for s, wt in zip(one.spots, weights)
                )
            )
        )

    gray = np.clip(np.floor(canvas + 0.5), 0, 255).astype(np.uint8)
    rgb = np.repeat(gray[:, :, None], 3, axis=2)
    return rgb, GroundTruth(tuple(truths))


def truth_manifest(truth: GroundTruth) -> dict:
    """Ground truth as a JSON-ready dict: lanes -> spots -> fields."""
    return {
        "lanes": [
            {
                "spots": [
                    {
                        "center_rf": s.center_rf,
                        "amplitude": s.amplitude,
                        "sigma": s.sigma,
                        "expected_fraction": s.expected_fraction,
                    }
                    for s in one.spots
                ]
            }
            for one in truth.lanes
        ]
    }


_SPOT_SCHEMA = {
    "type": "object",
    "required": ["center_rf", "amplitude", "sigma"],
    "additionalProperties": False,
    "properties": {
        "center_rf": {"type": "number"},
        "amplitude": {"type": "number"},
        "sigma": {"type": "number"},
    },
}

_PLATE_SCHEMA = {
    "type": "object",
    "required": ["width", "height", "lanes"],
    "additionalProperties": False,
    "properties": {
        "width": {"type": "integer"},
        "height": {"type": "integer"},
        "background_gray": {"type": "integer"},
        "noise_sigma": {"type": "number"},
        "lanes": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["x0", "x1", "seed_row", "front_row", "spots"],
                "additionalProperties": False,
                "properties": {
                    "x0": {"type": "integer"},
                    "x1": {"type": "integer"},
                    "seed_row": {"type": "integer"},
                    "front_row": {"type": "integer"},
                    "spots": {"type": "array", "items": _SPOT_SCHEMA},
                },
            },
        },
    },
}


def parse_plate_spec(doc: dict) -> PlateSpec:
    """Validate a plate-spec JSON document and build the PlateSpec."""
    try:
        jsonschema.validate(doc, _PLATE_SCHEMA)
    except jsonschema.ValidationError as exc:
        field = "$" + "".join(
            f"[{p}]" if isinstance(p, int) else f".{p}" for p in exc.absolute_path
        )
        raise SessionSchemaError(f"{field}: {exc.message}", field=field) from exc
    return PlateSpec(
        width=doc["width"],
        height=doc["height"],
        background_gray=doc.get("background_gray", 255),
        noise_sigma=float(doc.get("noise_sigma", 0.0)),
        lanes=tuple(
            LaneSpec(
                x0=lane["x0"],
                x1=lane["x1"],
                seed_row=lane["seed_row"],
                front_row=lane["front_row"],
                spots=tuple(
                    SpotSpec(
                        center_rf=float(s["center_rf"]),
                        amplitude=float(s["amplitude"]),
                        sigma=float(s["sigma"]),
                    )
                    for s in lane["spots"]
                ),
            )
            for lane in doc["lanes"]
        ),
    )
