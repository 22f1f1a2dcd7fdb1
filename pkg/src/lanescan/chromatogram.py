"""Lane crop to 1-D chromatogram of mean inverted intensity.

Index 0 of the signal is the BOTTOM crop row (seed side) and the index
grows toward the solvent front, so it reads directly as migration
distance in pixels.  Darker (stained) spots produce larger samples.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .lane import LaneCrop


@dataclass(frozen=True)
class Chromatogram:
    """Mean inverted-intensity profile of one run, sampled at 1 px spacing."""

    signal: np.ndarray  # float64, one sample per crop row, values in [0, 255]
    seed_idx: int
    front_idx: int

    def __post_init__(self):
        # private copy so freezing it never touches a caller-owned array
        sig = np.array(self.signal, dtype=np.float64, copy=True)
        object.__setattr__(self, "signal", sig)
        if sig.ndim != 1 or sig.shape[0] < 2:
            raise ValueError("signal must be 1-D with at least two samples")
        if np.any(sig < 0.0) or np.any(sig > 255.0):
            raise ValueError("signal values must lie in [0, 255]")
        if not 0 <= self.seed_idx < self.front_idx <= sig.shape[0] - 1:
            raise ValueError(
                f"need 0 <= seed_idx < front_idx <= {sig.shape[0] - 1}, "
                f"got seed={self.seed_idx} front={self.front_idx}"
            )
        sig.setflags(write=False)

    def __len__(self) -> int:
        return self.signal.shape[0]

    def row_of(self, idx: int) -> int:
        """Crop row corresponding to a signal index."""
        return len(self) - 1 - idx


def compute_profile(crop: LaneCrop) -> Chromatogram:
    """Average 255 - gray across the lane width, bottom crop row first."""
    if crop.marks is None:
        raise ValueError("crop has no seed/front marks yet")
    inverted = 255.0 - crop.pixels.astype(np.float64)
    signal = inverted.mean(axis=1)[::-1]
    height = crop.pixels.shape[0]
    return Chromatogram(
        signal=signal,
        seed_idx=height - 1 - crop.marks.seed_row,
        front_idx=height - 1 - crop.marks.front_row,
    )
