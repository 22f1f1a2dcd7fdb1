"""
From a lane crop to a chromatogram
==================================

The chromatogram is the mean of 255 - gray across the lane width, one
sample per crop row, with index 0 at the bottom (the seed side).  Dark
spots become peaks whose area tracks the amount of compound.
"""

from pathlib import Path

import numpy as np

from lanescan import (
    LaneSpec,
    PlateSpec,
    PlotStyle,
    SpotSpec,
    compute_profile,
    crop,
    generate_plate,
    make_marks,
    make_rect,
    render_chromatogram,
    to_grayscale,
)

out = Path("demo_output")
out.mkdir(exist_ok=True)

spec = PlateSpec(
    width=120,
    height=400,
    lanes=(LaneSpec(x0=20, x1=60, seed_row=370, front_row=30,
                    spots=(SpotSpec(0.3, 120.0, 5.0), SpotSpec(0.7, 60.0, 5.0))),),
)
gray = to_grayscale(generate_plate(spec, rng_seed=3)[0])

rect = make_rect((20, 0), (59.9, 399.9), 120, 400)
lane = crop(gray, rect)
lane.marks = make_marks(370.0, 30.0, rect.height)

chrom = compute_profile(lane)
print(f"{len(chrom)} samples, seed at index {chrom.seed_idx}, front at {chrom.front_idx}")
print(f"peak signal {chrom.signal.max():.1f} at index {int(np.argmax(chrom.signal))}")

# white background contributes nothing
assert chrom.signal[0] < 1.0

# the rendered curve, without any peaks marked yet
png, svg = render_chromatogram(chrom, peaks=[], style=PlotStyle())
(out / "profile.png").write_bytes(png)
print(f"wrote {out}/profile.png")
