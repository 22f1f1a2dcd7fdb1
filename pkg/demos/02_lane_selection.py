"""
Selecting a run: lane rectangle, seed point, solvent front
==========================================================

One lane (one applied sample) is selected with two corner clicks,
then the seed point and the solvent front are marked inside the crop
with one click each.  Those two rows anchor every Rf value.
"""

import numpy as np

from lanescan import (
    LaneSpec,
    PlateSpec,
    SpotSpec,
    crop,
    generate_plate,
    make_marks,
    make_rect,
    to_grayscale,
)
from lanescan.errors import CoincidentMarksError, DegenerateSelectionError

spec = PlateSpec(
    width=160,
    height=300,
    lanes=(LaneSpec(x0=30, x1=70, seed_row=270, front_row=30,
                    spots=(SpotSpec(0.5, 100.0, 5.0),)),),
)
gray = to_grayscale(generate_plate(spec, rng_seed=2)[0])
h, w = gray.shape

# two opposite-corner clicks; order does not matter and the clicks are
# real-valued screen coordinates
rect = make_rect((29.6, 12.3), (70.4, 287.9), w, h)
print(f"lane rectangle: x {rect.x0}..{rect.x1}, y {rect.y0}..{rect.y1}")

lane = crop(gray, rect)
print(f"crop is {lane.rect.width}x{lane.rect.height} px")

# a selection with no width is refused so the user can re-click
try:
    make_rect((50, 10), (50, 200), w, h)
except DegenerateSelectionError as exc:
    print(f"re-ask: {exc}")

# seed and front clicks, interchangeable; the lower one becomes the seed
lane.marks = make_marks(270.0 - rect.y0, 30.0 - rect.y0, rect.height)
print(f"seed row {lane.marks.seed_row}, front row {lane.marks.front_row}")
assert lane.marks == make_marks(30.0 - rect.y0, 270.0 - rect.y0, rect.height)

# clicks landing on the same row are refused the same way
try:
    make_marks(100.2, 99.9, rect.height)
except CoincidentMarksError as exc:
    print(f"re-ask: {exc}")

assert np.array_equal(lane.pixels, gray[rect.y0:rect.y1, rect.x0:rect.x1])
