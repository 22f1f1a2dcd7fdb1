"""
Loading a plate scan, grayscale conversion, rotation correction
===============================================================

A scanned TLC plate arrives as a color image.  Everything downstream
works on the 8-bit grayscale version, and a crooked scan can be fixed
with a counterclockwise rotation before any lanes are selected.
"""

from pathlib import Path

import numpy as np
from PIL import Image

from lanescan import LaneSpec, PlateSpec, SpotSpec, generate_plate, load_image, rotate, to_grayscale

out = Path("demo_output")
out.mkdir(exist_ok=True)

# a synthetic plate stands in for a real scan
spec = PlateSpec(
    width=160,
    height=300,
    lanes=(
        LaneSpec(x0=30, x1=70, seed_row=270, front_row=30,
                 spots=(SpotSpec(0.4, 110.0, 5.0),)),
        LaneSpec(x0=90, x1=130, seed_row=270, front_row=30,
                 spots=(SpotSpec(0.6, 70.0, 4.0),)),
    ),
)
rgb, _ = generate_plate(spec, rng_seed=1)
Image.fromarray(rgb).save(out / "scan.png")

# load it back the way the pipeline would
plate = load_image(out / "scan.png")
print(f"loaded {plate.shape[1]}x{plate.shape[0]} RGB scan")

# grayscale: Rec. 601 luma, the working representation from here on
gray = to_grayscale(plate)
print(f"grayscale range: {gray.min()}..{gray.max()}")

# a slightly crooked scan, then the correction; the seed points must
# end up at the bottom of the image
crooked = rotate(gray, 3.5)
fixed = rotate(gray, 0.0)  # a straight scan needs angle zero only
print(f"crooked canvas grew to {crooked.shape[1]}x{crooked.shape[0]}")
assert np.array_equal(fixed, gray)

# right angles are lossless pixel permutations
sideways = rotate(gray, 90.0)
assert np.array_equal(rotate(sideways, -90.0), gray)

Image.fromarray(crooked).save(out / "crooked.png")
Image.fromarray(gray).save(out / "grayscale.png")
print(f"wrote {out}/scan.png, crooked.png, grayscale.png")
