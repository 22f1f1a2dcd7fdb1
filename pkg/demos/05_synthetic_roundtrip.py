"""
Synthetic plates as a measuring stick
=====================================

The generator renders Gaussian spots with a known Rf and a known share
of the lane's total area, so the whole pipeline can be checked against
exact ground truth.  Amplitude x sigma sets each spot's area weight.
"""

from lanescan import (
    LaneSpec,
    PlateSpec,
    SpotSpec,
    analyze_run,
    compute_profile,
    crop,
    generate_plate,
    make_marks,
    make_rect,
    to_grayscale,
)

spec = PlateSpec(
    width=120,
    height=420,
    lanes=(
        LaneSpec(
            x0=20, x1=60, seed_row=390, front_row=30,
            spots=(
                SpotSpec(center_rf=0.2, amplitude=150.0, sigma=4.0),
                SpotSpec(center_rf=0.5, amplitude=90.0, sigma=6.0),
                SpotSpec(center_rf=0.8, amplitude=60.0, sigma=5.0),
            ),
        ),
    ),
    background_gray=255,
    noise_sigma=0.0,
)
rgb, truth = generate_plate(spec, rng_seed=5)

print("ground truth:")
for k, spot in enumerate(truth.lanes[0].spots, start=1):
    print(f"  spot {k}: Rf {spot.center_rf:.3f}, fraction {spot.expected_fraction:.4f}")

# push the plate through the full pipeline
gray = to_grayscale(rgb)
rect = make_rect((20, 0), (59.9, 419.9), spec.width, spec.height)
lane = crop(gray, rect)
lane.marks = make_marks(390.0, 30.0, rect.height)
chrom = compute_profile(lane)

# generous bounds: cut halfway between adjacent spots
span = chrom.front_idx - chrom.seed_idx
centers = [chrom.seed_idx + s.center_rf * span for s in spec.lanes[0].spots]
cuts = [0.0]
cuts += [(a + b) / 2 for a, b in zip(centers, centers[1:])]
cuts.append(float(len(chrom) - 1))
clicks = [((cuts[i], 0), (cuts[i + 1], 0)) for i in range(len(centers))]

print("recovered:")
for p, spot in zip(analyze_run(chrom, clicks), truth.lanes[0].spots):
    drift_pct = p.percent - spot.expected_fraction * 100
    drift_rf = p.rf - spot.center_rf
    print(
        f"  peak {p.number}: Rf {p.rf:.3f} ({drift_rf:+.4f}), "
        f"{p.percent:.2f}% ({drift_pct:+.2f} points)"
    )
