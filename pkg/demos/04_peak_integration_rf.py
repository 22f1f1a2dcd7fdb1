"""
Peak picking, trapezoid areas, percentages, Rf
==============================================

Peaks are defined by a start click and an end click on the chromatogram;
only the x position matters because the analysis snaps the click onto
the curve.  The area under each peak comes from the trapezoid rule, the
percentage is its share of the total selected area, and Rf is the apex
position between seed and front.
"""

from pathlib import Path

from lanescan import (
    BaselineMode,
    LaneSpec,
    PlateSpec,
    PlotStyle,
    SpotSpec,
    analyze_run,
    compute_profile,
    crop,
    generate_plate,
    make_marks,
    make_rect,
    render_chromatogram,
    snap_click,
    to_grayscale,
)
from lanescan.errors import OverlappingPeaksError

out = Path("demo_output")
out.mkdir(exist_ok=True)

spec = PlateSpec(
    width=120,
    height=400,
    lanes=(LaneSpec(x0=20, x1=60, seed_row=370, front_row=30,
                    spots=(SpotSpec(0.3, 120.0, 5.0), SpotSpec(0.7, 60.0, 5.0))),),
)
gray = to_grayscale(generate_plate(spec, rng_seed=4)[0])
rect = make_rect((20, 0), (59.9, 399.9), 120, 400)
lane = crop(gray, rect)
lane.marks = make_marks(370.0, 30.0, rect.height)
chrom = compute_profile(lane)

# the click height is irrelevant: both land on the same curve sample
assert snap_click(chrom, 131.0, 9999.0) == snap_click(chrom, 131.0, -9999.0)

# two peaks: seed-side spot up to the valley, valley to the front side
clicks = [((0, 50.0), (199, -3.0)), ((199, 800.0), (399, 0.0))]
results = analyze_run(chrom, clicks, BaselineMode.RAW)
for p in results:
    print(f"peak {p.number}: area {p.area:9.2f}  {p.percent:6.2f}%  Rf {p.rf:.3f}")

# overlapping selections are refused so they can be corrected
try:
    analyze_run(chrom, [((0, 0), (250, 0)), ((199, 0), (399, 0))])
except OverlappingPeaksError as exc:
    print(f"re-ask: {exc}")

# chord-subtracted baseline is available for plates with background haze
chord = analyze_run(chrom, clicks, BaselineMode.LINEAR_CHORD)
print(f"linear-chord percents: {[round(p.percent, 2) for p in chord]}")

png, _ = render_chromatogram(chrom, results, PlotStyle())
(out / "peaks.png").write_bytes(png)
print(f"wrote {out}/peaks.png (numbered peaks, dashed seed/front markers)")
