"""
Recorded sessions: the whole analysis as a replayable file
==========================================================

Every interactive choice fits in one JSON document, so an analysis can
be replayed bit-for-bit: same clicks, same snapping, same report.  The
same file drives `lanescan analyze`.
"""

import json
from pathlib import Path

from lanescan import LaneSpec, PlateSpec, SpotSpec, generate_plate, load_session, execute_session
from PIL import Image

out = Path("demo_output")
out.mkdir(exist_ok=True)

spec = PlateSpec(
    width=120,
    height=400,
    lanes=(LaneSpec(x0=20, x1=60, seed_row=370, front_row=30,
                    spots=(SpotSpec(0.3, 120.0, 5.0), SpotSpec(0.7, 60.0, 5.0))),),
)
rgb, _ = generate_plate(spec, rng_seed=6)
Image.fromarray(rgb).save(out / "batch_plate.png")

session_doc = {
    "image": "batch_plate.png",  # relative to the session file
    "rotation_degrees": 0.0,
    "baseline": "raw",
    "runs": [
        {
            "rect_clicks": [[20, 0], [59.9, 399.9]],
            "seed_click_y": 370.0,
            "front_click_y": 30.0,
            "peak_clicks": [[[0, 0], [199, 0]], [[199, 0], [399, 0]]],
            "comments": "replayed from a recorded session",
        }
    ],
}
session_path = out / "session.json"
session_path.write_text(json.dumps(session_doc, indent=2))

session = load_session(session_path)
bundle_dir, outcomes = execute_session(session, session_dir=out)

print(f"bundle written to {bundle_dir}/")
for name in sorted(p.name for p in bundle_dir.iterdir()):
    print(f"  {name}")
print()
print((outcomes[0].report_path).read_text(), end="")

# the command-line equivalent:
print("\nsame thing from the shell:")
print(f"  lanescan analyze {session_path}")
