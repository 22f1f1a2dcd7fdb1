"""
Driving the HTTP analysis service
=================================

The service exposes the same workflow one endpoint per step, which is
what the browser UI talks to.  Here the app is driven in-process; in
production it runs under `lanescan serve --port 8000`.
"""

import io
from pathlib import Path

from fastapi.testclient import TestClient
from PIL import Image

from lanescan import LaneSpec, PlateSpec, SpotSpec, generate_plate
from lanescan.service import create_app

out = Path("demo_output")
out.mkdir(exist_ok=True)

spec = PlateSpec(
    width=120,
    height=400,
    lanes=(LaneSpec(x0=20, x1=60, seed_row=370, front_row=30,
                    spots=(SpotSpec(0.3, 120.0, 5.0), SpotSpec(0.7, 60.0, 5.0))),),
)
rgb, _ = generate_plate(spec, rng_seed=7)
buf = io.BytesIO()
Image.fromarray(rgb).save(buf, format="PNG")

app = create_app(state_dir=out / "service_state")
with TestClient(app) as client:
    # step 3: upload the scan
    resp = client.post("/sessions", files={"file": ("plate.png", buf.getvalue(), "image/png")})
    sid = resp.json()["session_id"]
    print(f"session {sid}: {resp.json()['width']}x{resp.json()['height']}")

    # step 4: no correction needed
    client.post(f"/sessions/{sid}/rotation", json={"degrees": 0.0})

    # step 5: lane rectangle from two corner clicks
    rid = client.post(
        f"/sessions/{sid}/runs", json={"rect_clicks": [[20, 0], [59.9, 399.9]]}
    ).json()["run_id"]

    # step 6: seed and front (either order)
    marks = client.post(
        f"/sessions/{sid}/runs/{rid}/marks",
        json={"seed_click_y": 370.0, "front_click_y": 30.0},
    ).json()
    print(f"marks: {marks}")

    # step 7: the chromatogram, then the peak clicks (y is ignored)
    chrom = client.get(f"/sessions/{sid}/runs/{rid}/chromatogram").json()
    print(f"chromatogram: {len(chrom['signal'])} samples")
    result = client.post(
        f"/sessions/{sid}/runs/{rid}/peaks",
        json={
            "peak_clicks": [[[0, 500], [199, -500]], [[199, 0], [399, 0]]],
            "baseline": "raw",
            "comments": "driven over HTTP",
        },
    ).json()
    for p in result["peaks"]:
        print(f"  peak {p['number']}: {p['percent']:.2f}%  Rf {p['rf']:.3f}")

    # step 10: persist the bundle
    final = client.post(f"/sessions/{sid}/finalize").json()
    print(f"finalized into {final['output_dir']}: {final['files']}")
