"""Batch command line: session replay, synthetic plates, API server.

Exit codes: 0 success, 2 schema violation, 3 analysis error, 4 cannot
bind the requested port.
"""

from __future__ import annotations

import argparse
import json
import os
import socket
import sys
from pathlib import Path

from PIL import Image

from . import session as session_mod
from . import synth as synth_mod
from .errors import LanescanError, PlateSpecError, SessionSchemaError
from .peaks import BaselineMode

EXIT_OK = 0
EXIT_SCHEMA = 2
EXIT_ANALYSIS = 3
EXIT_ENVIRONMENT = 4


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lanescan",
        description="Quantitative TLC densitometry: replay sessions, "
        "generate synthetic plates, or serve the analysis API.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    analyze = sub.add_parser("analyze", help="replay a recorded session file")
    analyze.add_argument("session", help="path to the session JSON file")
    analyze.add_argument(
        "--baseline",
        choices=["raw", "linear"],
        help="override the session's baseline mode",
    )
    analyze.add_argument(
        "--out-dir", help="write the bundle here instead of next to the image"
    )

    synth = sub.add_parser("synth", help="generate a synthetic plate with ground truth")
    synth.add_argument("spec", help="path to the plate-spec JSON file")
    synth.add_argument("out_image", help="output plate PNG path")
    synth.add_argument("manifest", help="output ground-truth manifest JSON path")
    synth.add_argument("--seed", type=int, default=0, help="RNG seed (default 0)")

    serve = sub.add_parser("serve", help="run the HTTP analysis service")
    serve.add_argument("--port", type=int, default=8000)
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument(
        "--state-dir",
        default="lanescan_state",
        help="where finalize writes bundles (env LANESCAN_STATE_DIR overrides)",
    )
    serve.add_argument(
        "--ui-dir",
        default=None,
        help="built web-UI assets to serve at / (default: ./frontend/dist when "
        "present; env LANESCAN_UI_DIR overrides)",
    )
    return parser


def cmd_analyze(args) -> int:
    try:
        sess = session_mod.load_session(args.session)
    except SessionSchemaError as exc:
        print(f"session schema error: {exc}", file=sys.stderr)
        return EXIT_SCHEMA
    except OSError as exc:
        print(f"cannot read session file: {exc}", file=sys.stderr)
        return EXIT_SCHEMA

    override = BaselineMode.parse(args.baseline) if args.baseline else None
    try:
        bundle_dir, outcomes = session_mod.execute_session(
            sess,
            session_dir=Path(args.session).parent,
            out_dir=args.out_dir,
            baseline_override=override,
        )
    except LanescanError as exc:
        print(f"analysis error: {exc}", file=sys.stderr)
        return EXIT_ANALYSIS

    print(f"bundle: {bundle_dir}")
    for outcome in outcomes:
        rep = outcome.report
        print(f"run {rep.run_number} ({rep.baseline_mode.value} baseline)")
        print("  peak        area  percent     rf")
        for p in rep.peaks:
            print(f"  {p.number:>4d}  {p.area:>10.4f}  {p.percent:>7.2f}  {p.rf:.3f}")
    return EXIT_OK


def cmd_synth(args) -> int:
    try:
        doc = json.loads(Path(args.spec).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        print(f"plate spec error: {exc}", file=sys.stderr)
        return EXIT_SCHEMA
    try:
        spec = synth_mod.parse_plate_spec(doc)
        rgb, truth = synth_mod.generate_plate(spec, args.seed)
    except (SessionSchemaError, PlateSpecError) as exc:
        print(f"plate spec error: {exc}", file=sys.stderr)
        return EXIT_SCHEMA

    Image.fromarray(rgb).save(args.out_image, format="PNG")
    manifest = json.dumps(synth_mod.truth_manifest(truth), indent=2, sort_keys=True)
    Path(args.manifest).write_text(manifest + "\n", encoding="utf-8", newline="\n")
    print(f"plate: {args.out_image}")
    print(f"manifest: {args.manifest}")
    return EXIT_OK


def cmd_serve(args) -> int:
    state_dir = os.environ.get("LANESCAN_STATE_DIR") or args.state_dir
    ui_dir = os.environ.get("LANESCAN_UI_DIR") or args.ui_dir
    if ui_dir is None and Path("frontend/dist/index.html").is_file():
        ui_dir = "frontend/dist"

    probe = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
    try:
        probe.bind((args.host, args.port))
    except OSError as exc:
        print(f"cannot bind {args.host}:{args.port}: {exc}", file=sys.stderr)
        return EXIT_ENVIRONMENT
    finally:
        probe.close()

    import uvicorn

    from .service import create_app

    app = create_app(state_dir=Path(state_dir), static_dir=ui_dir)
    if ui_dir:
        print(f"serving web UI from {ui_dir}")
    uvicorn.run(app, host=args.host, port=args.port, log_level="info")
    return EXIT_OK


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    handlers = {"analyze": cmd_analyze, "synth": cmd_synth, "serve": cmd_serve}
    return handlers[args.command](args)


if __name__ == "__main__":
    sys.exit(main())
