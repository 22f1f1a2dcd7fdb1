"""lanescan: quantitative thin-layer-chromatography densitometry.

From a scanned plate to per-compound peak areas, area percentages, and
Rf values: grayscale conversion and rotation, click-driven lane
selection, mean-intensity chromatograms, trapezoid peak integration,
and the per-image output bundle.  A synthetic-plate generator with
analytic ground truth backs the test suite.
"""

from . import errors
from .chromatogram import Chromatogram, compute_profile
from .image import decode_image, load_image, rotate, to_grayscale
from .lane import LaneCrop, LaneMarks, LaneRect, crop, make_marks, make_rect
from .peaks import (
    BaselineMode,
    PeakBounds,
    PeakResult,
    analyze_run,
    compute_rf,
    find_apex,
    integrate_peak,
    snap_click,
)
from .report import (
    ParsedReport,
    PlotStyle,
    RunReport,
    format_report,
    output_dir_for,
    parse_report,
    render_chromatogram,
    write_chromatogram,
    write_grayscale,
    write_report,
)
from .session import RunSpec, Session, execute_session, load_session, parse_session
from .synth import (
    GroundTruth,
    LaneSpec,
    LaneTruth,
    PlateSpec,
    SpotSpec,
    SpotTruth,
    generate_plate,
    parse_plate_spec,
    truth_manifest,
)

__version__ = "0.1.0"

__all__ = [
    "BaselineMode",
    "Chromatogram",
    "GroundTruth",
    "LaneCrop",
    "LaneMarks",
    "LaneRect",
    "LaneSpec",
    "LaneTruth",
    "ParsedReport",
    "PeakBounds",
    "PeakResult",
    "PlateSpec",
    "PlotStyle",
    "RunReport",
    "RunSpec",
    "Session",
    "SpotSpec",
    "SpotTruth",
    "analyze_run",
    "compute_profile",
    "compute_rf",
    "crop",
    "decode_image",
    "errors",
    "execute_session",
    "find_apex",
    "format_report",
    "generate_plate",
    "integrate_peak",
    "load_image",
    "load_session",
    "make_marks",
    "make_rect",
    "output_dir_for",
    "parse_plate_spec",
    "parse_report",
    "parse_session",
    "render_chromatogram",
    "rotate",
    "snap_click",
    "to_grayscale",
    "truth_manifest",
    "write_chromatogram",
    "write_grayscale",
    "write_report",
]
