"""Exception hierarchy shared across the toolkit.

Every error carries a stable machine-readable ``code`` so the CLI and the
HTTP service surface the same failure vocabulary.
"""

from __future__ import annotations


class LanescanError(Exception):
    """Base class for all toolkit errors."""

    code = "error"


class FileUnreadableError(LanescanError):
    code = "file_unreadable"


class UnsupportedFormatError(LanescanError):
    code = "unsupported_format"


class NonFiniteAngleError(LanescanError):
    code = "non_finite_angle"


class DegenerateSelectionError(LanescanError):
    code = "degenerate_selection"


class RectOutOfBoundsError(LanescanError):
    code = "rect_out_of_bounds"


class CoincidentMarksError(LanescanError):
    code = "coincident_marks"


class InvalidBoundsError(LanescanError):
    code = "invalid_bounds"


class DegenerateFrontError(LanescanError):
    code = "degenerate_front"


class OverlappingPeaksError(LanescanError):
    code = "overlapping_peaks"


class EmptyPeakSetError(LanescanError):
    code = "empty_peak_set"


class ZeroTotalAreaError(LanescanError):
    code = "zero_total_area"


class PlateSpecError(LanescanError):
    code = "plate_spec_out_of_bounds"


class SessionSchemaError(LanescanError):
    """A session or plate-spec document failed validation.

    ``field`` names the offending field when known.
    """

    code = "schema"

    def __init__(self, message: str, field: str | None = None):
        super().__init__(message)
        self.field = field
