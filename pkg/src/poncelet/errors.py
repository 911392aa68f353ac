"""Exception hierarchy for geometric failures.

Every error raised by this package derives from GeometryError, so callers
can catch one type at the CLI boundary.  The subclasses encode *which*
precondition failed; messages carry the offending numbers.
"""


class GeometryError(Exception):
    """Base class for all geometric construction/validation failures."""

    code = "geometry_error"


class ParallelLines(GeometryError):
    code = "parallel_lines"


class DegenerateAngle(GeometryError):
    code = "degenerate_angle"


class DegenerateTriangle(GeometryError):
    code = "degenerate_triangle"


class NotOnLine(GeometryError):
    code = "not_on_line"


class VertexCoincidence(GeometryError):
    code = "vertex_coincidence"


class ZeroLengthSegment(GeometryError):
    code = "zero_length_segment"


class DegenerateEllipse(GeometryError):
    code = "degenerate_ellipse"


class PointNotOnEllipse(GeometryError):
    code = "point_not_on_ellipse"


class LineThroughFocus(GeometryError):
    code = "line_through_focus"


class CollinearVertices(GeometryError):
    code = "collinear_vertices"


class WeightSumZero(GeometryError):
    code = "weight_sum_zero"


class NonPositiveWeight(GeometryError):
    code = "non_positive_weight"


class InconsistentRatios(GeometryError):
    code = "inconsistent_ratios"


class FocusOutsideTriangle(GeometryError):
    code = "focus_outside_triangle"


class NotAcute(GeometryError):
    code = "not_acute"


class DegenerateParallelogram(GeometryError):
    code = "degenerate_parallelogram"


class NotParallelogram(GeometryError):
    code = "not_parallelogram"


class NotButterfly(GeometryError):
    code = "not_butterfly"


class DegenerateApex(GeometryError):
    code = "degenerate_apex"


class NotAcuteHalf(GeometryError):
    code = "not_acute_half"


class TangentialStart(GeometryError):
    code = "tangential_start"


class CausticMismatch(GeometryError):
    code = "caustic_mismatch"


class InvalidDimensions(GeometryError):
    code = "invalid_dimensions"


class InvalidInput(GeometryError):
    code = "invalid_input"
