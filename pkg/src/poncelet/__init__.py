"""Boundary ellipses for billiard polygons.

Given a triangle, a parallelogram, or a Darboux butterfly, construct the
unique ellipse within which that polygon is a periodic billiard trajectory,
and simulate/verify elliptic billiards (reflection law, confocal caustics,
periodicity).
"""

from . import billiard, conics, geometry, marden, quad_solver, triangle_solver
from .conics import (
    ConfocalConic,
    ConfocalKind,
    Ellipse,
    EllipseCanonical,
    caustic_of_line,
    contains_point,
    ellipse_from_foci_and_point,
    is_tangent,
    tangent_line_at,
    to_canonical,
)
from .errors import GeometryError
from .geometry import (
    Line2,
    Point2,
    ceva_product,
    exterior_bisector,
    menelaus_product,
    reflect_point,
    reflection_law_residual,
    simson_collinear,
)
from .marden import (
    FocusPair,
    WeightTriple,
    inscribed_ellipse_with_focus,
    log_derivative_zeros,
    marden_ellipse,
    steiner_ellipse,
    weights_from_touch_points,
)
from .quad_solver import (
    ButterflyCase,
    ParallelogramCase,
    bounding_rectangle,
    butterfly_boundary_ellipse,
    butterfly_focus,
    butterfly_kite,
    parallelogram_boundary_ellipse,
    parallelogram_focus,
)
from .triangle_solver import (
    TriangleTrajectory,
    boundary_ellipse,
    host_triangle,
    orthic_feet,
    verify_uniqueness,
)
from .billiard import Trajectory, classify_caustic, detect_period, next_bounce, run

__version__ = "0.1.0"
