"""Certificate computation shared by the solvers, the CLI and the tests.

A solved trajectory is certified per vertex by three residuals:

* ``on_ellipse``   relative focal-sum defect | |v-F1| + |v-F2| - d | / d
* ``tangency``     metric defect of the host side line against the ellipse,
                   including the distance from the touch witness to the
                   vertex, normalized by the figure diameter
* ``reflection``   angular defect of the billiard reflection law, in
                   radians, measured against the ellipse tangent at the
                   vertex

All three are dimensionless/normalized so that a single worst residual is
meaningful.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .conics import Ellipse, on_ellipse_residual, tangency_residual
from .errors import PointNotOnEllipse
from .geometry import Line2, Point2, figure_diameter, reflection_law_residual


@dataclass(frozen=True)
class VertexCertificate:
    vertex: Point2
    on_ellipse: float
    tangency: float
    reflection: float

    @property
    def worst(self) -> float:
        return max(self.on_ellipse, self.tangency, self.reflection)


def _safe_tangent_direction(e: Ellipse, p: Point2) -> Point2:
    g1 = p - e.focus1
    g2 = p - e.focus2
    n1, n2 = g1.norm(), g2.norm()
    if n1 == 0.0 or n2 == 0.0:
        raise PointNotOnEllipse("vertex coincides with a focus")
    grad = g1 / n1 + g2 / n2
    if grad.norm() < 1e-14:
        raise PointNotOnEllipse("vertex lies on the focal segment")
    return grad.unit().rot90()


def certify_trajectory(vertices: Sequence[Point2],
                       side_lines: Sequence[Line2],
                       boundary: Ellipse) -> list:
    """Per-vertex certificates of a closed polygonal trajectory.

    ``side_lines[i]`` is the host (mirror) line at ``vertices[i]``.  The
    reflection residual at vertex i uses the level-curve tangent of the
    boundary there, so it stays defined for perturbed near-misses.
    """
    n = len(vertices)
    scale = figure_diameter(vertices)
    out = []
    for i, v in enumerate(vertices):
        res_on = on_ellipse_residual(boundary, v)
        support_defect, witness = tangency_residual(boundary, side_lines[i])
        res_tan = max(support_defect, witness.dist(v)) / scale
        tangent = Line2(v, _safe_tangent_direction(boundary, v))
        res_ref = reflection_law_residual(vertices[i - 1], v,
                                          vertices[(i + 1) % n], tangent)
        out.append(VertexCertificate(v, res_on, res_tan, res_ref))
    return out


def worst_residual(certificates: Sequence[VertexCertificate]) -> float:
    return max(c.worst for c in certificates)


def breaks_tolerance(certificates: Sequence[VertexCertificate],
                     tol: float, factor: float = 10.0) -> bool:
    """True iff some certificate exceeds ``factor`` times the tolerance."""
    return any(
        c.on_ellipse > factor * tol
        or c.tangency > factor * tol
        or c.reflection > factor * tol
        for c in certificates
    )
