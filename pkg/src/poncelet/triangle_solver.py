"""The boundary ellipse of a triangular billiard trajectory.

Any triangle KLM is the 3-periodic billiard trajectory of exactly one
ellipse.  The construction: the exterior bisectors of KLM form a host
triangle ABC (always acute, with K, L, M the feet of its altitudes); the
inscribed ellipse of ABC tangent at those feet is the boundary, obtained
from the altitude-foot weights and the weighted logarithmic derivative.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .conics import Ellipse
from .errors import DegenerateEllipse, DegenerateTriangle, NotAcute
from .geometry import (
    Line2,
    Point2,
    exterior_bisector,
    figure_diameter,
    triangle_area,
)
from .marden import altitude_foot_weights, marden_ellipse
from .verification import (
    VertexCertificate,
    breaks_tolerance,
    certify_trajectory,
    worst_residual,
)

AREA_DEGENERACY = 1e-12  # area < this * diameter^2 means no usable bisectors


@dataclass(frozen=True)
class TriangleTrajectory:
    """A triangle together with its host triangle and boundary ellipse.

    K lies on host side BC, L on AC, M on AB; the host sides are tangent to
    the boundary exactly at K, L, M.
    """

    K: Point2
    L: Point2
    M: Point2
    host_A: Point2
    host_B: Point2
    host_C: Point2
    boundary: Ellipse

    @property
    def vertices(self) -> tuple:
        return (self.K, self.L, self.M)

    @property
    def host(self) -> tuple:
        return (self.host_A, self.host_B, self.host_C)

    def side_lines(self) -> tuple:
        """Host side lines through K, L, M (the mirrors of the trajectory)."""
        return (Line2.through(self.host_B, self.host_C),
                Line2.through(self.host_A, self.host_C),
                Line2.through(self.host_A, self.host_B))

    def certificates(self) -> list:
        return certify_trajectory(self.vertices, self.side_lines(),
                                  self.boundary)


def _require_nondegenerate(k: Point2, l: Point2, m: Point2) -> float:
    diam = figure_diameter([k, l, m])
    area = abs(triangle_area(k, l, m))
    if diam == 0.0 or area < AREA_DEGENERACY * diam * diam:
        raise DegenerateTriangle(
            f"triangle area {area:.3e} below {AREA_DEGENERACY} * diam^2"
        )
    return diam


def host_triangle(k: Point2, l: Point2, m: Point2) -> tuple:
    """The triangle formed by the exterior bisectors of KLM.

    Returns (A, B, C) with K on BC, L on AC, M on AB; equivalently, KLM is
    the triangle of the altitude feet of ABC, which is always acute.
    """
    _require_nondegenerate(k, l, m)
    bis_k = exterior_bisector(m, k, l)
    bis_l = exterior_bisector(k, l, m)
    bis_m = exterior_bisector(l, m, k)
    a = bis_l.intersect(bis_m)
    b = bis_k.intersect(bis_m)
    c = bis_k.intersect(bis_l)
    return a, b, c


def _angles(a: Point2, b: Point2, c: Point2) -> tuple:
    def angle_at(v, p, q):
        u1 = (p - v).unit()
        u2 = (q - v).unit()
        return math.atan2(abs(u1.cross(u2)), u1.dot(u2))

    return (angle_at(a, b, c), angle_at(b, c, a), angle_at(c, a, b))


def orthic_feet(a: Point2, b: Point2, c: Point2) -> tuple:
    """Feet of the altitudes from A, B, C of a strictly acute triangle.

    Each foot is the orthogonal projection of a vertex on the opposite side
    line; acuteness guarantees all three are interior points of the sides.
    """
    _require_nondegenerate(a, b, c)
    margin = 0.5 * math.pi - 1e-12
    if max(_angles(a, b, c)) >= margin:
        raise NotAcute("altitude feet are only interior for acute triangles")
    k = Line2.through(b, c).project(a)
    l = Line2.through(c, a).project(b)
    m = Line2.through(a, b).project(c)
    return k, l, m


def boundary_ellipse(k: Point2, l: Point2, m: Point2) -> TriangleTrajectory:
    """The unique ellipse within which KLM is a 3-periodic billiard trajectory.

    Host triangle from the exterior bisectors, tangency weights from its
    side lengths, foci from the weighted logarithmic derivative; the Marden
    touch points then coincide with K, L, M.

    Thin triangles make the host huge and the focus quadratic cancels in
    doubles; when the self-certificate degrades past 1e-10 the foci are
    recomputed at 50 digits and rounded back.
    """
    a, b, c = host_triangle(k, l, m)
    weights = altitude_foot_weights(a, b, c)
    ellipse, _ = marden_ellipse(a, b, c, weights)
    traj = TriangleTrajectory(k, l, m, a, b, c, ellipse)
    if worst_residual(traj.certificates()) > 1e-10:
        from . import _exact

        f1, f2, rope = _exact.triangle_foci(k, l, m)
        traj = TriangleTrajectory(k, l, m, a, b, c, Ellipse(f1, f2, rope))
    return traj


@dataclass(frozen=True)
class UniquenessVariant:
    label: str
    worst_on_ellipse: float
    worst_tangency: float
    worst_reflection: float
    broken: bool


@dataclass(frozen=True)
class UniquenessReport:
    perturbation: float
    variants: tuple

    @property
    def all_broken(self) -> bool:
        return all(v.broken for v in self.variants)

    @property
    def none_broken(self) -> bool:
        return not any(v.broken for v in self.variants)


def verify_uniqueness(traj: TriangleTrajectory, perturbation: float,
                      tol: float = 1e-9) -> UniquenessReport:
    """Falsification harness for the uniqueness of the boundary ellipse.

    Each variant displaces one focus by ``perturbation`` along an axis or
    changes the rope length by it, then re-evaluates all certificates; a
    variant is 'broken' when some certificate exceeds 10x the tolerance.
    A perturbed rope length that no longer admits an ellipse counts as
    broken outright.
    """
    e = traj.boundary
    steps = (Point2(perturbation, 0.0), Point2(-perturbation, 0.0),
             Point2(0.0, perturbation), Point2(0.0, -perturbation))
    variants = []
    candidates = (
        [(f"focus1{i}", Ellipse, (e.focus1 + s, e.focus2, e.rope_length))
         for i, s in enumerate(steps)]
        + [(f"focus2{i}", Ellipse, (e.focus1, e.focus2 + s, e.rope_length))
           for i, s in enumerate(steps)]
        + [("rope+", Ellipse, (e.focus1, e.focus2, e.rope_length + perturbation)),
           ("rope-", Ellipse, (e.focus1, e.focus2, e.rope_length - perturbation))]
    )
    for label, ctor, args in candidates:
        try:
            perturbed = ctor(*args)
        except DegenerateEllipse:
            variants.append(UniquenessVariant(label, math.inf, math.inf,
                                              math.inf, True))
            continue
        certs = certify_trajectory(traj.vertices, traj.side_lines(), perturbed)
        variants.append(UniquenessVariant(
            label,
            max(c.on_ellipse for c in certs),
            max(c.tangency for c in certs),
            max(c.reflection for c in certs),
            breaks_tolerance(certs, tol),
        ))
    return UniquenessReport(perturbation, tuple(variants))
