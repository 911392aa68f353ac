"""Planar primitives and the classical triangle predicates.

Coordinates are plain floats.  The default tolerance ``TOL`` is absolute on
unit-scale figures; operations that compare lengths scale it by the
bounding-box diameter of their inputs, so predicates behave the same for a
triangle drawn in millimetres or kilometres.

Angles are measured with atan2 of the 2D cross/dot pair and live in
(-pi, pi].  Signed ratios along a segment AB use the direction B - A as
positive.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import (
    DegenerateAngle,
    NotOnLine,
    ParallelLines,
    VertexCoincidence,
    ZeroLengthSegment,
)

TOL = 1e-9


@dataclass(frozen=True)
class Point2:
    """Point in the Euclidean plane; doubles as the complex number x + iy."""

    x: float
    y: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise ValueError(f"non-finite coordinates ({self.x}, {self.y})")

    def __add__(self, other: "Point2") -> "Point2":
        return Point2(self.x + other.x, self.y + other.y)

    def __sub__(self, other: "Point2") -> "Point2":
        return Point2(self.x - other.x, self.y - other.y)

    def __mul__(self, s: float) -> "Point2":
        return Point2(self.x * s, self.y * s)

    __rmul__ = __mul__

    def __truediv__(self, s: float) -> "Point2":
        return Point2(self.x / s, self.y / s)

    def __neg__(self) -> "Point2":
        return Point2(-self.x, -self.y)

    def dot(self, other: "Point2") -> float:
        return self.x * other.x + self.y * other.y

    def cross(self, other: "Point2") -> float:
        return self.x * other.y - self.y * other.x

    def norm(self) -> float:
        return math.hypot(self.x, self.y)

    def norm2(self) -> float:
        return self.x * self.x + self.y * self.y

    def dist(self, other: "Point2") -> float:
        return math.hypot(self.x - other.x, self.y - other.y)

    def unit(self) -> "Point2":
        n = self.norm()
        if n == 0.0:
            raise ZeroLengthSegment("cannot normalize the zero vector")
        return Point2(self.x / n, self.y / n)

    def rot90(self) -> "Point2":
        """Counterclockwise quarter turn."""
        return Point2(-self.y, self.x)

    def as_complex(self) -> complex:
        return complex(self.x, self.y)

    @staticmethod
    def from_complex(z: complex) -> "Point2":
        return Point2(z.real, z.imag)

    def as_tuple(self) -> tuple:
        return (self.x, self.y)


@dataclass(frozen=True)
class Line2:
    """Line through ``point`` with unit ``direction``.

    The constructor normalizes the direction, so any nonzero vector may be
    passed in.
    """

    point: Point2
    direction: Point2

    def __post_init__(self):
        n = self.direction.norm()
        if n == 0.0:
            raise ZeroLengthSegment("line direction must be nonzero")
        if abs(n - 1.0) > 1e-12:
            object.__setattr__(self, "direction", self.direction / n)

    @staticmethod
    def through(p: Point2, q: Point2) -> "Line2":
        return Line2(p, q - p)

    def at(self, t: float) -> Point2:
        return self.point + self.direction * t

    def project(self, p: Point2) -> Point2:
        """Foot of the perpendicular from ``p``."""
        t = (p - self.point).dot(self.direction)
        return self.at(t)

    def offset_of(self, p: Point2) -> float:
        """Signed perpendicular distance (positive on the left of the direction)."""
        return self.direction.cross(p - self.point)

    def distance_to(self, p: Point2) -> float:
        return abs(self.offset_of(p))

    def intersect(self, other: "Line2") -> Point2:
        """Intersection point; raises ParallelLines for (near-)parallel input."""
        denom = self.direction.cross(other.direction)
        if abs(denom) < 1e-15:
            raise ParallelLines(f"lines are parallel within 1e-15 (cross={denom})")
        t = (other.point - self.point).cross(other.direction) / denom
        return self.at(t)


def midpoint(a: Point2, b: Point2) -> Point2:
    return Point2((a.x + b.x) * 0.5, (a.y + b.y) * 0.5)


def figure_diameter(points: Iterable[Point2]) -> float:
    """Diagonal of the axis-aligned bounding box; the scale used for tolerances."""
    xs = [p.x for p in points]
    ys = [p.y for p in points]
    if not xs:
        return 0.0
    return math.hypot(max(xs) - min(xs), max(ys) - min(ys))


def triangle_area(a: Point2, b: Point2, c: Point2) -> float:
    """Signed area (positive for counterclockwise vertices)."""
    return 0.5 * (b - a).cross(c - a)


def collinear(p: Point2, q: Point2, r: Point2, tol: float = TOL) -> bool:
    """Scale-invariant collinearity: |det| normalized by the segment lengths."""
    u = q - p
    v = r - p
    denom = u.norm() * v.norm()
    if denom == 0.0:
        return True
    return abs(u.cross(v)) / denom < tol


def angle_between(u: Point2, v: Point2) -> float:
    """Unsigned angle between two vectors, in [0, pi]."""
    return math.atan2(abs(u.cross(v)), u.dot(v))


def reflect_point(p: Point2, l: Line2) -> Point2:
    """Mirror image of ``p`` across ``l``; an involution."""
    foot = l.project(p)
    return foot + (foot - p)


def _bisector_directions(prev: Point2, vertex: Point2, next: Point2,
                         collinear_tol: float = 1e-12) -> tuple:
    """Unit directions of the interior and exterior bisector at ``vertex``.

    Uses whichever of u+v, u-v has the larger norm and derives the other by a
    quarter turn, so both directions stay accurate even for angles near 0 or
    pi.  Raises DegenerateAngle when the three points are collinear.
    """
    u = (prev - vertex).unit()
    v = (next - vertex).unit()
    if abs(u.cross(v)) < collinear_tol:
        raise DegenerateAngle(
            f"points {prev.as_tuple()}, {vertex.as_tuple()}, {next.as_tuple()} are collinear"
        )
    s = u + v
    d = u - v
    if s.norm() >= d.norm():
        interior = s.unit()
        exterior = interior.rot90()
    else:
        exterior = d.unit()
        interior = exterior.rot90()
    return interior, exterior


def interior_bisector(prev: Point2, vertex: Point2, next: Point2) -> Line2:
    """Bisector of the angle prev-vertex-next."""
    interior, _ = _bisector_directions(prev, vertex, next)
    return Line2(vertex, interior)


def exterior_bisector(prev: Point2, vertex: Point2, next: Point2) -> Line2:
    """Bisector of the exterior angle at ``vertex``.

    The returned line passes through the vertex, makes equal angles with the
    rays vertex->prev and vertex->next on opposite sides, and is perpendicular
    to the interior bisector.
    """
    _, exterior = _bisector_directions(prev, vertex, next)
    return Line2(vertex, exterior)


def signed_ratio(a: Point2, b: Point2, m: Point2) -> float:
    """Signed ratio AM/MB for a point m on line AB.

    Computed from scalar projections onto the directed line (b - a positive),
    so the sign does not depend on which side of the plane the figure lies.
    """
    ab = b - a
    n2 = ab.norm2()
    if n2 == 0.0:
        raise ZeroLengthSegment("ratio base segment has zero length")
    t = (m - a).dot(ab) / n2
    denom = 1.0 - t
    if denom == 0.0:
        raise VertexCoincidence("division point coincides with the second endpoint")
    return t / denom


def _checked_foot(a: Point2, b: Point2, m: Point2, scale: float, tol: float,
                  label: str) -> None:
    line = Line2.through(a, b)
    if line.distance_to(m) > tol * scale:
        raise NotOnLine(f"{label} is off its line by {line.distance_to(m):.3e}")
    if m.dist(a) < tol * scale or m.dist(b) < tol * scale:
        raise VertexCoincidence(f"{label} coincides with a vertex")


def ceva_product(a: Point2, b: Point2, c: Point2,
                 k: Point2, l: Point2, m: Point2, tol: float = TOL) -> float:
    """Signed product (AM/MB)(BK/KC)(CL/LA) for cevian feet K on BC, L on AC, M on AB.

    Equals 1 within tolerance iff the cevians AK, BL, CM are concurrent or
    parallel.
    """
    scale = figure_diameter([a, b, c])
    _checked_foot(b, c, k, scale, tol, "K")
    _checked_foot(a, c, l, scale, tol, "L")
    _checked_foot(a, b, m, scale, tol, "M")
    return (signed_ratio(a, b, m)
            * signed_ratio(b, c, k)
            * signed_ratio(c, a, l))


def menelaus_product(a: Point2, b: Point2, c: Point2,
                     p: Point2, q: Point2, r: Point2, tol: float = TOL) -> float:
    """Signed product (AR/RB)(BP/PC)(CQ/QA) for P on BC, Q on AC, R on AB.

    Equals -1 within tolerance iff P, Q, R are collinear.
    """
    scale = figure_diameter([a, b, c])
    _checked_foot(b, c, p, scale, tol, "P")
    _checked_foot(a, c, q, scale, tol, "Q")
    _checked_foot(a, b, r, scale, tol, "R")
    return (signed_ratio(a, b, r)
            * signed_ratio(b, c, p)
            * signed_ratio(c, a, q))


def simson_collinear(a: Point2, b: Point2, c: Point2, s: Point2,
                     tol: float = TOL) -> bool:
    """True iff the projections of ``s`` on the three side lines are collinear.

    Holds exactly when ``s`` lies on the circumcircle of the triangle.
    """
    pa = Line2.through(b, c).project(s)
    pb = Line2.through(c, a).project(s)
    pc = Line2.through(a, b).project(s)
    return collinear(pa, pb, pc, tol)


def reflection_law_residual(incoming_from: Point2, bounce: Point2,
                            outgoing_to: Point2, tangent: Line2) -> float:
    """Angular defect of the billiard reflection law at ``bounce``, in radians.

    Zero iff the incoming and outgoing segments make equal angles with the
    tangent line on opposite sides.  Computed as the angle between the mirror
    image of the incoming direction and the outgoing direction, which equals
    |angle(in, tangent) - angle(tangent, out)| for a genuine bounce.
    """
    d_in = bounce - incoming_from
    d_out = outgoing_to - bounce
    if d_in.norm() == 0.0 or d_out.norm() == 0.0:
        raise ZeroLengthSegment("reflection segments must have positive length")
    d_in = d_in.unit()
    d_out = d_out.unit()
    t = tangent.direction
    mirrored = t * (2.0 * d_in.dot(t)) - d_in
    return angle_between(mirrored, d_out)


def circumcircle(a: Point2, b: Point2, c: Point2) -> tuple:
    """Center and radius of the circle through three noncollinear points."""
    d = 2.0 * ((b - a).cross(c - a))
    if d == 0.0:
        raise DegenerateAngle("collinear points have no circumcircle")
    ab2 = (b - a).norm2()
    ac2 = (c - a).norm2()
    ux = ((c.y - a.y) * ab2 - (b.y - a.y) * ac2) / d
    uy = ((b.x - a.x) * ac2 - (c.x - a.x) * ab2) / d
    center = Point2(a.x + ux, a.y + uy)
    return center, center.dist(a)


def convex_hull_order(points: Sequence[Point2]) -> list:
    """Indices of ``points`` in counterclockwise convex-position order.

    Only meant for small point sets in convex position (all our polygons);
    sorts by angle around the centroid.
    """
    cx = sum(p.x for p in points) / len(points)
    cy = sum(p.y for p in points) / len(points)
    return sorted(range(len(points)),
                  key=lambda i: math.atan2(points[i].y - cy, points[i].x - cx))


def segments_cross(p1: Point2, p2: Point2, q1: Point2, q2: Point2) -> bool:
    """True iff the open segments p1p2 and q1q2 intersect transversally."""
    d1 = (p2 - p1).cross(q1 - p1)
    d2 = (p2 - p1).cross(q2 - p1)
    d3 = (q2 - q1).cross(p1 - q1)
    d4 = (q2 - q1).cross(p2 - q1)
    return (d1 * d2 < 0.0) and (d3 * d4 < 0.0)
