"""Ellipses in focal form, confocal families, tangency tests.

The primary representation is the pair of foci plus the rope length d (the
constant sum of focal distances), because every solver in this package
produces foci first.  The center/semiaxes/rotation form is derived on
demand for output and for frame changes.

A confocal family member is identified by the parameter lam of
x^2/(A - lam) + y^2/(B - lam) = 1 in the canonical frame of the base
ellipse (A = a^2, B = b^2).  lam < B gives a confocal ellipse, B < lam < A
a confocal hyperbola; lam = B and lam = A mark the degenerate members (the
focal segment and the minor axis).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .errors import (
    DegenerateEllipse,
    GeometryError,
    LineThroughFocus,
    PointNotOnEllipse,
)
from .geometry import TOL, Line2, Point2, midpoint


@dataclass(frozen=True)
class Ellipse:
    focus1: Point2
    focus2: Point2
    rope_length: float

    def __post_init__(self):
        if not math.isfinite(self.rope_length):
            raise ValueError("rope length must be finite")
        c = self.focus1.dist(self.focus2)
        if self.rope_length <= c or self.rope_length <= 0.0:
            raise DegenerateEllipse(
                f"rope length {self.rope_length} must exceed the focal distance {c}"
            )

    @property
    def center(self) -> Point2:
        return midpoint(self.focus1, self.focus2)

    @property
    def semi_major(self) -> float:
        return 0.5 * self.rope_length

    @property
    def linear_eccentricity(self) -> float:
        return 0.5 * self.focus1.dist(self.focus2)

    @property
    def semi_minor(self) -> float:
        a = self.semi_major
        c = self.linear_eccentricity
        return math.sqrt(a * a - c * c)

    @property
    def area(self) -> float:
        return math.pi * self.semi_major * self.semi_minor

    def focal_sum(self, p: Point2) -> float:
        return p.dist(self.focus1) + p.dist(self.focus2)


@dataclass(frozen=True)
class EllipseCanonical:
    """Center/semiaxes/rotation form; rotation is the major-axis angle in (-pi/2, pi/2]."""

    center: Point2
    semi_major: float
    semi_minor: float
    rotation: float


class ConfocalKind(enum.Enum):
    ELLIPSE = "confocal_ellipse"
    HYPERBOLA = "confocal_hyperbola"
    FOCAL_SEGMENT = "degenerate_focal_segment"
    MINOR_AXIS = "degenerate_minor_axis"


@dataclass(frozen=True)
class ConfocalConic:
    base: Ellipse
    lam: float
    kind: ConfocalKind


class Frame:
    """Rigid transform between world coordinates and the canonical frame of an ellipse."""

    __slots__ = ("cx", "cy", "cos", "sin", "a", "b")

    def __init__(self, e: Ellipse):
        center = e.center
        self.cx = center.x
        self.cy = center.y
        f = e.focus2 - e.focus1
        n = f.norm()
        if n == 0.0:
            self.cos, self.sin = 1.0, 0.0
        else:
            self.cos, self.sin = f.x / n, f.y / n
        self.a = e.semi_major
        self.b = e.semi_minor

    def to_local(self, p: Point2) -> tuple:
        dx = p.x - self.cx
        dy = p.y - self.cy
        return (self.cos * dx + self.sin * dy, -self.sin * dx + self.cos * dy)

    def to_world(self, x: float, y: float) -> Point2:
        return Point2(self.cx + self.cos * x - self.sin * y,
                      self.cy + self.sin * x + self.cos * y)

    def vec_to_local(self, v: Point2) -> tuple:
        return (self.cos * v.x + self.sin * v.y, -self.sin * v.x + self.cos * v.y)

    def vec_to_world(self, x: float, y: float) -> Point2:
        return Point2(self.cos * x - self.sin * y, self.sin * x + self.cos * y)


def to_canonical(e: Ellipse) -> EllipseCanonical:
    """Lossless conversion to center/semiaxes/rotation form."""
    f = e.focus2 - e.focus1
    if f.norm() == 0.0:
        rotation = 0.0
    else:
        rotation = math.atan2(f.y, f.x)
        # major-axis angle is only defined mod pi
        if rotation <= -0.5 * math.pi:
            rotation += math.pi
        elif rotation > 0.5 * math.pi:
            rotation -= math.pi
    return EllipseCanonical(e.center, e.semi_major, e.semi_minor, rotation)


def ellipse_from_canonical(center: Point2, semi_major: float, semi_minor: float,
                           rotation: float) -> Ellipse:
    if not (semi_major >= semi_minor > 0.0):
        raise DegenerateEllipse(
            f"need semi_major >= semi_minor > 0, got {semi_major}, {semi_minor}"
        )
    c = math.sqrt(semi_major * semi_major - semi_minor * semi_minor)
    axis = Point2(math.cos(rotation), math.sin(rotation))
    return Ellipse(center - axis * c, center + axis * c, 2.0 * semi_major)


def ellipse_from_foci_and_point(f1: Point2, f2: Point2, p: Point2) -> Ellipse:
    """The ellipse with the given foci passing through ``p``."""
    d = p.dist(f1) + p.dist(f2)
    c = f1.dist(f2)
    if d <= c * (1.0 + 1e-12) or d == 0.0:
        raise DegenerateEllipse(
            f"point {p.as_tuple()} lies on the focal segment; no ellipse through it"
        )
    return Ellipse(f1, f2, d)


def on_ellipse_residual(e: Ellipse, p: Point2) -> float:
    """Relative focal-sum residual | |p-F1| + |p-F2| - d | / d."""
    return abs(e.focal_sum(p) - e.rope_length) / e.rope_length


def contains_point(e: Ellipse, p: Point2, tol: float = TOL) -> bool:
    """True iff ``p`` lies on the boundary within a relative rope-length tolerance."""
    return on_ellipse_residual(e, p) < tol


def boundary_point(e: Ellipse, t: float) -> Point2:
    """Point of the boundary at parameter ``t`` (canonical-frame angle)."""
    fr = Frame(e)
    return fr.to_world(fr.a * math.cos(t), fr.b * math.sin(t))


def _tangent_direction(e: Ellipse, p: Point2) -> Point2:
    """Unit tangent direction of the confocal level curve through ``p``.

    The gradient of the focal-sum function is the sum of the unit vectors
    from the foci, so this is total away from the foci and does not require
    ``p`` to lie exactly on the boundary.
    """
    g1 = p - e.focus1
    g2 = p - e.focus2
    n1, n2 = g1.norm(), g2.norm()
    if n1 == 0.0 or n2 == 0.0:
        raise PointNotOnEllipse("tangent direction undefined at a focus")
    grad = g1 / n1 + g2 / n2
    if grad.norm() < 1e-14:
        raise PointNotOnEllipse("tangent direction undefined on the focal segment")
    return grad.unit().rot90()


def tangent_line_at(e: Ellipse, p: Point2, tol: float = 1e-7) -> Line2:
    """Tangent line of the ellipse at boundary point ``p``.

    Equivalently the exterior bisector of the angle F1-p-F2 (the focal
    reflection property).  Raises PointNotOnEllipse when ``p`` is off the
    boundary beyond ``tol`` (relative to the rope length).
    """
    if not contains_point(e, p, tol):
        raise PointNotOnEllipse(
            f"point {p.as_tuple()} has focal-sum residual {on_ellipse_residual(e, p):.3e}"
        )
    return Line2(p, _tangent_direction(e, p))


def _line_normal_offset(e: Ellipse, l: Line2) -> tuple:
    """Unit normal (nx, ny) and offset c of ``l`` in the canonical frame (n.x = c)."""
    fr = Frame(e)
    dx, dy = fr.vec_to_local(l.direction)
    nx, ny = -dy, dx
    px, py = fr.to_local(l.point)
    return nx, ny, nx * px + ny * py


def tangency_residual(e: Ellipse, l: Line2) -> tuple:
    """Metric tangency defect of line vs ellipse, with the touch witness.

    Returns (residual, witness): residual = | |c| - h(n) | where h is the
    support function of the ellipse and c the line offset, i.e. the distance
    by which the line misses being tangent; witness = the double root of the
    substituted quadratic (the tangency point when the residual vanishes).
    """
    fr = Frame(e)
    nx, ny, c = _line_normal_offset(e, l)
    support = math.hypot(fr.a * nx, fr.b * ny)
    residual = abs(abs(c) - support)
    # witness: extremum of the quadratic along the line, in the canonical frame
    px, py = fr.to_local(l.point)
    ux, uy = fr.vec_to_local(l.direction)
    a2, b2 = fr.a * fr.a, fr.b * fr.b
    qa = ux * ux / a2 + uy * uy / b2
    qb = 2.0 * (px * ux / a2 + py * uy / b2)
    t_star = -qb / (2.0 * qa)
    witness = fr.to_world(px + t_star * ux, py + t_star * uy)
    return residual, witness


def is_tangent(e: Ellipse, l: Line2, tol: float = TOL) -> tuple:
    """Tangency test; tolerance is relative to the semi-major axis.

    Returns (bool, witness).  The witness is the touch point when tangent,
    otherwise the nearest-approach point of the line in the ellipse metric.
    """
    residual, witness = tangency_residual(e, l)
    return residual < tol * e.semi_major, witness


def caustic_of_line(e: Ellipse, l: Line2, tol: float = TOL) -> ConfocalConic:
    """The confocal family member tangent to ``l``.

    In the canonical frame with the line written as n.x = c (unit normal n),
    the family parameter is lam = A*nx^2 + B*ny^2 - c^2, which reduces to
    (A u^2 + B v^2 - 1)/(u^2 + v^2) for the u x + v y = 1 form.  Lines through
    a focus are rejected: they correspond to the degenerate focal segment and
    have no caustic conic.
    """
    d = e.rope_length
    if l.distance_to(e.focus1) < tol * d or l.distance_to(e.focus2) < tol * d:
        raise LineThroughFocus("line passes through a focus; no caustic conic")
    nx, ny, c = _line_normal_offset(e, l)
    big_a = e.semi_major ** 2
    big_b = e.semi_minor ** 2
    lam = big_a * nx * nx + big_b * ny * ny - c * c
    band = tol * big_a
    if abs(lam - big_b) <= band:
        kind = ConfocalKind.FOCAL_SEGMENT
    elif abs(lam - big_a) <= band:
        kind = ConfocalKind.MINOR_AXIS
    elif lam < big_b:
        kind = ConfocalKind.ELLIPSE
    elif lam < big_a:
        kind = ConfocalKind.HYPERBOLA
    else:
        raise GeometryError(f"caustic parameter {lam} exceeds A = {big_a}")
    return ConfocalConic(e, lam, kind)


def confocal_member(e: Ellipse, lam: float) -> Ellipse:
    """The confocal ellipse with parameter ``lam`` (< semi_minor^2)."""
    big_b = e.semi_minor ** 2
    if lam >= big_b:
        raise DegenerateEllipse(f"lam = {lam} is not an ellipse member (B = {big_b})")
    big_a = e.semi_major ** 2
    return ellipse_from_canonical(e.center,
                                  math.sqrt(big_a - lam),
                                  math.sqrt(big_b - lam),
                                  to_canonical(e).rotation)


def tangent_lines_from_external_point(e: Ellipse, p: Point2) -> list:
    """Both tangent lines from an external point, with their touch points.

    Solved in closed form: the tangent at boundary parameter t passes
    through p iff R cos(t - phi) = 1 with R, phi from the scaled coordinates
    of p; external points have R > 1.
    """
    fr = Frame(e)
    px, py = fr.to_local(p)
    sx, sy = px / fr.a, py / fr.b
    r = math.hypot(sx, sy)
    if r <= 1.0:
        raise GeometryError("point is not outside the ellipse")
    phi = math.atan2(sy, sx)
    delta = math.acos(1.0 / r)
    out = []
    for t in (phi + delta, phi - delta):
        touch = fr.to_world(fr.a * math.cos(t), fr.b * math.sin(t))
        out.append((Line2.through(p, touch), touch))
    return out
