"""Boundary ellipses for 4-periodic trajectories.

Convex case: every parallelogram is a billiard trajectory within a unique
ellipse.  The exterior bisectors of the parallelogram form a rectangle; in
rectangle coordinates (side lengths a, b, vertex offset e along the first
side) the focus position (x, y) solves

    (a - 2x)^2 - (b - 2y)^2 = a^2 - b^2,   (a - 2x)(b - 2y) = b(a - 2e),

a biquadratic in xi = a - 2x with a closed-form positive root.  The second
focus is the mirror image through the rectangle center.

Nonconvex case: a Darboux butterfly (self-intersecting quadrilateral with
both pairs of opposite sides congruent) is a trajectory within a unique
kite made of two congruent acute triangles.  With the kite axis normalized
to the segment (0,0)-(1,0) and the half-triangle apex at (b1, b2), the
in-triangle focus is

    f1 = (b1^2 + b2^2) / (1 - 2 b1 + 2 b1^2 + 2 b2^2),   f2^2 = f1 - f1^2,

and the other focus is its mirror image across the axis.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .conics import Ellipse, ellipse_from_foci_and_point
from .errors import (
    DegenerateApex,
    DegenerateParallelogram,
    InvalidDimensions,
    NotAcuteHalf,
    NotButterfly,
    NotParallelogram,
)
from .geometry import (
    Line2,
    Point2,
    exterior_bisector,
    figure_diameter,
    midpoint,
    reflect_point,
    segments_cross,
    triangle_area,
)
from .verification import certify_trajectory


@dataclass(frozen=True)
class ParallelogramCase:
    """Solved parallelogram trajectory with its host rectangle and frame data."""

    E: Point2
    F: Point2
    G: Point2
    H: Point2
    rect_A: Point2
    rect_B: Point2
    rect_C: Point2
    rect_D: Point2
    a: float
    b: float
    e: float
    x: float
    y: float
    boundary: Ellipse

    @property
    def vertices(self) -> tuple:
        return (self.E, self.F, self.G, self.H)

    @property
    def host(self) -> tuple:
        return (self.rect_A, self.rect_B, self.rect_C, self.rect_D)

    def side_lines(self) -> tuple:
        r = self.host
        return tuple(Line2.through(r[i], r[(i + 1) % 4]) for i in range(4))

    def certificates(self) -> list:
        return certify_trajectory(self.vertices, self.side_lines(),
                                  self.boundary)


@dataclass(frozen=True)
class ButterflyCase:
    """Solved butterfly trajectory with its host kite and normalized-frame data."""

    G: Point2
    H: Point2
    K: Point2
    L: Point2
    kite_A: Point2
    kite_B: Point2
    kite_C: Point2
    kite_D: Point2
    b1: float
    b2: float
    f1: float
    f2: float
    boundary: Ellipse

    @property
    def vertices(self) -> tuple:
        return (self.G, self.H, self.K, self.L)

    @property
    def host(self) -> tuple:
        return (self.kite_A, self.kite_B, self.kite_C, self.kite_D)

    def side_lines(self) -> tuple:
        """Kite side lines at G, H, K, L respectively (AB holds H, BC holds G, CD holds K, DA holds L)."""
        a, b, c, d = self.host
        return (Line2.through(b, c),   # G
                Line2.through(a, b),   # H
                Line2.through(c, d),   # K
                Line2.through(d, a))   # L

    def certificates(self) -> list:
        return certify_trajectory(self.vertices, self.side_lines(),
                                  self.boundary)


def is_parallelogram(e: Point2, f: Point2, g: Point2, h: Point2,
                     tol: float = 1e-6) -> bool:
    diam = figure_diameter([e, f, g, h])
    if diam == 0.0:
        return False
    return midpoint(e, g).dist(midpoint(f, h)) < tol * diam


def bounding_rectangle(e: Point2, f: Point2, g: Point2, h: Point2) -> tuple:
    """Rectangle of the exterior bisectors of parallelogram EFGH.

    Returns (A, B, C, D) with E on AB, F on BC, G on CD, H on DA.  The
    trajectory segments come out parallel to the rectangle diagonals.
    """
    diam = figure_diameter([e, f, g, h])
    if len({p.as_tuple() for p in (e, f, g, h)}) < 4 or \
            abs(triangle_area(e, f, g)) < 1e-12 * diam * diam:
        raise DegenerateParallelogram("vertices coincide or are collinear")
    if not is_parallelogram(e, f, g, h):
        raise NotParallelogram(
            "diagonal midpoints disagree beyond 1e-6 of the diameter"
        )
    bis_e = exterior_bisector(h, e, f)
    bis_f = exterior_bisector(e, f, g)
    bis_g = exterior_bisector(f, g, h)
    bis_h = exterior_bisector(g, h, e)
    a = bis_h.intersect(bis_e)
    b = bis_e.intersect(bis_f)
    c = bis_f.intersect(bis_g)
    d = bis_g.intersect(bis_h)
    return a, b, c, d


def parallelogram_focus(a: float, b: float, e: float) -> list:
    """Interior focus positions (x, y) for rectangle sides a, b and offset e.

    Solves the biquadratic for xi = a - 2x through its quadratic
    xi_hat^2 - (a^2 - b^2) xi_hat - b^2 (a - 2e)^2 = 0 and resolves signs so
    that both defining relations hold (the signs of x and y pair up).
    Returns one point (the center) when the solution is unique, otherwise
    the mirror pair ordered with the lower-left solution first.
    """
    if not (a > 0.0 and b > 0.0 and 0.0 < e < a):
        raise InvalidDimensions(f"need a, b > 0 and 0 < e < a, got {(a, b, e)}")
    p = a * a - b * b
    q = b * b * (a - 2.0 * e) ** 2
    scale = max(a, b)
    if q <= (1e-15 * scale * scale) ** 2:
        # e = a/2 (within double precision): axis-aligned foci
        if abs(p) <= 1e-15 * scale * scale:
            return [(0.5 * a, 0.5 * b)]    # square: the center
        if p > 0.0:
            r = math.sqrt(p)
            return [(0.5 * (a - r), 0.5 * b), (0.5 * (a + r), 0.5 * b)]
        r = math.sqrt(-p)
        return [(0.5 * a, 0.5 * (b - r)), (0.5 * a, 0.5 * (b + r))]
    sqrt_disc = math.sqrt(p * p + 4.0 * q)
    # positive root of the quadratic, cancellation-free for either sign of p
    if p >= 0.0:
        xi_hat = 0.5 * (p + sqrt_disc)
    else:
        xi_hat = 2.0 * q / (sqrt_disc - p)
    xi = math.sqrt(xi_hat)
    correction = b * (a - 2.0 * e) / xi
    first = (0.5 * (a - xi), 0.5 * (b - correction))
    second = (0.5 * (a + xi), 0.5 * (b + correction))
    sols = [first, second]
    sols.sort(key=lambda s: (s[0], s[1]))
    return sols


def parallelogram_boundary_ellipse(e: Point2, f: Point2, g: Point2,
                                   h: Point2) -> ParallelogramCase:
    """The unique ellipse within which parallelogram EFGH is a 4-periodic trajectory."""
    ra, rb, rc, rd = bounding_rectangle(e, f, g, h)
    u = (rb - ra).unit()
    v = (rd - ra).unit()
    side_a = ra.dist(rb)
    side_b = ra.dist(rd)
    off_e = (e - ra).dot(u)
    solutions = parallelogram_focus(side_a, side_b, off_e)
    x, y = solutions[0]
    f1 = ra + u * x + v * y
    center = midpoint(ra, rc)
    f2 = center + (center - f1)
    boundary = ellipse_from_foci_and_point(f1, f2, e)
    return ParallelogramCase(e, f, g, h, ra, rb, rc, rd,
                             side_a, side_b, off_e, x, y, boundary)


def _butterfly_congruences(g: Point2, h: Point2, k: Point2, l: Point2,
                           tol: float = 1e-6) -> bool:
    diam = figure_diameter([g, h, k, l])
    if diam == 0.0:
        return False
    return (abs(g.dist(h) - k.dist(l)) < tol * diam
            and abs(h.dist(k) - l.dist(g)) < tol * diam)


def is_butterfly(g: Point2, h: Point2, k: Point2, l: Point2,
                 tol: float = 1e-6) -> bool:
    """Both pairs of opposite sides congruent and exactly one pair crossing."""
    if not _butterfly_congruences(g, h, k, l, tol):
        return False
    cross_a = segments_cross(g, h, k, l)
    cross_b = segments_cross(h, k, l, g)
    return cross_a != cross_b


def _normalized_butterfly(g: Point2, h: Point2, k: Point2,
                          l: Point2) -> tuple:
    """Validate a butterfly and rotate its path so the crossing sides are HK, LG."""
    diam = figure_diameter([g, h, k, l])
    if diam == 0.0 or abs(triangle_area(g, h, k)) < 1e-12 * diam * diam:
        raise NotButterfly("degenerate (flat) quadrilateral")
    if not _butterfly_congruences(g, h, k, l):
        raise NotButterfly("opposite sides are not congruent in pairs")
    cross_gh = segments_cross(g, h, k, l)
    cross_hk = segments_cross(h, k, l, g)
    if cross_gh == cross_hk:
        raise NotButterfly("need exactly one crossing pair of opposite sides")
    if cross_gh:
        return h, k, l, g
    return g, h, k, l


def butterfly_kite(g: Point2, h: Point2, k: Point2, l: Point2) -> tuple:
    """The kite within which butterfly GHKL is a billiard trajectory.

    Kite sides are the exterior bisectors of the butterfly; returned as
    (A, B, C, D) with the symmetry axis AC and, for a path whose legs are
    GH and KL, with H on AB, G on BC, K on CD and L on DA.
    """
    g, h, k, l = _normalized_butterfly(g, h, k, l)
    bis_g = exterior_bisector(l, g, h)
    bis_h = exterior_bisector(g, h, k)
    bis_k = exterior_bisector(h, k, l)
    bis_l = exterior_bisector(k, l, g)
    a = bis_h.intersect(bis_l)
    b = bis_h.intersect(bis_g)
    c = bis_g.intersect(bis_k)
    d = bis_k.intersect(bis_l)
    return a, b, c, d


def butterfly_focus(b1: float, b2: float) -> tuple:
    """Focus of the half-triangle (0,0), (1,0), (b1, b2) in the kite frame.

    Returns (f1, f2_abs): the on-axis coordinate and the absolute off-axis
    coordinate; the true focus lies on the same side of the axis as the
    apex.  The denominator 2(b1 - 1/2)^2 + 2 b2^2 + 1/2 >= 1/2 cannot
    vanish; the guard below is defensive only.
    """
    if b2 == 0.0:
        raise DegenerateApex("apex on the axis gives no triangle")
    denom = 1.0 - 2.0 * b1 + 2.0 * b1 * b1 + 2.0 * b2 * b2
    if abs(denom) < 1e-14:
        raise DegenerateApex(f"degenerate denominator {denom}")
    f1 = (b1 * b1 + b2 * b2) / denom
    f2_sq = f1 - f1 * f1
    if f2_sq < 0.0:
        if f2_sq < -1e-15:
            raise DegenerateApex(f"focus leaves the axis circle: f1 = {f1}")
        f2_sq = 0.0
    return f1, math.sqrt(f2_sq)


def _require_acute(a: Point2, b: Point2, c: Point2) -> None:
    margin = 1e-9
    for v, p, q in ((a, b, c), (b, c, a), (c, a, b)):
        u1 = (p - v).unit()
        u2 = (q - v).unit()
        angle = math.atan2(abs(u1.cross(u2)), u1.dot(u2))
        if angle >= 0.5 * math.pi - margin:
            raise NotAcuteHalf(
                f"kite half-triangle has angle {angle:.12f} >= pi/2"
            )


def butterfly_boundary_ellipse(g: Point2, h: Point2, k: Point2,
                               l: Point2) -> ButterflyCase:
    """The unique ellipse within which butterfly GHKL is a 4-periodic trajectory.

    Kite from the exterior bisectors, half-triangle normalized to the axis
    frame, focus from the closed form, mirror focus across the axis, ellipse
    through the trajectory vertices.  The returned case stores the vertices
    in leg-first path order (GH and KL are the non-crossing sides).
    """
    g, h, k, l = _normalized_butterfly(g, h, k, l)
    ka, kb, kc, kd = butterfly_kite(g, h, k, l)
    _require_acute(ka, kb, kc)
    # similarity: axis A -> 0, C -> 1, apex B to the upper half plane
    za, zb, zc = ka.as_complex(), kb.as_complex(), kc.as_complex()
    span = zc - za
    w = (zb - za) / span
    conjugated = w.imag < 0.0
    if conjugated:
        w = w.conjugate()
    b1, b2 = w.real, w.imag
    f1, f2_abs = butterfly_focus(b1, b2)
    # focus inside the half-triangle: same axis side as the apex
    wf = complex(f1, f2_abs)
    if conjugated:
        wf = wf.conjugate()
    focus_in = Point2.from_complex(za + span * wf)
    axis = Line2.through(ka, kc)
    focus_out = reflect_point(focus_in, axis)
    boundary = ellipse_from_foci_and_point(focus_in, focus_out, g)
    return ButterflyCase(g, h, k, l, ka, kb, kc, kd,
                         b1, b2, f1, f2_abs, boundary)
