"""Inscribed ellipses of a triangle via weighted logarithmic derivatives.

Identifying the plane with the complex numbers, the two foci of the ellipse
inscribed in a triangle with vertices a1, a2, a3 and tangency ratios
m1 : m2 : m3 are the zeros of

    F(z) = m1/(z - a1) + m2/(z - a2) + m3/(z - a3),

and the touch point on side [ai, aj] divides it in the ratio mi : mj.
Equal weights give the ellipse tangent at the side midpoints (the maximal
inscribed ellipse); its foci are the critical points of the cubic with
roots at the vertices.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .conics import Ellipse
from .errors import (
    CollinearVertices,
    FocusOutsideTriangle,
    InconsistentRatios,
    NonPositiveWeight,
    WeightSumZero,
)
from .geometry import (
    Line2,
    Point2,
    collinear,
    figure_diameter,
    interior_bisector,
    reflect_point,
    signed_ratio,
    triangle_area,
)


@dataclass(frozen=True)
class WeightTriple:
    """Tangency masses (m1, m2, m3), meaningful up to a common nonzero factor.

    Stored normalized: scaled so m1 + m2 + m3 = 1 when the sum is nonzero,
    otherwise so that max |mi| = 1.
    """

    m1: float
    m2: float
    m3: float

    def __post_init__(self):
        vals = (self.m1, self.m2, self.m3)
        if any(v == 0.0 or not math.isfinite(v) for v in vals):
            raise NonPositiveWeight(f"weights must be nonzero and finite, got {vals}")
        s = sum(vals)
        scale = s if abs(s) > 1e-300 else max(abs(v) for v in vals)
        if abs(scale - 1.0) > 0.0:
            object.__setattr__(self, "m1", self.m1 / scale)
            object.__setattr__(self, "m2", self.m2 / scale)
            object.__setattr__(self, "m3", self.m3 / scale)

    @property
    def values(self) -> tuple:
        return (self.m1, self.m2, self.m3)

    @property
    def all_positive(self) -> bool:
        return self.m1 > 0.0 and self.m2 > 0.0 and self.m3 > 0.0


@dataclass(frozen=True)
class FocusPair:
    """Unordered focus pair, canonicalized lexicographically by (x, y)."""

    beta1: Point2
    beta2: Point2

    def __post_init__(self):
        a, b = self.beta1, self.beta2
        if (b.x, b.y) < (a.x, a.y):
            object.__setattr__(self, "beta1", b)
            object.__setattr__(self, "beta2", a)


def _stable_complex_quadratic(a: complex, b: complex, c: complex) -> tuple:
    """Roots of a z^2 + b z + c with the cancellation-safe pairing.

    Computes the larger-magnitude root first and recovers the second from
    the product of roots, so nearly coincident foci do not lose digits.
    """
    disc = b * b - 4.0 * a * c
    sq = cmath.sqrt(disc)
    if (b.conjugate() * sq).real < 0.0:
        sq = -sq
    q = -0.5 * (b + sq)
    z1 = q / a
    z2 = c / q if q != 0.0 else z1
    return z1, z2


def _require_noncollinear(a1: Point2, a2: Point2, a3: Point2) -> None:
    if collinear(a1, a2, a3, 1e-12):
        raise CollinearVertices(
            f"vertices {a1.as_tuple()}, {a2.as_tuple()}, {a3.as_tuple()} are collinear"
        )


def log_derivative_zeros(a1: Point2, a2: Point2, a3: Point2,
                         w: WeightTriple) -> FocusPair:
    """Both zeros of m1/(z-a1) + m2/(z-a2) + m3/(z-a3).

    Clearing denominators gives the quadratic
    (m1+m2+m3) z^2 - [m1(a2+a3) + m2(a1+a3) + m3(a1+a2)] z
                   + (m1 a2 a3 + m2 a1 a3 + m3 a1 a2) = 0.
    A zero weight sum kills the leading coefficient (one zero escapes to
    infinity) and is rejected.
    """
    _require_noncollinear(a1, a2, a3)
    z1, z2, z3 = a1.as_complex(), a2.as_complex(), a3.as_complex()
    m1, m2, m3 = w.values
    lead = m1 + m2 + m3
    if abs(lead) < 1e-12 * max(abs(m1), abs(m2), abs(m3)):
        raise WeightSumZero("weights sum to zero; the quadratic degenerates")
    mid = m1 * (z2 + z3) + m2 * (z1 + z3) + m3 * (z1 + z2)
    last = m1 * z2 * z3 + m2 * z1 * z3 + m3 * z1 * z2
    r1, r2 = _stable_complex_quadratic(complex(lead), -mid, last)
    return FocusPair(Point2.from_complex(r1), Point2.from_complex(r2))


def touch_points(a1: Point2, a2: Point2, a3: Point2,
                 w: WeightTriple) -> tuple:
    """Ratio-division touch points (T12, T23, T31) on the three sides."""
    m1, m2, m3 = w.values

    def divide(p: Point2, q: Point2, mp: float, mq: float) -> Point2:
        return (p * mq + q * mp) / (mp + mq)

    return (divide(a1, a2, m1, m2),
            divide(a2, a3, m2, m3),
            divide(a3, a1, m3, m1))


def marden_ellipse(a1: Point2, a2: Point2, a3: Point2,
                   w: WeightTriple) -> tuple:
    """Inscribed ellipse for positive weights, with its three touch points.

    Returns (ellipse, (T12, T23, T31)); the foci are the logarithmic-derivative
    zeros and the rope length is fixed by the touch point on [a1, a2].
    """
    if not w.all_positive:
        raise NonPositiveWeight(
            f"inscribed construction needs positive weights, got {w.values}"
        )
    foci = log_derivative_zeros(a1, a2, a3, w)
    t12, t23, t31 = touch_points(a1, a2, a3, w)
    d = t12.dist(foci.beta1) + t12.dist(foci.beta2)
    return Ellipse(foci.beta1, foci.beta2, d), (t12, t23, t31)


def steiner_ellipse(a1: Point2, a2: Point2, a3: Point2) -> Ellipse:
    """The maximal inscribed ellipse: equal weights, tangent at the side midpoints."""
    ellipse, _ = marden_ellipse(a1, a2, a3, WeightTriple(1.0, 1.0, 1.0))
    return ellipse


def inscribed_ellipse_with_focus(a: Point2, b: Point2, c: Point2,
                                 f1: Point2) -> Ellipse:
    """The unique inscribed ellipse of triangle abc with ``f1`` as one focus.

    Reflect f1 across the three sides; the second focus is the common point
    of the bisectors of the angles those reflections subtend at the vertices,
    and the rope length is the distance from any reflection to it.
    """
    _require_noncollinear(a, b, c)
    area = triangle_area(a, b, c)
    # strict interior test with a small relative margin
    margin = 1e-12 * abs(area)
    for p, q in ((a, b), (b, c), (c, a)):
        if triangle_area(p, q, f1) * area <= margin:
            raise FocusOutsideTriangle(
                f"focus {f1.as_tuple()} is not strictly inside the triangle"
            )
    r_bc = reflect_point(f1, Line2.through(b, c))
    r_ca = reflect_point(f1, Line2.through(c, a))
    r_ab = reflect_point(f1, Line2.through(a, b))
    bis_a = interior_bisector(r_ca, a, r_ab)
    bis_c = interior_bisector(r_ca, c, r_bc)
    # fall back to the bisector at b when the first two are nearly parallel
    if abs(bis_a.direction.cross(bis_c.direction)) < 1e-8:
        bis_c = interior_bisector(r_bc, b, r_ab)
    f2 = bis_a.intersect(bis_c)
    return Ellipse(f1, f2, r_bc.dist(f2))


def weights_from_touch_points(a: Point2, b: Point2, c: Point2,
                              k: Point2, l: Point2, m: Point2,
                              gate: float = 1e-6) -> WeightTriple:
    """Recover (m1, m2, m3) from touch points K on BC, L on CA, M on AB.

    K divides BC in the ratio m2 : m3, L divides CA in m3 : m1, M divides AB
    in m1 : m2.  The three measured ratios are reconciled by a geometric-mean
    least squares in log space; a cevian product deviating from 1 beyond the
    gate raises InconsistentRatios.
    """
    r_k = signed_ratio(b, c, k)   # m2/m3
    r_l = signed_ratio(c, a, l)   # m3/m1
    r_m = signed_ratio(a, b, m)   # m1/m2
    if r_k <= 0.0 or r_l <= 0.0 or r_m <= 0.0:
        raise InconsistentRatios(
            f"touch points must be interior: ratios ({r_m}, {r_k}, {r_l})"
        )
    product = r_k * r_l * r_m
    if abs(product - 1.0) > gate:
        raise InconsistentRatios(
            f"cevian product {product} deviates from 1 beyond the gate {gate}"
        )
    lk, ll, lm = math.log(r_k), math.log(r_l), math.log(r_m)
    s = (lk + ll + lm) / 3.0
    tk, tl, tm = lk - s, ll - s, lm - s
    # integrate the consistent log-ratios: x2-x3 = tk, x3-x1 = tl, x1-x2 = tm
    x1 = 0.0
    x2 = -tm
    x3 = tl
    w1, w2, w3 = math.exp(x1), math.exp(x2), math.exp(x3)
    return WeightTriple(w1, w2, w3)


def altitude_foot_weights(a: Point2, b: Point2, c: Point2) -> WeightTriple:
    """Tangency weights whose division points are the feet of the altitudes.

    Closed form from squared side lengths: each weight is the sum of the
    squares of the two sides through its vertex minus the square of the
    opposite side (proportional to the cosine at that vertex).
    """
    bc2 = (c - b).norm2()
    ca2 = (a - c).norm2()
    ab2 = (b - a).norm2()
    m1 = ab2 + ca2 - bc2
    m2 = bc2 + ab2 - ca2
    m3 = ca2 + bc2 - ab2
    scale = figure_diameter([a, b, c]) ** 2
    if min(m1, m2, m3) <= 1e-12 * scale:
        raise NonPositiveWeight(
            "altitude-foot weights require a strictly acute triangle"
        )
    return WeightTriple(m1, m2, m3)
