"""Shared samplers and small independent oracles for the test suite.

Samplers are deterministic (caller passes a seeded Random) so the suite is
reproducible; oracles deliberately avoid the library code paths they check.
"""

from __future__ import annotations

import math
import random

import pytest

from poncelet.geometry import Line2, Point2, triangle_area
from poncelet.triangle_solver import orthic_feet


def random_triangle(rng: random.Random, min_area: float = 1e-6) -> tuple:
    """Vertices uniform in the unit square, area above the floor."""
    while True:
        pts = (Point2(rng.random(), rng.random()),
               Point2(rng.random(), rng.random()),
               Point2(rng.random(), rng.random()))
        if abs(triangle_area(*pts)) > min_area:
            return pts


def random_acute_triangle(rng: random.Random, margin: float = 0.02) -> tuple:
    """Random acute triangle in the unit square with an angle margin."""
    while True:
        a, b, c = random_triangle(rng, 1e-3)
        sq = sorted(((b - c).norm2(), (c - a).norm2(), (a - b).norm2()))
        if sq[0] + sq[1] > sq[2] * (1.0 + margin):
            return a, b, c


def random_parallelogram(rng: random.Random) -> tuple:
    """Parallelogram from a center and two independent side vectors."""
    center = Point2(rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0))
    while True:
        u = Point2(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0))
        v = Point2(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0))
        if u.norm() > 0.2 and v.norm() > 0.2 \
                and abs(u.unit().cross(v.unit())) > 0.05:
            break
    return (center - u - v, center + u - v, center + u + v, center - u + v)


def random_butterfly(rng: random.Random) -> tuple:
    """Darboux butterfly with acute kite halves, in generic position.

    Built independently of the solver: take a random acute triangle with
    its base on the x-axis, glue the mirror copy, and use the two altitude
    feet plus their mirror images (the two 3-periodic trajectories of the
    halves form the butterfly).  A random similarity hides the frame.
    """
    while True:
        a = Point2(0.0, 0.0)
        c = Point2(rng.uniform(0.5, 3.0), 0.0)
        b = Point2(rng.uniform(0.1, c.x - 0.1), rng.uniform(0.1, 2.0))
        sq = sorted(((b - c).norm2(), (c - a).norm2(), (a - b).norm2()))
        if sq[0] + sq[1] > sq[2] * 1.02:
            break
    foot_a, _, foot_c = orthic_feet(a, b, c)
    g, h = foot_a, foot_c
    k = Point2(g.x, -g.y)
    l = Point2(h.x, -h.y)
    rot = rng.uniform(0.0, 2.0 * math.pi)
    scale = rng.uniform(0.5, 2.0)
    shift = complex(rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0))
    w = scale * complex(math.cos(rot), math.sin(rot))

    def transform(p: Point2) -> Point2:
        z = p.as_complex() * w + shift
        return Point2(z.real, z.imag)

    return transform(g), transform(h), transform(k), transform(l)


# ---------------------------------------------------------------------------
# independent oracles
# ---------------------------------------------------------------------------

def reflect_across_line_oracle(p: Point2, anchor: Point2,
                               angle: float) -> Point2:
    """Householder reflection matrix applied directly."""
    c2, s2 = math.cos(2.0 * angle), math.sin(2.0 * angle)
    dx, dy = p.x - anchor.x, p.y - anchor.y
    return Point2(anchor.x + c2 * dx + s2 * dy,
                  anchor.y + s2 * dx - c2 * dy)


def lines_concurrent_oracle(l1: Line2, l2: Line2, l3: Line2,
                            tol: float = 1e-9) -> bool:
    p = l1.intersect(l2)
    return l3.distance_to(p) < tol


def min_focal_sum_on_line_oracle(f1: Point2, f2: Point2, line: Line2,
                                 span: float) -> float:
    """Minimum of |P-f1| + |P-f2| over the line, by golden-section search.

    Independent tangency oracle: the line is tangent to the ellipse with
    rope length d iff this minimum equals d.
    """
    def val(t):
        p = line.at(t)
        return p.dist(f1) + p.dist(f2)

    lo, hi = -span, span
    inv_phi = (math.sqrt(5.0) - 1.0) / 2.0
    x1 = hi - inv_phi * (hi - lo)
    x2 = lo + inv_phi * (hi - lo)
    f_x1, f_x2 = val(x1), val(x2)
    for _ in range(200):
        if f_x1 < f_x2:
            hi, x2, f_x2 = x2, x1, f_x1
            x1 = hi - inv_phi * (hi - lo)
            f_x1 = val(x1)
        else:
            lo, x1, f_x1 = x1, x2, f_x2
            x2 = lo + inv_phi * (hi - lo)
            f_x2 = val(x2)
    return min(f_x1, f_x2)


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20240817)
