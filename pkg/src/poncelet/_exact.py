"""High-precision focus computation for nearly degenerate triangles.

For a thin input triangle the host triangle of exterior bisectors is huge
(size ~ diameter / flatness) and the focus quadratic cancels catastrophically
in doubles: the foci come out with an absolute error ~ host_size * eps,
which the reflection-law certificate amplifies by 1 / semi_minor.  Re-running
just the focus pipeline at 50 significant digits and rounding the result
restores certificates to the 1e-12 level; the double path stays the default
and this module is only consulted when a self-check fails.
"""

from __future__ import annotations

from mpmath import mp, mpc, mpf
from mpmath import sqrt as mp_sqrt

from .geometry import Point2

_DPS = 50


def _sub(p, q):
    return (p[0] - q[0], p[1] - q[1])


def _add(p, q):
    return (p[0] + q[0], p[1] + q[1])


def _cross(u, v):
    return u[0] * v[1] - u[1] * v[0]


def _norm(u):
    return mp_sqrt(u[0] * u[0] + u[1] * u[1])


def _unit(u):
    n = _norm(u)
    return (u[0] / n, u[1] / n)


def _exterior_direction(prev, vertex, nxt):
    u = _unit(_sub(prev, vertex))
    v = _unit(_sub(nxt, vertex))
    s = _add(u, v)
    d = _sub(u, v)
    if _norm(s) >= _norm(d):
        i = _unit(s)
        return (-i[1], i[0])
    return _unit(d)


def _intersect(p1, d1, p2, d2):
    denom = _cross(d1, d2)
    t = _cross(_sub(p2, p1), d2) / denom
    return (p1[0] + t * d1[0], p1[1] + t * d1[1])


def triangle_foci(k: Point2, l: Point2, m: Point2) -> tuple:
    """Foci and rope length of the boundary ellipse of triangle KLM, at 50 digits.

    Mirrors the double-precision pipeline exactly: host triangle from the
    exterior bisectors, altitude-foot weights from the host side squares,
    focus quadratic from the weighted logarithmic derivative.
    Returns (focus1, focus2, rope_length) rounded back to doubles.
    """
    with mp.workdps(_DPS):
        kp = (mpf(k.x), mpf(k.y))
        lp = (mpf(l.x), mpf(l.y))
        mp_ = (mpf(m.x), mpf(m.y))
        dk = _exterior_direction(mp_, kp, lp)
        dl = _exterior_direction(kp, lp, mp_)
        dm = _exterior_direction(lp, mp_, kp)
        a = _intersect(lp, dl, mp_, dm)
        b = _intersect(kp, dk, mp_, dm)
        c = _intersect(kp, dk, lp, dl)
        bc2 = _sub(c, b)
        ca2 = _sub(a, c)
        ab2 = _sub(b, a)
        sq_bc = bc2[0] ** 2 + bc2[1] ** 2
        sq_ca = ca2[0] ** 2 + ca2[1] ** 2
        sq_ab = ab2[0] ** 2 + ab2[1] ** 2
        m1 = sq_ab + sq_ca - sq_bc
        m2 = sq_bc + sq_ab - sq_ca
        m3 = sq_ca + sq_bc - sq_ab
        z1 = mpc(a[0], a[1])
        z2 = mpc(b[0], b[1])
        z3 = mpc(c[0], c[1])
        lead = m1 + m2 + m3
        mid = m1 * (z2 + z3) + m2 * (z1 + z3) + m3 * (z1 + z2)
        last = m1 * z2 * z3 + m2 * z1 * z3 + m3 * z1 * z2
        disc = mp_sqrt(mid * mid - 4 * lead * last)
        r1 = (mid + disc) / (2 * lead)
        r2 = (mid - disc) / (2 * lead)
        kc = mpc(kp[0], kp[1])
        rope = abs(kc - r1) + abs(kc - r2)
        f1 = Point2(float(r1.real), float(r1.imag))
        f2 = Point2(float(r2.real), float(r2.imag))
        return f1, f2, float(rope)
