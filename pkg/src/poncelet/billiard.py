"""Forward simulation of billiards inside an ellipse.

The simulator is the independent verifier for every solver: a solved
polygon fed back in must close after its period, keep the reflection law at
each bounce, and stay tangent to one confocal caustic throughout.

Chords are intersected in the canonical frame with the stable quadratic
form; after each bounce the hit point is re-projected onto the boundary
(one Newton step on the focal-sum residual along the normal) so that
hundred-bounce runs do not drift off the caustic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .conics import (
    ConfocalConic,
    ConfocalKind,
    Ellipse,
    Frame,
    caustic_of_line,
    on_ellipse_residual,
)
from .errors import CausticMismatch, GeometryError, LineThroughFocus, TangentialStart
from .geometry import Line2, Point2

ON_BOUNDARY_TOL = 1e-7    # focal-sum residual treated as "starts on the boundary"
NEAR_ROOT_FRACTION = 1e-10  # chord parameter below this * d re-hits the start


@dataclass(frozen=True)
class Trajectory:
    boundary: Ellipse
    vertices: tuple
    directions: tuple          # outgoing unit direction at each vertex
    closed: bool
    period: Optional[int]
    caustic: Optional[ConfocalConic]

    def segments(self) -> list:
        return [(self.vertices[i], self.vertices[i + 1])
                for i in range(len(self.vertices) - 1)]


def _reproject(fr: Frame, e: Ellipse, p: Point2) -> Point2:
    """Newton step on the focal-sum residual along the outward normal."""
    for _ in range(2):
        g1 = p - e.focus1
        g2 = p - e.focus2
        n1, n2 = g1.norm(), g2.norm()
        if n1 == 0.0 or n2 == 0.0:
            return p
        grad = g1 / n1 + g2 / n2
        gn2 = grad.norm2()
        if gn2 < 1e-28:
            return p
        residual = (n1 + n2) - e.rope_length
        p = p - grad * (residual / gn2)
        if abs(residual) < 1e-15 * e.rope_length:
            break
    return p


def next_bounce(e: Ellipse, start: Point2, direction: Point2) -> tuple:
    """First boundary hit along the ray, and the reflected unit direction.

    ``start`` may lie on the boundary (the near root is discarded) or
    strictly inside.  A ray tangent at its boundary start point has no
    forward chord and raises TangentialStart.
    """
    fr = Frame(e)
    u = direction.unit()
    px, py = fr.to_local(start)
    ux, uy = fr.vec_to_local(u)
    a2 = fr.a * fr.a
    b2 = fr.b * fr.b
    qa = ux * ux / a2 + uy * uy / b2
    qb = 2.0 * (px * ux / a2 + py * uy / b2)
    qc = px * px / a2 + py * py / b2 - 1.0
    disc = qb * qb - 4.0 * qa * qc
    if disc < 0.0:
        if disc < -1e-12:
            raise GeometryError("ray does not meet the ellipse")
        disc = 0.0
    sq = math.sqrt(disc)
    # stable pairing: compute the root away from cancellation first
    if qb >= 0.0:
        t1 = (-qb - sq) / (2.0 * qa)
    else:
        t1 = (-qb + sq) / (2.0 * qa)
    t2 = qc / (qa * t1) if t1 != 0.0 else 0.0
    threshold = NEAR_ROOT_FRACTION * e.rope_length
    forward = [t for t in (t1, t2) if t > threshold]
    if not forward:
        raise TangentialStart(
            f"no forward chord from {start.as_tuple()} along {u.as_tuple()}"
        )
    t_hit = min(forward)
    hit = _reproject(fr, e, fr.to_world(px + t_hit * ux, py + t_hit * uy))
    # reflect the direction across the tangent at the hit point
    g1 = hit - e.focus1
    g2 = hit - e.focus2
    tangent = (g1.unit() + g2.unit()).unit().rot90()
    reflected = tangent * (2.0 * u.dot(tangent)) - u
    return hit, reflected.unit()


def run(e: Ellipse, start: Point2, direction: Point2,
        max_bounces: int = 1000, period_tol: float = 1e-8) -> Trajectory:
    """Simulate up to ``max_bounces`` reflections from the given launch.

    The first vertex of the returned trajectory is the launch point itself
    when it lies on the boundary, otherwise the first hit.  The caustic is
    classified from the first segment (when non-focal) and checked against
    every later segment; a disagreement beyond 1e-9 * a^2 means a broken
    reflector and raises CausticMismatch.
    """
    if max_bounces < 1:
        raise ValueError("max_bounces must be >= 1")
    u = direction.unit()
    vertices = []
    directions = []
    p = start
    if on_ellipse_residual(e, start) < ON_BOUNDARY_TOL:
        vertices.append(start)
        directions.append(u)
    for _ in range(max_bounces):
        p, u_next = next_bounce(e, p, u)
        vertices.append(p)
        directions.append(u_next)
        u = u_next
    caustic = None
    lam_band = 1e-9 * e.semi_major ** 2
    try:
        caustic = caustic_of_line(
            e, Line2.through(vertices[0], vertices[1]), tol=1e-9)
    except LineThroughFocus:
        caustic = None
    if caustic is not None:
        for i in range(1, len(vertices) - 1):
            seg = Line2.through(vertices[i], vertices[i + 1])
            lam_i = caustic_of_line(e, seg, tol=1e-12).lam
            if abs(lam_i - caustic.lam) > lam_band:
                raise CausticMismatch(
                    f"segment {i} has caustic parameter {lam_i}, "
                    f"first segment {caustic.lam}"
                )
    traj = Trajectory(e, tuple(vertices), tuple(directions),
                      False, None, caustic)
    period = detect_period(traj, period_tol)
    return Trajectory(e, traj.vertices, traj.directions,
                      period is not None, period, caustic)


def detect_period(traj: Trajectory, tol: float) -> Optional[int]:
    """Smallest k >= 2 with vertex[k] = vertex[0] and direction[k] = direction[0].

    Both the position (within tol * rope length) and the outgoing direction
    (within tol) must match; position alone false-positives on symmetric
    orbits.
    """
    verts = traj.vertices
    dirs = traj.directions
    if len(verts) < 2:
        raise ValueError("need at least two vertices")
    pos_tol = tol * traj.boundary.rope_length
    for k in range(2, min(len(verts), len(dirs))):
        if verts[k].dist(verts[0]) < pos_tol and \
                dirs[k].dist(dirs[0]) < tol:
            return k
    return None


def classify_caustic(traj: Trajectory) -> ConfocalConic:
    """Caustic of the trajectory, recomputed from its vertices.

    The parameter comes from the first segment; every further segment must
    agree within 1e-9 * a^2 or CausticMismatch is raised (a tripwire for a
    broken reflector).  A focal first segment raises LineThroughFocus.
    """
    verts = traj.vertices
    if len(verts) < 2:
        raise ValueError("need at least one segment")
    e = traj.boundary
    first = caustic_of_line(e, Line2.through(verts[0], verts[1]), tol=1e-9)
    band = 1e-9 * e.semi_major ** 2
    for i in range(1, len(verts) - 1):
        lam_i = caustic_of_line(e, Line2.through(verts[i], verts[i + 1]),
                                tol=1e-12).lam
        if abs(lam_i - first.lam) > band:
            raise CausticMismatch(
                f"segment {i} parameter {lam_i} != {first.lam}"
            )
    return first
