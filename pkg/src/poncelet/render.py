"""Figure rendering for solve results and trajectories.

Renders with matplotlib's Agg backend and saves whatever format the output
extension requests (SVG by default).  Every logical layer carries a ``gid``
(boundary-ellipse, trajectory-polygon, host-polygon, focus-markers,
caustic), which the SVG backend writes out as element ids, so the files are
machine-checkable as well as viewable.
"""

from __future__ import annotations

import math

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
from matplotlib.patches import Ellipse as MplEllipse

from .conics import ConfocalKind, Ellipse, to_canonical
from .geometry import Point2

_STYLE = {
    "figure.figsize": (6.0, 6.0),
    "axes.grid": True,
    "grid.alpha": 0.25,
    "font.size": 9,
    "svg.hashsalt": "poncelet",
}


def _ellipse_patch(e: Ellipse, gid: str, **kwargs):
    canon = to_canonical(e)
    return MplEllipse(
        (canon.center.x, canon.center.y),
        2.0 * canon.semi_major,
        2.0 * canon.semi_minor,
        angle=math.degrees(canon.rotation),
        fill=False,
        gid=gid,
        **kwargs,
    )


def _closed(points):
    xs = [p.x for p in points] + [points[0].x]
    ys = [p.y for p in points] + [points[0].y]
    return xs, ys


def _draw_caustic(ax, boundary: Ellipse, lam: float, kind: str) -> None:
    canon = to_canonical(boundary)
    big_a = canon.semi_major ** 2
    big_b = canon.semi_minor ** 2
    if kind == ConfocalKind.ELLIPSE.value:
        if lam >= big_b:
            return
        patch = MplEllipse(
            (canon.center.x, canon.center.y),
            2.0 * math.sqrt(big_a - lam),
            2.0 * math.sqrt(big_b - lam),
            angle=math.degrees(canon.rotation),
            fill=False, linestyle="--", color="tab:green", gid="caustic",
        )
        ax.add_patch(patch)
    elif kind == ConfocalKind.HYPERBOLA.value:
        if not (big_b < lam < big_a):
            return
        hx = math.sqrt(big_a - lam)
        hy = math.sqrt(lam - big_b)
        # clip the branches to the extent of the boundary ellipse
        s_max = math.asinh(canon.semi_minor / hy)
        cr, sr = math.cos(canon.rotation), math.sin(canon.rotation)
        for sign in (1.0, -1.0):
            xs, ys = [], []
            steps = 64
            for i in range(steps + 1):
                s = -s_max + 2.0 * s_max * i / steps
                x = sign * hx * math.cosh(s)
                y = hy * math.sinh(s)
                xs.append(canon.center.x + cr * x - sr * y)
                ys.append(canon.center.y + sr * x + cr * y)
            ax.plot(xs, ys, linestyle="--", color="tab:green", gid="caustic")


def _point(coords) -> Point2:
    return Point2(coords[0], coords[1])


def _boundary_from_doc(doc) -> Ellipse:
    f1 = _point(doc["foci"][0])
    f2 = _point(doc["foci"][1])
    return Ellipse(f1, f2, doc["rope_length"])


def figure_for_result(doc) -> "plt.Figure":
    """Figure for a solve-result document: boundary, trajectory, host, foci, caustic."""
    with plt.rc_context(_STYLE):
        fig, ax = plt.subplots()
        boundary = _boundary_from_doc(doc["boundary"])
        ax.add_patch(_ellipse_patch(boundary, "boundary-ellipse",
                                    color="tab:blue", linewidth=1.5))
        verts = [_point(v) for v in doc["vertices"]]
        xs, ys = _closed(verts)
        ax.plot(xs, ys, color="black", linewidth=1.2, gid="trajectory-polygon")
        host = [_point(v) for v in doc["host"]["vertices"]]
        hx, hy = _closed(host)
        ax.plot(hx, hy, color="tab:gray", linewidth=1.0, gid="host-polygon")
        ax.plot([boundary.focus1.x, boundary.focus2.x],
                [boundary.focus1.y, boundary.focus2.y],
                linestyle="none", marker="o", markersize=4,
                color="tab:red", gid="focus-markers")
        caustic = doc.get("caustic")
        if caustic:
            _draw_caustic(ax, boundary, caustic["lambda"], caustic["kind"])
        ax.set_aspect("equal", adjustable="datalim")
        ax.autoscale_view()
        fig.tight_layout()
        return fig


def figure_for_trajectory(doc) -> "plt.Figure":
    """Figure for a trajectory document: boundary, bounce polyline, foci, caustic."""
    with plt.rc_context(_STYLE):
        fig, ax = plt.subplots()
        boundary = _boundary_from_doc(doc["ellipse"])
        ax.add_patch(_ellipse_patch(boundary, "boundary-ellipse",
                                    color="tab:blue", linewidth=1.5))
        verts = [_point(v) for v in doc["vertices"]]
        ax.plot([p.x for p in verts], [p.y for p in verts],
                color="black", linewidth=0.9, gid="trajectory-polygon")
        ax.plot([boundary.focus1.x, boundary.focus2.x],
                [boundary.focus1.y, boundary.focus2.y],
                linestyle="none", marker="o", markersize=4,
                color="tab:red", gid="focus-markers")
        caustic = doc.get("caustic")
        if caustic:
            _draw_caustic(ax, boundary, caustic["lambda"], caustic["kind"])
        ax.set_aspect("equal", adjustable="datalim")
        ax.autoscale_view()
        fig.tight_layout()
        return fig


def render_document(doc, output_path: str) -> None:
    """Render a solve-result or trajectory document to an image file.

    The document type is detected from its fields; the format follows the
    output extension (.svg, .png, .pdf).
    """
    if "ellipse" in doc and "vertices" in doc:
        fig = figure_for_trajectory(doc)
    elif "boundary" in doc:
        fig = figure_for_result(doc)
    else:
        raise ValueError("document is neither a solve result nor a trajectory")
    try:
        fig.savefig(output_path, metadata={"Date": None}
                    if output_path.endswith(".svg") else None)
    finally:
        plt.close(fig)
