"""Command-line surface: solve | simulate | render | verify.

All commands read one JSON document (``--input PATH`` or ``-`` for stdin)
and write one JSON document (``--output PATH`` or ``-`` for stdout), except
``render``, which writes an image file.  Numbers are printed with 17
significant digits by default so that output -> parse -> output is
byte-identical; ``--digits`` lowers the display precision.

Exit codes: 0 success, 2 parse error, 3 solver/geometry error, 4 I/O error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

from . import quad_solver, triangle_solver
from .billiard import run as run_billiard
from .conics import (
    ConfocalKind,
    Ellipse,
    caustic_of_line,
    on_ellipse_residual,
    tangency_residual,
    to_canonical,
)
from .errors import GeometryError, InvalidInput, LineThroughFocus
from .geometry import (
    Line2,
    Point2,
    figure_diameter,
    reflection_law_residual,
    segments_cross,
)
from .verification import certify_trajectory, worst_residual

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_GEOMETRY = 3
EXIT_IO = 4


# ---------------------------------------------------------------------------
# deterministic JSON output
# ---------------------------------------------------------------------------

def format_number(v, digits: int = 17) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, int):
        return str(v)
    if not math.isfinite(v):
        raise ValueError(f"non-finite number in output: {v}")
    if v == 0.0:
        v = 0.0  # normalize -0.0 so output re-parses byte-identically
    return format(v, f".{digits}g")


def dumps_document(doc, digits: int = 17, indent: int = 2) -> str:
    """Serialize with a fixed float format; keys keep insertion order."""

    def emit(node, depth):
        pad = " " * (indent * depth)
        pad_in = " " * (indent * (depth + 1))
        if isinstance(node, dict):
            if not node:
                return "{}"
            items = [f"{pad_in}{json.dumps(k)}: {emit(v, depth + 1)}"
                     for k, v in node.items()]
            return "{\n" + ",\n".join(items) + "\n" + pad + "}"
        if isinstance(node, (list, tuple)):
            if not node:
                return "[]"
            flat = all(isinstance(v, (int, float, bool)) for v in node)
            if flat:
                return "[" + ", ".join(format_number(v, digits) for v in node) + "]"
            items = [f"{pad_in}{emit(v, depth + 1)}" for v in node]
            return "[\n" + ",\n".join(items) + "\n" + pad + "]"
        if node is None:
            return "null"
        if isinstance(node, (bool, int, float)):
            return format_number(node, digits)
        return json.dumps(node)

    return emit(doc, 0) + "\n"


# ---------------------------------------------------------------------------
# document parsing
# ---------------------------------------------------------------------------

def _parse_point(obj, label: str) -> Point2:
    if (not isinstance(obj, (list, tuple)) or len(obj) != 2
            or not all(isinstance(c, (int, float)) for c in obj)):
        raise InvalidInput(f"{label} must be a [x, y] pair, got {obj!r}")
    return Point2(float(obj[0]), float(obj[1]))


def _parse_vertices(doc) -> list:
    verts = doc.get("vertices")
    if not isinstance(verts, list) or not 3 <= len(verts) <= 4:
        raise InvalidInput("'vertices' must list 3 or 4 [x, y] pairs")
    return [_parse_point(v, f"vertices[{i}]") for i, v in enumerate(verts)]


def infer_kind(vertices) -> str:
    """Classify a polygon: triangle, parallelogram, or butterfly.

    Mirrors the mutual exclusivity of the three solvable families: 4-vertex
    input is a parallelogram when opposite sides match and nothing crosses,
    a butterfly when the congruence pattern matches and one pair of opposite
    sides crosses.
    """
    if len(vertices) == 3:
        return "triangle"
    e, f, g, h = vertices
    crossing = (segments_cross(e, f, g, h) != segments_cross(f, g, h, e))
    if quad_solver.is_parallelogram(e, f, g, h) and not crossing:
        return "parallelogram"
    if quad_solver.is_butterfly(e, f, g, h):
        return "butterfly"
    raise InvalidInput(
        "4-vertex input is neither a parallelogram nor a Darboux butterfly"
    )


def parse_polygon_input(doc) -> tuple:
    kind = str(doc.get("kind", "auto")).lower()
    vertices = _parse_vertices(doc)
    if kind == "auto":
        kind = infer_kind(vertices)
    if kind == "triangle":
        if len(vertices) != 3:
            raise InvalidInput("triangle input needs exactly 3 vertices")
    elif kind in ("parallelogram", "butterfly"):
        if len(vertices) != 4:
            raise InvalidInput(f"{kind} input needs exactly 4 vertices")
    else:
        raise InvalidInput(f"unknown kind {kind!r}")
    return kind, vertices


def _parse_ellipse(doc) -> Ellipse:
    if not isinstance(doc, dict) or "foci" not in doc or "rope_length" not in doc:
        raise InvalidInput("ellipse document needs 'foci' and 'rope_length'")
    f1 = _parse_point(doc["foci"][0], "foci[0]")
    f2 = _parse_point(doc["foci"][1], "foci[1]")
    return Ellipse(f1, f2, float(doc["rope_length"]))


# ---------------------------------------------------------------------------
# document building
# ---------------------------------------------------------------------------

def _point_doc(p: Point2):
    return [p.x, p.y]


def _ellipse_doc(e: Ellipse):
    canon = to_canonical(e)
    return {
        "foci": [_point_doc(e.focus1), _point_doc(e.focus2)],
        "rope_length": e.rope_length,
        "canonical": {
            "center": _point_doc(canon.center),
            "semi_major": canon.semi_major,
            "semi_minor": canon.semi_minor,
            "rotation": canon.rotation,
        },
    }


def _caustic_doc(e: Ellipse, first_side: Line2):
    try:
        caustic = caustic_of_line(e, first_side)
    except LineThroughFocus:
        return None
    return {"lambda": caustic.lam, "kind": caustic.kind.value}


def _certificates_doc(vertices, side_lines, boundary, tol: float):
    certs = certify_trajectory(vertices, side_lines, boundary)
    return {
        "tolerance": tol,
        "worst_residual": worst_residual(certs),
        "per_vertex": [
            {
                "vertex": _point_doc(c.vertex),
                "on_ellipse": c.on_ellipse,
                "tangency": c.tangency,
                "reflection": c.reflection,
            }
            for c in certs
        ],
    }


def solve_document(doc, tol: float):
    kind, vertices = parse_polygon_input(doc)
    if kind == "triangle":
        case = triangle_solver.boundary_ellipse(*vertices)
        host_shape = "triangle"
        details = {}
    elif kind == "parallelogram":
        case = quad_solver.parallelogram_boundary_ellipse(*vertices)
        host_shape = "rectangle"
        details = {"a": case.a, "b": case.b, "e": case.e,
                   "x": case.x, "y": case.y}
    else:
        case = quad_solver.butterfly_boundary_ellipse(*vertices)
        host_shape = "kite"
        details = {"b1": case.b1, "b2": case.b2,
                   "f1": case.f1, "f2": case.f2}
    verts = list(case.vertices)
    side_lines = list(case.side_lines())
    result = {
        "schema": "solve_result/1",
        "kind": kind,
        "vertices": [_point_doc(v) for v in verts],
        "boundary": _ellipse_doc(case.boundary),
        "host": {
            "shape": host_shape,
            "vertices": [_point_doc(v) for v in case.host],
        },
        "certificates": _certificates_doc(verts, side_lines, case.boundary,
                                          tol),
        "caustic": _caustic_doc(case.boundary,
                                Line2.through(verts[0], verts[1])),
        "details": details,
    }
    return result


def simulate_document(doc, max_bounces: int, tol: float):
    ellipse = _parse_ellipse(doc.get("ellipse"))
    start = _parse_point(doc.get("start"), "start")
    direction = _parse_point(doc.get("direction"), "direction")
    bounces = int(doc.get("max_bounces", max_bounces))
    traj = run_billiard(ellipse, start, direction, bounces)
    d = ellipse.rope_length
    focal_tol = 1e-9 * d
    seg_lines = [Line2.through(a, b) for a, b in traj.segments()]
    launch_focal = (seg_lines[0].distance_to(ellipse.focus1) < focal_tol
                    or seg_lines[0].distance_to(ellipse.focus2) < focal_tol)
    alternating = None
    if launch_focal:
        first = (ellipse.focus1
                 if seg_lines[0].distance_to(ellipse.focus1) < focal_tol
                 else ellipse.focus2)
        other = ellipse.focus2 if first is ellipse.focus1 else ellipse.focus1
        alternating = all(
            line.distance_to(first if i % 2 == 0 else other) < focal_tol
            for i, line in enumerate(seg_lines)
        )
    lams = []
    if traj.caustic is not None:
        lams = [caustic_of_line(ellipse, line, tol=1e-12).lam
                for line in seg_lines]
    reflect_residuals = [
        reflection_law_residual(
            traj.vertices[i - 1], traj.vertices[i], traj.vertices[i + 1],
            _tangent_at(ellipse, traj.vertices[i]))
        for i in range(1, len(traj.vertices) - 1)
    ]
    return {
        "schema": "trajectory/1",
        "ellipse": _ellipse_doc(ellipse),
        "start": _point_doc(start),
        "direction": _point_doc(direction.unit()),
        "vertices": [_point_doc(v) for v in traj.vertices],
        "closed": traj.closed,
        "period": traj.period,
        "caustic": ({"lambda": traj.caustic.lam,
                     "kind": traj.caustic.kind.value}
                    if traj.caustic else None),
        "focal_launch": launch_focal,
        "alternating_foci": alternating,
        "residuals": {
            "max_on_ellipse": max(on_ellipse_residual(ellipse, v)
                                  for v in traj.vertices),
            "max_reflection": max(reflect_residuals) if reflect_residuals else 0.0,
            "lambda_spread": (max(lams) - min(lams)) if lams else None,
        },
    }


def _tangent_at(e: Ellipse, p: Point2) -> Line2:
    grad = (p - e.focus1).unit() + (p - e.focus2).unit()
    return Line2(p, grad.rot90())


def _side_lines_for(kind: str, host) -> list:
    """Host side line at each trajectory vertex, in vertex order."""
    if kind == "triangle":
        a, b, c = host
        return [Line2.through(b, c), Line2.through(a, c), Line2.through(a, b)]
    a, b, c, d = host
    if kind == "parallelogram":
        return [Line2.through(a, b), Line2.through(b, c),
                Line2.through(c, d), Line2.through(d, a)]
    if kind == "butterfly":
        return [Line2.through(b, c), Line2.through(a, b),
                Line2.through(c, d), Line2.through(d, a)]
    raise InvalidInput(f"unknown kind {kind!r}")


def verify_document(doc, tol: float, max_bounces: int):
    """Independently re-certify a solve result.

    Recomputes every residual from the document's raw numbers (vertices,
    host polygon, foci, rope length) and re-simulates one full period from
    the first vertex, so a stale or edited document fails loudly.
    """
    if doc.get("schema") != "solve_result/1":
        raise InvalidInput("verify expects a solve_result/1 document")
    kind = doc.get("kind")
    vertices = [_parse_point(v, f"vertices[{i}]")
                for i, v in enumerate(doc["vertices"])]
    host = [_parse_point(v, f"host[{i}]")
            for i, v in enumerate(doc["host"]["vertices"])]
    boundary = _parse_ellipse(doc["boundary"])
    side_lines = _side_lines_for(kind, host)
    certs = certify_trajectory(vertices, side_lines, boundary)
    worst = worst_residual(certs)
    n = len(vertices)
    direction = vertices[1] - vertices[0]
    traj = run_billiard(boundary, vertices[0], direction,
                        min(n + 1, max_bounces))
    closure_error = traj.vertices[n].dist(vertices[0]) \
        / figure_diameter(vertices)
    period_ok = traj.period == n
    passed = worst < tol and period_ok and closure_error < max(tol, 1e-8)
    return {
        "schema": "verify_report/1",
        "kind": kind,
        "tolerance": tol,
        "worst_residual": worst,
        "per_vertex": [
            {
                "vertex": _point_doc(c.vertex),
                "on_ellipse": c.on_ellipse,
                "tangency": c.tangency,
                "reflection": c.reflection,
            }
            for c in certs
        ],
        "simulation": {
            "period": traj.period,
            "expected_period": n,
            "closure_error": closure_error,
        },
        "passed": passed,
    }, passed


# ---------------------------------------------------------------------------
# command plumbing
# ---------------------------------------------------------------------------

def _read_input(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _write_output(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def _error_doc(code: str, message: str):
    return {"error": {"code": code, "message": message}}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="poncelet",
        description="Boundary ellipses for billiard polygons, and an "
                    "elliptic billiard simulator.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", default="-",
                        help="input JSON document path, or - for stdin")
    common.add_argument("--output", default="-",
                        help="output path, or - for stdout")
    common.add_argument("--tol", type=float, default=1e-9,
                        help="certificate tolerance (default 1e-9)")
    common.add_argument("--max-bounces", type=int, default=1000,
                        help="simulation bounce budget (default 1000)")
    common.add_argument("--digits", type=int, default=17,
                        help="significant digits in JSON output (default 17)")
    sub.add_parser("solve", parents=[common],
                   help="boundary ellipse of a polygon trajectory")
    sub.add_parser("simulate", parents=[common],
                   help="run the billiard from an explicit launch")
    sub.add_parser("render", parents=[common],
                   help="draw a result or trajectory document to an image file")
    sub.add_parser("verify", parents=[common],
                   help="re-certify a solve result document independently")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        raw = _read_input(args.input)
    except OSError as exc:
        _write_output("-", dumps_document(_error_doc("io_error", str(exc))))
        return EXIT_IO
    try:
        doc = json.loads(raw)
    except json.JSONDecodeError as exc:
        _write_output("-", dumps_document(_error_doc("json_parse_error",
                                                     str(exc))))
        return EXIT_PARSE
    try:
        if args.command == "solve":
            result = solve_document(doc, args.tol)
            _write_output(args.output, dumps_document(result, args.digits))
            return EXIT_OK
        if args.command == "simulate":
            result = simulate_document(doc, args.max_bounces, args.tol)
            _write_output(args.output, dumps_document(result, args.digits))
            return EXIT_OK
        if args.command == "verify":
            result, passed = verify_document(doc, args.tol, args.max_bounces)
            _write_output(args.output, dumps_document(result, args.digits))
            return EXIT_OK if passed else EXIT_GEOMETRY
        if args.command == "render":
            from .render import render_document

            if args.output == "-":
                raise InvalidInput("render needs an --output file path")
            render_document(doc, args.output)
            return EXIT_OK
        raise InvalidInput(f"unknown command {args.command!r}")
    except (InvalidInput, KeyError, TypeError) as exc:
        _write_output("-", dumps_document(_error_doc("invalid_input",
                                                     str(exc))))
        return EXIT_PARSE
    except GeometryError as exc:
        _write_output("-", dumps_document(_error_doc(exc.code, str(exc))))
        return EXIT_GEOMETRY
    except OSError as exc:
        _write_output("-", dumps_document(_error_doc("io_error", str(exc))))
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
