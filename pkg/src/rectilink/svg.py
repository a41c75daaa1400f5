"""Minimal SVG emitter for domains, decompositions and witness overlays."""

from __future__ import annotations

from .geometry import Decomposition, Domain, Point, SCALE


def _fmt(value: float) -> str:
    value = value / SCALE
    if value == int(value):
        return str(int(value))
    return f"{value:g}"


def render_svg(
    domain: Domain,
    decomposition: Decomposition | None = None,
    points: tuple[Point, ...] = (),
    polyline: tuple[Point, ...] = (),
    size: int = 640,
) -> str:
    """SVG text showing the boundary, holes and optional overlays.

    ``points`` are marked with circles (witness pairs / centers), ``polyline``
    is drawn as a path.  All inputs use internal (doubled) coordinates.
    """
    xs = [x for ring in domain.rings() for x, _ in ring.vertices]
    ys = [y for ring in domain.rings() for _, y in ring.vertices]
    xmin, xmax = min(xs), max(xs)
    ymin, ymax = min(ys), max(ys)
    margin = max(xmax - xmin, ymax - ymin, SCALE) * 0.05 / SCALE
    width = (xmax - xmin) / SCALE + 2 * margin
    height = (ymax - ymin) / SCALE + 2 * margin
    view = f"{xmin / SCALE - margin:g} {-(ymax / SCALE + margin):g} {width:g} {height:g}"

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="{view}" width="{size}">',
        '<g transform="scale(1,-1)">',
    ]
    subpaths = []
    for ring in domain.rings():
        coords = " L ".join(f"{_fmt(x)} {_fmt(y)}" for x, y in ring.vertices)
        subpaths.append(f"M {coords} Z")
    parts.append(
        f'<path class="domain" d="{" ".join(subpaths)}" fill-rule="evenodd"'
        ' fill="#dbe7f5" stroke="#1f3a5f" stroke-width="0.15"/>'
    )
    if decomposition is not None:
        for rect in decomposition.rects:
            parts.append(
                f'<rect class="cell" x="{_fmt(rect.xmin)}" y="{_fmt(rect.ymin)}"'
                f' width="{_fmt(rect.xmax - rect.xmin)}" height="{_fmt(rect.ymax - rect.ymin)}"'
                ' fill="none" stroke="#c05621" stroke-width="0.08" stroke-dasharray="0.4 0.2"/>'
            )
    if polyline:
        coords = " ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in polyline)
        parts.append(
            f'<polyline class="path" points="{coords}" fill="none" stroke="#2f855a" stroke-width="0.12"/>'
        )
    for x, y in points:
        parts.append(
            f'<circle class="witness" cx="{_fmt(x)}" cy="{_fmt(y)}" r="0.3" fill="#c53030"/>'
        )
    parts.append("</g></svg>")
    return "\n".join(parts)
