"""Static SVG figures of real arrangements.

Lines are clipped to a box containing every intersection point with margin;
points of multiplicity three or more get a filled marker.  Rendering is the
one place in the package that converts exact rationals to floats.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import NonRealLine
from .geometry import Arrangement
from .poset import build_affine_poset

_SIZE = 640.0
_COLORS = (
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
    "#8c564b", "#e377c2", "#17becf", "#bcbd22", "#7f7f7f",
)


def _clip_to_box(line, x0, x1, y0, y1):
    """Endpoints of the visible segment of a line in the box, or None."""
    hits = []
    if line.b:
        for x in (x0, x1):
            y = float(line.y_at(Fraction(x)).re)
            if y0 - 1e-9 <= y <= y1 + 1e-9:
                hits.append((x, y))
    if line.a:
        for y in (y0, y1):
            x = float(((-line.c - line.b * Fraction(y)) / line.a).re)
            if x0 - 1e-9 <= x <= x1 + 1e-9:
                hits.append((x, y))
    unique = []
    for p in hits:
        if all(abs(p[0] - q[0]) + abs(p[1] - q[1]) > 1e-9 for q in unique):
            unique.append(p)
    if len(unique) < 2:
        return None
    unique.sort()
    return unique[0], unique[-1]


def render_svg(arr: Arrangement) -> str:
    if not arr.is_real:
        raise NonRealLine("only real arrangements have a picture")
    poset = build_affine_poset(arr)
    xs = [float(p.location.x.re) for p in poset.points]
    ys = [float(p.location.y.re) for p in poset.points]
    if not xs:
        xs, ys = [0.0], [0.0]
    margin = max(max(xs) - min(xs), max(ys) - min(ys), 2.0) * 0.25 + 1.0
    x0, x1 = min(xs) - margin, max(xs) + margin
    y0, y1 = min(ys) - margin, max(ys) + margin
    span = max(x1 - x0, y1 - y0)
    x1, y1 = x0 + span, y0 + span
    scale = _SIZE / span

    def to_px(x, y):
        return (x - x0) * scale, (y1 - y) * scale  # flip y for SVG

    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{_SIZE:.0f}" height="{_SIZE:.0f}" '
        f'viewBox="0 0 {_SIZE:.0f} {_SIZE:.0f}">',
        f'<rect width="{_SIZE:.0f}" height="{_SIZE:.0f}" fill="white"/>',
    ]
    for i, line in enumerate(arr.lines):
        seg = _clip_to_box(line, x0, x1, y0, y1)
        if seg is None:
            continue
        (ax, ay), (bx, by) = seg
        px_a, px_b = to_px(ax, ay), to_px(bx, by)
        color = _COLORS[i % len(_COLORS)]
        parts.append(
            f'<line x1="{px_a[0]:.2f}" y1="{px_a[1]:.2f}" '
            f'x2="{px_b[0]:.2f}" y2="{px_b[1]:.2f}" '
            f'stroke="{color}" stroke-width="1.5"/>'
        )
        lx = px_a[0] * 0.92 + px_b[0] * 0.08
        ly = px_a[1] * 0.92 + px_b[1] * 0.08
        parts.append(
            f'<text x="{lx:.2f}" y="{ly - 4:.2f}" font-size="13" '
            f'fill="{color}" font-family="sans-serif">{line.label}</text>'
        )
    for p in poset.points:
        if p.multiplicity < 3:
            continue
        cx, cy = to_px(float(p.location.x.re), float(p.location.y.re))
        parts.append(
            f'<circle cx="{cx:.2f}" cy="{cy:.2f}" r="4" fill="black"/>'
        )
        parts.append(
            f'<text x="{cx + 6:.2f}" y="{cy - 6:.2f}" font-size="11" '
            f'fill="black" font-family="sans-serif">{p.multiplicity}</text>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
