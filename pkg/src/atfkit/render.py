"""Deterministic SVG output for base diagrams and hulls.

All geometry stays exact until emission; coordinates are printed with six
fractional digits, rounded half to even, so identical inputs always give
byte-identical documents.  The y axis is flipped at emission only.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DegenerateGeometry
from .diagram import BaseDiagram
from .hull import BoundaryHull
from .lattice import Vec2

__all__ = ["RenderSpec", "render_diagram", "render_hull", "render_chain"]


@dataclass(frozen=True)
class RenderSpec:
    width: int = 480
    height: int = 480
    stroke: str = "#1a1a1a"
    stroke_width: Fraction = Fraction(2)
    cut_dash: str = "6 4"
    node_size: Fraction = Fraction(5)
    fiber_radius: Fraction = Fraction(4)
    labels: bool = False
    margin: Fraction = Fraction(1, 20)  # of the canvas

    def __post_init__(self):
        if self.width <= 0 or self.height <= 0:
            raise DegenerateGeometry("canvas must be positive")


def _fmt(x: Fraction) -> str:
    """Fixed six fractional digits, round half to even, no locale."""
    x = Fraction(x)
    scaled = x * 10**6
    floor = scaled.numerator // scaled.denominator
    rem = scaled - floor
    if rem > Fraction(1, 2) or (rem == Fraction(1, 2) and floor % 2 != 0):
        floor += 1
    sign = "-" if floor < 0 else ""
    mag = abs(floor)
    return f"{sign}{mag // 10**6}.{mag % 10**6:06d}"


class _Frame:
    """Affine map from diagram coordinates to pixel coordinates (y flipped)."""

    def __init__(self, points, width: Fraction, height: Fraction,
                 x0: Fraction, margin: Fraction):
        xs = [Fraction(p.x) for p in points]
        ys = [Fraction(p.y) for p in points]
        min_x, max_x = min(xs), max(xs)
        min_y, max_y = min(ys), max(ys)
        span_x = max_x - min_x
        span_y = max_y - min_y
        if span_x == 0 and span_y == 0:
            raise DegenerateGeometry("nothing to draw")
        pad_x = width * margin
        pad_y = height * margin
        avail_w = width - 2 * pad_x
        avail_h = height - 2 * pad_y
        sx = avail_w / span_x if span_x else None
        sy = avail_h / span_y if span_y else None
        self.scale = min(s for s in (sx, sy) if s is not None)
        self.min_x, self.min_y = min_x, min_y
        # center the drawing in its panel
        used_w = span_x * self.scale
        used_h = span_y * self.scale
        self.off_x = x0 + pad_x + (avail_w - used_w) / 2
        self.off_y = pad_y + (avail_h - used_h) / 2
        self.max_y = max_y

    def to_px(self, p: Vec2) -> tuple[Fraction, Fraction]:
        px = self.off_x + (Fraction(p.x) - self.min_x) * self.scale
        py = self.off_y + (self.max_y - Fraction(p.y)) * self.scale
        return px, py


def _path(points_px) -> str:
    parts = []
    for i, (x, y) in enumerate(points_px):
        parts.append(("M" if i == 0 else "L") + f" {_fmt(x)} {_fmt(y)}")
    parts.append("Z")
    return " ".join(parts)


def _svg_open(width: int, height: int) -> str:
    return (
        '<?xml version="1.0" encoding="UTF-8"?>\n'
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{width}" height="{height}" viewBox="0 0 {width} {height}">\n'
    )


def _diagram_elements(d: BaseDiagram, spec: RenderSpec, frame: _Frame) -> list[str]:
    out = []
    poly_px = [frame.to_px(v) for v in d.polygon.vertices]
    out.append(
        f'<path d="{_path(poly_px)}" fill="none" stroke="{spec.stroke}" '
        f'stroke-width="{_fmt(spec.stroke_width)}"/>'
    )
    for i in range(len(d.nodes)):
        ax, ay = frame.to_px(d.anchor_point(i))
        nx, ny = frame.to_px(d.node_point(i))
        out.append(
            f'<line x1="{_fmt(ax)}" y1="{_fmt(ay)}" x2="{_fmt(nx)}" y2="{_fmt(ny)}" '
            f'stroke="{spec.stroke}" stroke-width="{_fmt(spec.stroke_width)}" '
            f'stroke-dasharray="{spec.cut_dash}" class="cut"/>'
        )
        s = spec.node_size
        out.append(
            f'<path d="M {_fmt(nx - s)} {_fmt(ny - s)} L {_fmt(nx + s)} {_fmt(ny + s)} '
            f'M {_fmt(nx - s)} {_fmt(ny + s)} L {_fmt(nx + s)} {_fmt(ny - s)}" '
            f'stroke="{spec.stroke}" stroke-width="{_fmt(spec.stroke_width)}" class="node"/>'
        )
    fx, fy = frame.to_px(d.fiber)
    out.append(
        f'<circle cx="{_fmt(fx)}" cy="{_fmt(fy)}" r="{_fmt(spec.fiber_radius)}" '
        f'fill="{spec.stroke}" class="fiber"/>'
    )
    if spec.labels and d.provenance is not None:
        out.append(
            f'<text x="{_fmt(Fraction(8))}" y="{_fmt(Fraction(16))}" '
            f'font-family="monospace" font-size="12">{d.provenance}</text>'
        )
    return out


def render_diagram(d: BaseDiagram, spec: RenderSpec = RenderSpec()) -> bytes:
    """One base diagram as an SVG document."""
    if d.polygon.area() == 0:
        raise DegenerateGeometry("polygon has zero area")
    frame = _Frame(d.polygon.vertices, Fraction(spec.width), Fraction(spec.height),
                   Fraction(0), spec.margin)
    parts = [_svg_open(spec.width, spec.height)]
    parts.extend(e + "\n" for e in _diagram_elements(d, spec, frame))
    parts.append("</svg>\n")
    return "".join(parts).encode("utf-8")


def render_chain(diagrams, spec: RenderSpec = RenderSpec()) -> bytes:
    """Several diagrams side by side, one panel each, shared canvas height."""
    diagrams = list(diagrams)
    if not diagrams:
        raise DegenerateGeometry("empty chain")
    panel_w = spec.width
    total_w = panel_w * len(diagrams)
    parts = [_svg_open(total_w, spec.height)]
    for k, d in enumerate(diagrams):
        frame = _Frame(d.polygon.vertices, Fraction(panel_w), Fraction(spec.height),
                       Fraction(k * panel_w), spec.margin)
        parts.extend(e + "\n" for e in _diagram_elements(d, spec, frame))
    parts.append("</svg>\n")
    return "".join(parts).encode("utf-8")


def render_hull(h: BoundaryHull, spec: RenderSpec = RenderSpec()) -> bytes:
    """Hull triangle over a lattice dot grid, vertices labeled."""
    verts = h.hull.vertices
    min_x = min(v.x for v in verts) - 1
    max_x = max(v.x for v in verts) + 1
    min_y = min(v.y for v in verts) - 1
    max_y = max(v.y for v in verts) + 1
    corners = [Vec2(min_x, min_y), Vec2(max_x, max_y)]
    frame = _Frame(list(verts) + corners, Fraction(spec.width), Fraction(spec.height),
                   Fraction(0), spec.margin)
    parts = [_svg_open(spec.width, spec.height)]
    for gx in range(int(min_x), int(max_x) + 1):
        for gy in range(int(min_y), int(max_y) + 1):
            px, py = frame.to_px(Vec2(gx, gy))
            parts.append(
                f'<circle cx="{_fmt(px)}" cy="{_fmt(py)}" r="{_fmt(Fraction(3, 2))}" '
                f'fill="#999999" class="grid"/>\n'
            )
    poly_px = [frame.to_px(v) for v in verts]
    parts.append(
        f'<path d="{_path(poly_px)}" fill="none" stroke="{spec.stroke}" '
        f'stroke-width="{_fmt(spec.stroke_width)}"/>\n'
    )
    for v in verts:
        px, py = frame.to_px(v)
        parts.append(
            f'<text x="{_fmt(px + 4)}" y="{_fmt(py - 4)}" font-family="monospace" '
            f'font-size="11">({v.x},{v.y})</text>\n'
        )
    parts.append("</svg>\n")
    return "".join(parts).encode("utf-8")
