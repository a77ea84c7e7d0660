"""Deterministic SVG rendering of a labeling.

World coordinates map to pixels by scaling the disk radius to
``boundary_diameter_px / 2`` around the canvas center, with the y axis
flipped so CCW angles stay CCW on screen.  Numbers are written with three
decimals, so identical inputs give identical bytes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from xml.sax.saxutils import escape

from .geometry import TWO_PI, Direction, LeaderStyle, angular_distance
from .instance import Instance
from .labeling import Labeling, check_consistent


@dataclass(frozen=True)
class RenderStyle:
    boundary_diameter_px: float = 440.0
    label_band_px: float = 20.0
    font_pt: float = 10.0
    feature_diameter_px: float = 5.0
    label_fill: str = "#add8e6"
    ink: str = "#444444"
    highlight: str = "#ff0000"
    label_gap_deg: float = 1.0  # trimmed from each end of every label arc
    highlight_target: int | None = None
    highlight_part: str = "feature"  # or "label"
    flip_lower_labels: bool = False

    def __post_init__(self):
        if self.highlight_part not in ("feature", "label"):
            raise ValueError(f"unknown highlight_part {self.highlight_part!r}")
        if min(self.boundary_diameter_px, self.label_band_px, self.feature_diameter_px) <= 0:
            raise ValueError("pixel sizes must be positive")

    @property
    def total_diameter_px(self) -> float:
        return self.boundary_diameter_px + 2 * self.label_band_px


def _f(x: float) -> str:
    s = f"{x:.3f}"
    return "0.000" if s == "-0.000" else s


class _Canvas:
    def __init__(self, R: float, style: RenderStyle):
        self.c = style.total_diameter_px / 2
        self.scale = (style.boundary_diameter_px / 2) / R

    def xy(self, r_world: float, theta: float) -> tuple[float, float]:
        rp = r_world * self.scale
        return self.c + rp * math.cos(theta), self.c - rp * math.sin(theta)

    def xy_px(self, r_px: float, theta: float) -> tuple[float, float]:
        return self.c + r_px * math.cos(theta), self.c - r_px * math.sin(theta)


def leader_path(canvas: _Canvas, style: LeaderStyle, r: float, theta: float, beta: float, R: float) -> str:
    """SVG path data for one leader."""
    x0, y0 = canvas.xy(r, theta)
    x2, y2 = canvas.xy(R, beta)
    if style is LeaderStyle.SL:
        return f"M {_f(x0)} {_f(y0)} L {_f(x2)} {_f(y2)}"
    delta, direction = angular_distance(theta, beta)
    x1, y1 = canvas.xy(r, beta)
    rp = r * canvas.scale
    # screen y is flipped, so a CCW arc in world space has SVG sweep-flag 0
    sweep = 0 if direction is Direction.CCW else 1
    large = 1 if delta > math.pi else 0
    return (
        f"M {_f(x0)} {_f(y0)} A {_f(rp)} {_f(rp)} 0 {large} {sweep} {_f(x1)} {_f(y1)} "
        f"L {_f(x2)} {_f(y2)}"
    )


def _band_path(canvas, r_in, r_out, a0, a1) -> str:
    """Annular sector from angle a0 to a1 (CCW, a1 > a0)."""
    large = 1 if a1 - a0 > math.pi else 0
    ox0, oy0 = canvas.xy_px(r_out, a0)
    ox1, oy1 = canvas.xy_px(r_out, a1)
    ix1, iy1 = canvas.xy_px(r_in, a1)
    ix0, iy0 = canvas.xy_px(r_in, a0)
    return (
        f"M {_f(ox0)} {_f(oy0)} A {_f(r_out)} {_f(r_out)} 0 {large} 0 {_f(ox1)} {_f(oy1)} "
        f"L {_f(ix1)} {_f(iy1)} A {_f(r_in)} {_f(r_in)} 0 {large} 1 {_f(ix0)} {_f(iy0)} Z"
    )


def _text_arc(canvas, r_px, a0, a1, flip: bool) -> str:
    """Guide path for label text; runs clockwise on screen so glyph tops face outward."""
    large = 1 if a1 - a0 > math.pi else 0
    if flip:
        x0, y0 = canvas.xy_px(r_px, a0)
        x1, y1 = canvas.xy_px(r_px, a1)
        return f"M {_f(x0)} {_f(y0)} A {_f(r_px)} {_f(r_px)} 0 {large} 0 {_f(x1)} {_f(y1)}"
    x0, y0 = canvas.xy_px(r_px, a1)
    x1, y1 = canvas.xy_px(r_px, a0)
    return f"M {_f(x0)} {_f(y0)} A {_f(r_px)} {_f(r_px)} 0 {large} 1 {_f(x1)} {_f(y1)}"


def render_svg(inst: Instance, labeling: Labeling, style: RenderStyle | None = None) -> str:
    style = style or RenderStyle()
    check_consistent(inst, labeling)
    if style.highlight_target is not None and not 0 <= style.highlight_target < inst.n:
        raise ValueError("highlight_target out of range")
    R = inst.radius
    canvas = _Canvas(R, style)
    size = style.total_diameter_px
    r_in = style.boundary_diameter_px / 2
    r_out = r_in + style.label_band_px
    r_text = r_in + style.label_band_px / 2
    gap = math.radians(style.label_gap_deg)
    hl = style.highlight_target

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{size:g}" '
        f'height="{size:g}" viewBox="0 0 {size:g} {size:g}">',
        f'<circle class="boundary" cx="{_f(canvas.c)}" cy="{_f(canvas.c)}" r="{_f(r_in)}" '
        f'fill="none" stroke="{style.ink}" stroke-width="0.5"/>',
        '<g class="labels">',
    ]
    defs = []
    for i in labeling.order:
        s, e = labeling.label_arcs[i]
        a0, a1 = s / R, e / R
        trim = min(gap, 0.25 * (a1 - a0))
        a0, a1 = a0 + trim, a1 - trim
        out.append(
            f'<path class="label" data-feature="{i}" d="{_band_path(canvas, r_in, r_out, a0, a1)}" '
            f'fill="{style.label_fill}"/>'
        )
        mid = 0.5 * (a0 + a1) % TWO_PI
        flip = style.flip_lower_labels and mid > math.pi
        defs.append(f'<path id="tp{i}" d="{_text_arc(canvas, r_text, a0, a1, flip)}"/>')
    out.append("</g>")
    out.append("<defs>")
    out += defs
    out.append("</defs>")

    out.append(f'<g class="label-text" font-size="{_f(style.font_pt)}pt" font-family="sans-serif">')
    for i, f in enumerate(inst.features):
        color = style.highlight if (hl == i and style.highlight_part == "label") else style.ink
        out.append(
            f'<text fill="{color}" dominant-baseline="middle"><textPath href="#tp{i}" '
            f'startOffset="50%" text-anchor="middle">{escape(f.label_text)}</textPath></text>'
        )
    out.append("</g>")

    out.append(f'<g class="leaders" fill="none" stroke="{style.ink}" stroke-width="1">')
    for i, (f, p) in enumerate(zip(inst.features, labeling.ports)):
        d = leader_path(canvas, labeling.style, f.position.r, f.position.theta, p.beta, R)
        out.append(f'<path class="leader" data-feature="{i}" d="{d}"/>')
    out.append("</g>")

    out.append('<g class="features">')
    rad = style.feature_diameter_px / 2
    for i, f in enumerate(inst.features):
        x, y = canvas.xy(f.position.r, f.position.theta)
        color = style.highlight if (hl == i and style.highlight_part == "feature") else style.ink
        out.append(
            f'<circle class="feature" data-feature="{i}" cx="{_f(x)}" cy="{_f(y)}" r="{_f(rad)}" fill="{color}"/>'
        )
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def write_svg(inst: Instance, labeling: Labeling, path, style: RenderStyle | None = None) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(render_svg(inst, labeling, style))
