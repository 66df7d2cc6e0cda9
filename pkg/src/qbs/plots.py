"""Deterministic SVG pictures of regions and finite spectra.

Everything is rendered by hand into a fixed 520x520 canvas showing the
quadrant window ``[0, extent] x [0, extent]``; the output is a pure function
of the inputs, so identical calls produce byte-identical files.
"""

from __future__ import annotations

import math
from typing import Iterable, Sequence

from .jointspec import JointSpectrum, SpectralPoint
from .regions import RegionId, RegionKind

SIZE = 520
PAD = 46

_PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")
_POINT_COLOR = "#111827"
_AXIS_COLOR = "#374151"
_FILL_OPACITY = "0.18"


def _fmt(v: float) -> str:
    return format(v, ".4f")


class _Frame:
    def __init__(self, extent: float):
        self.extent = extent
        self.span = SIZE - 2 * PAD

    def x(self, s: float) -> float:
        return PAD + (s / self.extent) * self.span

    def y(self, t: float) -> float:
        return SIZE - PAD - (t / self.extent) * self.span

    @property
    def unit(self) -> float:
        # pixel length of one world unit, also the unit-circle radius
        return self.span / self.extent


def _quarter_disk_subpath(f: _Frame) -> str:
    # unit quarter disk in the closed quadrant; arc runs (1,0) -> (0,1)
    r = _fmt(f.unit)
    return (f"M {_fmt(f.x(1))} {_fmt(f.y(0))} "
            f"A {r} {r} 0 0 0 {_fmt(f.x(0))} {_fmt(f.y(1))} "
            f"L {_fmt(f.x(0))} {_fmt(f.y(0))} Z")


def _rect_subpath(f: _Frame, s0: float, s1: float) -> str:
    return (f"M {_fmt(f.x(s0))} {_fmt(f.y(0))} L {_fmt(f.x(s1))} {_fmt(f.y(0))} "
            f"L {_fmt(f.x(s1))} {_fmt(f.y(f.extent))} L {_fmt(f.x(s0))} {_fmt(f.y(f.extent))} Z")


def _fill(path: str, color: str, evenodd: bool = False) -> str:
    rule = ' fill-rule="evenodd"' if evenodd else ""
    return f'<path d="{path}" fill="{color}" fill-opacity="{_FILL_OPACITY}"{rule} stroke="none"/>'


def _stroke(path: str, color: str, width: float = 2.5) -> str:
    return f'<path d="{path}" fill="none" stroke="{color}" stroke-width="{_fmt(width)}"/>'


def _arc_path(f: _Frame) -> str:
    r = _fmt(f.unit)
    return (f"M {_fmt(f.x(1))} {_fmt(f.y(0))} "
            f"A {r} {r} 0 0 0 {_fmt(f.x(0))} {_fmt(f.y(1))}")


def _line_path(f: _Frame, s0, t0, s1, t1) -> str:
    return f"M {_fmt(f.x(s0))} {_fmt(f.y(t0))} L {_fmt(f.x(s1))} {_fmt(f.y(t1))}"


def _region_layers(region: RegionId, f: _Frame, color: str) -> list[str]:
    """Translate a region into fill/stroke layers inside the window."""
    k = region.kind
    m = region.m
    arc = _stroke(_arc_path(f), color)
    disk = _fill(_quarter_disk_subpath(f), color)
    outside = _fill(_rect_subpath(f, 0, f.extent) + " " + _quarter_disk_subpath(f),
                    color, evenodd=True)
    axis = _stroke(_line_path(f, 0, 0, f.extent, 0), color, 4.0)
    vline = _stroke(_line_path(f, 1, 0, 1, f.extent), color)
    if k is RegionKind.SUBNORMAL:
        return [disk, arc, axis]
    if k is RegionKind.CONTRACTION:
        return [disk, arc]
    if k is RegionKind.EXPANSION:
        return [outside, arc]
    if k is RegionKind.ISOMETRY:
        return [arc]
    if k is RegionKind.TWO_ISOMETRY:
        return [arc, vline]
    if k is RegionKind.M_ISOMETRIC:
        return [arc] if m == 1 else [arc, vline]
    if k is RegionKind.M_CONTRACTIVE:
        if m == 1:
            return [disk, arc]
        if m % 2 == 1:
            return [disk, arc, vline]
        return [disk, _fill(_rect_subpath(f, 1, f.extent), color), arc, vline]
    if k is RegionKind.M_EXPANSIVE:
        if m % 2 == 1:
            return [outside, arc]
        return [_fill(_rect_subpath(f, 0, 1) + " " + _quarter_disk_subpath(f),
                      color, evenodd=True), arc, vline]
    if k is RegionKind.DUAL_SUBNORMAL:
        return [outside, arc, axis]
    raise ValueError(f"no drawing recipe for {k}")


def _axes(f: _Frame) -> list[str]:
    parts = [f'<rect x="{PAD}" y="{PAD}" width="{f.span}" height="{f.span}" '
             f'fill="none" stroke="{_AXIS_COLOR}" stroke-width="1"/>']
    tick = 0
    while tick <= f.extent + 1e-9:
        px, py = f.x(tick), f.y(tick)
        parts.append(f'<line x1="{_fmt(px)}" y1="{SIZE - PAD}" x2="{_fmt(px)}" '
                     f'y2="{SIZE - PAD + 6}" stroke="{_AXIS_COLOR}" stroke-width="1"/>')
        parts.append(f'<line x1="{PAD - 6}" y1="{_fmt(py)}" x2="{PAD}" '
                     f'y2="{_fmt(py)}" stroke="{_AXIS_COLOR}" stroke-width="1"/>')
        parts.append(f'<text x="{_fmt(px)}" y="{SIZE - PAD + 20}" font-size="12" '
                     f'text-anchor="middle" fill="{_AXIS_COLOR}">{tick}</text>')
        parts.append(f'<text x="{PAD - 10}" y="{_fmt(py + 4)}" font-size="12" '
                     f'text-anchor="end" fill="{_AXIS_COLOR}">{tick}</text>')
        tick += 1
    parts.append(f'<text x="{SIZE - PAD + 14}" y="{SIZE - PAD + 4}" font-size="14" '
                 f'font-style="italic" fill="{_AXIS_COLOR}">s</text>')
    parts.append(f'<text x="{PAD - 4}" y="{PAD - 14}" font-size="14" '
                 f'font-style="italic" fill="{_AXIS_COLOR}">t</text>')
    return parts


def _coerce_points(points) -> list[SpectralPoint]:
    if points is None:
        return []
    if isinstance(points, JointSpectrum):
        return list(points.points)
    out = []
    for p in points:
        if isinstance(p, SpectralPoint):
            out.append(p)
        else:
            s, t = float(p[0]), float(p[1])
            out.append(SpectralPoint(s, t))
    return out


def pick_extent(points: Sequence[SpectralPoint]) -> float:
    top = 0.0
    for p in points:
        top = max(top, p.s, p.t)
    if top <= 0:
        return 2.0
    return max(2.0, math.ceil(1.15 * top / 0.5) * 0.5)


def render_svg(regions: Iterable[RegionId] = (), points=None,
               extent: float | None = None) -> str:
    """Draw regions and spectrum points; returns the SVG document text."""
    pts = _coerce_points(points)
    f = _Frame(float(extent) if extent is not None else pick_extent(pts))
    regions = list(regions)
    body: list[str] = []
    body.append(f'<rect x="0" y="0" width="{SIZE}" height="{SIZE}" fill="#ffffff"/>')
    for i, region in enumerate(regions):
        body.extend(_region_layers(region, f, _PALETTE[i % len(_PALETTE)]))
    body.extend(_axes(f))
    for p in pts:
        if p.s > f.extent or p.t > f.extent:
            continue
        cx, cy = _fmt(f.x(p.s)), _fmt(f.y(p.t))
        body.append(f'<circle cx="{cx}" cy="{cy}" r="4" fill="{_POINT_COLOR}"/>')
        if p.mult > 1:
            body.append(f'<text x="{_fmt(f.x(p.s) + 7)}" y="{_fmt(f.y(p.t) - 7)}" '
                        f'font-size="11" fill="{_POINT_COLOR}">x{p.mult}</text>')
    for i, region in enumerate(regions):
        color = _PALETTE[i % len(_PALETTE)]
        body.append(f'<text x="{PAD}" y="{18 + 14 * i}" font-size="12" '
                    f'fill="{color}">{region.token}</text>')
    head = (f'<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" '
            f'viewBox="0 0 {SIZE} {SIZE}">')
    return "\n".join([head, *body, "</svg>"]) + "\n"


def save_svg(path, regions: Iterable[RegionId] = (), points=None,
             extent: float | None = None) -> None:
    from pathlib import Path

    Path(path).write_text(render_svg(regions, points, extent))
