"""Plain SVG 1.1 emission for trajectories and scaling regions."""
from __future__ import annotations

import numpy as np

from .design import LambdaRegion, RegionKind

_HEADER = '<?xml version="1.0" encoding="UTF-8"?>\n'


def _f(x: float) -> str:
    return f"{x + 0.0:.6g}"


def _svg(view: tuple[float, float, float, float], body: list[str], size: int = 600) -> str:
    x0, y0, w, h = view
    return (
        _HEADER
        + f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{size}" height="{size}" '
        + f'viewBox="{_f(x0)} {_f(y0)} {_f(w)} {_f(h)}">\n'
        + "\n".join(body)
        + "\n</svg>\n"
    )


def fitted_view(points: np.ndarray, margin: float = 0.05) -> tuple[float, float, float, float]:
    """Bounding box of complex ``points`` in SVG coordinates (y down) plus a margin."""
    xs, ys = points.real, -points.imag
    x0, x1, y0, y1 = xs.min(), xs.max(), ys.min(), ys.max()
    span = max(x1 - x0, y1 - y0, 1e-12)
    pad = margin * span
    return (x0 - pad, y0 - pad, x1 - x0 + 2 * pad, y1 - y0 + 2 * pad)


def trajectory_svg(shapes, stroke: str = "#1f4e9c") -> str:
    """One closed polyline per frame, opacity ramping 0.15 -> 1.0."""
    shapes = [np.asarray(s, dtype=np.complex128) for s in shapes]
    view = fitted_view(np.concatenate(shapes))
    width = 0.004 * max(view[2], view[3])
    k = len(shapes)
    body = []
    for i, s in enumerate(shapes):
        alpha = 1.0 if k == 1 else 0.15 + 0.85 * i / (k - 1)
        closed = np.append(s, s[0])
        pts = " ".join(f"{_f(z.real)},{_f(-z.imag)}" for z in closed)
        body.append(
            f'<polyline points="{pts}" fill="none" stroke="{stroke}" '
            f'stroke-opacity="{alpha:.4f}" stroke-width="{_f(width)}"/>'
        )
    return _svg(view, body)


def region_svg(regions: list[LambdaRegion], extent: float, inside: np.ndarray, grid: np.ndarray) -> str:
    """Shade each region over ``[-extent, extent]^2`` and mark sampled intersection points.

    ``grid`` holds the sample points and ``inside`` their intersection mask.
    """
    e = float(extent)
    view = (-e, -e, 2 * e, 2 * e)
    palette = ["#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf", "#8c564b"]
    body = [f'<rect x="{_f(-e)}" y="{_f(-e)}" width="{_f(2 * e)}" height="{_f(2 * e)}" fill="white"/>']
    box = f"M{_f(-e)},{_f(-e)} H{_f(e)} V{_f(e)} H{_f(-e)} Z"
    for i, r in enumerate(regions):
        color = palette[i % len(palette)]
        style = f'fill="{color}" fill-opacity="0.18" stroke="{color}" stroke-width="{_f(e / 300)}"'
        if r.kind is RegionKind.EMPTY:
            continue
        if r.kind is RegionKind.HALF_PLANE:
            d = r.direction / abs(r.direction)
            t = 1j * d
            far = 4 * e
            corners = [far * t, far * t + far * d, -far * t + far * d, -far * t]
            pts = " ".join(f"{_f(z.real)},{_f(-z.imag)}" for z in corners)
            body.append(f'<polygon points="{pts}" {style}/>')
            continue
        cx, cy, rad = r.omega.real, -r.omega.imag, abs(r.omega)
        if r.kind is RegionKind.CIRCLE_INTERIOR:
            body.append(f'<circle cx="{_f(cx)}" cy="{_f(cy)}" r="{_f(rad)}" {style}/>')
        else:
            ring = (
                f"M{_f(cx - rad)},{_f(cy)} a{_f(rad)},{_f(rad)} 0 1,0 {_f(2 * rad)},0 "
                f"a{_f(rad)},{_f(rad)} 0 1,0 {_f(-2 * rad)},0 Z"
            )
            body.append(f'<path d="{box} {ring}" fill-rule="evenodd" {style}/>')
    dot = e / 200
    for z in grid[inside]:
        body.append(f'<circle cx="{_f(z.real)}" cy="{_f(-z.imag)}" r="{_f(dot)}" fill="black" fill-opacity="0.5"/>')
    axis = f'stroke="#555" stroke-width="{_f(e / 400)}"'
    body.append(f'<line x1="{_f(-e)}" y1="0" x2="{_f(e)}" y2="0" {axis}/>')
    body.append(f'<line x1="0" y1="{_f(-e)}" x2="0" y2="{_f(e)}" {axis}/>')
    return _svg(view, body)
