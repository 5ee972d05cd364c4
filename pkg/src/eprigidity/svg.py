"""Tiny static SVG 1.1 log-log line plot emitter."""
import math
from dataclasses import dataclass
from xml.sax.saxutils import escape

PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f")


@dataclass
class Series:
    label: str
    x: list
    y: list
    dashed: bool = False
    markers: bool = False
    color: str = ""


def _decades(lo, hi):
    return list(range(math.floor(lo), math.ceil(hi) + 1))


def loglog(series, title="", xlabel="", ylabel="", width=640, height=440) -> str:
    """Render ``series`` on log10 axes; non-positive or non-finite points are dropped."""
    clean = []
    for k, s in enumerate(series):
        pts = [
            (math.log10(a), math.log10(b))
            for a, b in zip(s.x, s.y)
            if a > 0 and b > 0 and math.isfinite(a) and math.isfinite(b)
        ]
        if pts:
            clean.append((s, pts, s.color or PALETTE[k % len(PALETTE)]))
    left, right, top, bottom = 70, 170, 36, 50
    pw, ph = width - left - right, height - top - bottom
    if clean:
        xs = [p[0] for _, pts, _ in clean for p in pts]
        ys = [p[1] for _, pts, _ in clean for p in pts]
        x0, x1 = math.floor(min(xs)), math.ceil(max(xs))
        y0, y1 = math.floor(min(ys)), math.ceil(max(ys))
    else:
        x0, x1, y0, y1 = 0, 1, 0, 1
    x1 = max(x1, x0 + 1)
    y1 = max(y1, y0 + 1)

    def px(u):
        return left + (u - x0) / (x1 - x0) * pw

    def py(v):
        return top + (y1 - v) / (y1 - y0) * ph

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="11">',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>',
    ]
    for d in _decades(x0, x1):
        x = px(d)
        out.append(f'<line x1="{x:.2f}" y1="{top}" x2="{x:.2f}" y2="{top + ph}" stroke="#e0e0e0"/>')
        out.append(f'<text x="{x:.2f}" y="{top + ph + 16}" text-anchor="middle">1e{d}</text>')
    for d in _decades(y0, y1):
        y = py(d)
        out.append(f'<line x1="{left}" y1="{y:.2f}" x2="{left + pw}" y2="{y:.2f}" stroke="#e0e0e0"/>')
        out.append(f'<text x="{left - 6}" y="{y + 4:.2f}" text-anchor="end">1e{d}</text>')
    out.append(f'<rect x="{left}" y="{top}" width="{pw}" height="{ph}" fill="none" stroke="black"/>')
    if title:
        out.append(f'<text x="{left + pw / 2:.2f}" y="{top - 14}" text-anchor="middle" font-size="14">{escape(title)}</text>')
    if xlabel:
        out.append(f'<text x="{left + pw / 2:.2f}" y="{height - 10}" text-anchor="middle">{escape(xlabel)}</text>')
    if ylabel:
        out.append(
            f'<text x="16" y="{top + ph / 2:.2f}" text-anchor="middle" '
            f'transform="rotate(-90 16 {top + ph / 2:.2f})">{escape(ylabel)}</text>'
        )
    for k, (s, pts, color) in enumerate(clean):
        coords = " ".join(f"{px(u):.2f},{py(v):.2f}" for u, v in pts)
        dash = ' stroke-dasharray="5,3"' if s.dashed else ""
        out.append(f'<polyline points="{coords}" fill="none" stroke="{color}" stroke-width="1.5"{dash}/>')
        if s.markers:
            for u, v in pts:
                out.append(f'<circle cx="{px(u):.2f}" cy="{py(v):.2f}" r="2.5" fill="{color}"/>')
        ly = top + 10 + 16 * k
        lx = left + pw + 12
        out.append(f'<line x1="{lx}" y1="{ly}" x2="{lx + 20}" y2="{ly}" stroke="{color}" stroke-width="1.5"{dash}/>')
        out.append(f'<text x="{lx + 26}" y="{ly + 4}">{escape(s.label)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
