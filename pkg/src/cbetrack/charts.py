"""Static SVG line charts, written as plain markup."""

from __future__ import annotations

import math
from typing import Sequence
from xml.sax.saxutils import escape

PALETTE = ["#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"]

WIDTH, HEIGHT = 720, 420
LEFT, RIGHT, TOP, BOTTOM = 80, 130, 40, 60


def _ticks(lo: float, hi: float, count: int = 5) -> list[float]:
    if hi <= lo:
        return [lo]
    raw = (hi - lo) / count
    mag = 10 ** math.floor(math.log10(raw))
    step = min((m * mag for m in (1, 2, 5, 10) if m * mag >= raw), default=raw)
    first = math.ceil(lo / step) * step
    out = []
    t = first
    while t <= hi + 1e-9 * step:
        out.append(t)
        t += step
    return out


def _fmt(v: float) -> str:
    return f"{v:.6g}"


def line_chart(
    x: Sequence[float],
    series: Sequence[Sequence[float]],
    labels: Sequence[str],
    title: str,
    xlabel: str,
    ylabel: str,
) -> str:
    """Render one polyline per series against a shared x axis."""
    if not series or not x:
        raise ValueError("nothing to plot")
    xmin, xmax = min(x), max(x)
    ys = [v for s in series for v in s if math.isfinite(v)]
    ymin, ymax = (min(ys), max(ys)) if ys else (0.0, 1.0)
    if ymin > 0:
        ymin = 0.0
    if ymax == ymin:
        ymax = ymin + 1.0
    if xmax == xmin:
        xmax = xmin + 1.0
    pw, ph = WIDTH - LEFT - RIGHT, HEIGHT - TOP - BOTTOM

    def sx(v):
        return LEFT + (v - xmin) / (xmax - xmin) * pw

    def sy(v):
        return TOP + ph - (v - ymin) / (ymax - ymin) * ph

    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}">',
        f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<text x="{WIDTH / 2}" y="22" text-anchor="middle" font-family="sans-serif" font-size="15">{escape(title)}</text>',
        f'<rect x="{LEFT}" y="{TOP}" width="{pw}" height="{ph}" fill="none" stroke="black"/>',
    ]
    for t in _ticks(xmin, xmax):
        px = sx(t)
        parts.append(f'<line x1="{px:.2f}" y1="{TOP + ph}" x2="{px:.2f}" y2="{TOP + ph + 5}" stroke="black"/>')
        parts.append(f'<text x="{px:.2f}" y="{TOP + ph + 18}" text-anchor="middle" font-family="sans-serif" '
                     f'font-size="11">{_fmt(t)}</text>')
    for t in _ticks(ymin, ymax):
        py = sy(t)
        parts.append(f'<line x1="{LEFT - 5}" y1="{py:.2f}" x2="{LEFT}" y2="{py:.2f}" stroke="black"/>')
        parts.append(f'<text x="{LEFT - 8}" y="{py + 4:.2f}" text-anchor="end" font-family="sans-serif" '
                     f'font-size="11">{_fmt(t)}</text>')
    parts.append(f'<text x="{LEFT + pw / 2}" y="{HEIGHT - 15}" text-anchor="middle" font-family="sans-serif" '
                 f'font-size="13">{escape(xlabel)}</text>')
    parts.append(f'<text x="20" y="{TOP + ph / 2}" text-anchor="middle" font-family="sans-serif" font-size="13" '
                 f'transform="rotate(-90 20 {TOP + ph / 2})">{escape(ylabel)}</text>')

    for idx, (ys_, label) in enumerate(zip(series, labels)):
        color = PALETTE[idx % len(PALETTE)]
        pts = " ".join(f"{sx(a):.2f},{sy(b):.2f}" for a, b in zip(x, ys_) if math.isfinite(b))
        parts.append(f'<polyline fill="none" stroke="{color}" stroke-width="1.2" points="{pts}"/>')
        ly = TOP + 14 + 18 * idx
        parts.append(f'<line x1="{WIDTH - RIGHT + 12}" y1="{ly}" x2="{WIDTH - RIGHT + 32}" y2="{ly}" '
                     f'stroke="{color}" stroke-width="2"/>')
        parts.append(f'<text x="{WIDTH - RIGHT + 38}" y="{ly + 4}" font-family="sans-serif" '
                     f'font-size="11">{escape(label)}</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
