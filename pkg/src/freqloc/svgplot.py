"""Minimal static SVG line plots: axes, ticks, polylines, legend.

Emits self-contained SVG text directly; no rendering dependency. Good
enough for the scenario plots (measured spectrum against tier bounds),
which need a log y-axis spanning many decades.
"""

from __future__ import annotations

import math
from typing import Sequence

from .errors import UsageError

_WIDTH, _HEIGHT = 640, 420
_LEFT, _RIGHT, _TOP, _BOTTOM = 72, 16, 34, 48
_PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")


def _finite_span(values: list[float], log_scale: bool) -> tuple[float, float]:
    usable = [
        v
        for v in values
        if math.isfinite(v) and (not log_scale or v > 0.0)
    ]
    if not usable:
        raise UsageError("no plottable values (finite, positive on a log axis)")
    lo, hi = min(usable), max(usable)
    if lo == hi:
        pad = 1.0 if not log_scale else 0.0
        lo, hi = lo - pad, hi + pad
        if log_scale:
            lo, hi = lo / 10.0, hi * 10.0
    return lo, hi


def _ticks(lo: float, hi: float, log_scale: bool) -> list[float]:
    if log_scale:
        first = math.ceil(math.log10(lo) - 1e-9)
        last = math.floor(math.log10(hi) + 1e-9)
        step = max(1, (last - first) // 7 + 1)
        marks = [10.0**e for e in range(first, last + 1, step)]
        return marks or [lo, hi]
    span = hi - lo
    raw = span / 5.0
    mag = 10.0 ** math.floor(math.log10(raw))
    for mult in (1.0, 2.0, 2.5, 5.0, 10.0):
        if raw <= mult * mag:
            step = mult * mag
            break
    start = math.ceil(lo / step) * step
    marks = []
    value = start
    while value <= hi + 1e-9 * span:
        marks.append(value)
        value += step
    return marks


def line_plot(
    path: str,
    x: Sequence[float],
    series: Sequence[tuple[str, Sequence[float]]],
    title: str = "",
    x_label: str = "",
    y_label: str = "",
    log_y: bool = False,
) -> None:
    """Write one SVG line chart with shared x values for every series."""
    if not series:
        raise UsageError("need at least one series")
    xs = [float(v) for v in x]
    all_y = [float(v) for _, ys in series for v in ys]
    x_lo, x_hi = _finite_span(xs, log_scale=False)
    y_lo, y_hi = _finite_span(all_y, log_scale=log_y)

    def map_x(v: float) -> float:
        frac = (v - x_lo) / (x_hi - x_lo)
        return _LEFT + frac * (_WIDTH - _LEFT - _RIGHT)

    def map_y(v: float) -> float:
        if log_y:
            frac = (math.log10(v) - math.log10(y_lo)) / (
                math.log10(y_hi) - math.log10(y_lo)
            )
        else:
            frac = (v - y_lo) / (y_hi - y_lo)
        return _HEIGHT - _BOTTOM - frac * (_HEIGHT - _TOP - _BOTTOM)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_WIDTH}" '
        f'height="{_HEIGHT}" viewBox="0 0 {_WIDTH} {_HEIGHT}">',
        f'<rect width="{_WIDTH}" height="{_HEIGHT}" fill="white"/>',
        f'<rect x="{_LEFT}" y="{_TOP}" width="{_WIDTH - _LEFT - _RIGHT}" '
        f'height="{_HEIGHT - _TOP - _BOTTOM}" fill="none" stroke="#444"/>',
    ]
    if title:
        parts.append(
            f'<text x="{_WIDTH / 2:.0f}" y="20" text-anchor="middle" '
            f'font-family="sans-serif" font-size="14">{title}</text>'
        )
    for tick in _ticks(x_lo, x_hi, log_scale=False):
        px = map_x(tick)
        parts.append(
            f'<line x1="{px:.1f}" y1="{_HEIGHT - _BOTTOM}" x2="{px:.1f}" '
            f'y2="{_HEIGHT - _BOTTOM + 5}" stroke="#444"/>'
        )
        parts.append(
            f'<text x="{px:.1f}" y="{_HEIGHT - _BOTTOM + 18}" '
            f'text-anchor="middle" font-family="sans-serif" font-size="11">'
            f"{tick:.4g}</text>"
        )
    for tick in _ticks(y_lo, y_hi, log_scale=log_y):
        py = map_y(tick)
        parts.append(
            f'<line x1="{_LEFT - 5}" y1="{py:.1f}" x2="{_LEFT}" '
            f'y2="{py:.1f}" stroke="#444"/>'
        )
        parts.append(
            f'<text x="{_LEFT - 8}" y="{py + 4:.1f}" text-anchor="end" '
            f'font-family="sans-serif" font-size="11">{tick:.4g}</text>'
        )
    if x_label:
        parts.append(
            f'<text x="{(_LEFT + _WIDTH - _RIGHT) / 2:.0f}" y="{_HEIGHT - 8}" '
            f'text-anchor="middle" font-family="sans-serif" font-size="12">'
            f"{x_label}</text>"
        )
    if y_label:
        parts.append(
            f'<text x="16" y="{(_TOP + _HEIGHT - _BOTTOM) / 2:.0f}" '
            f'text-anchor="middle" font-family="sans-serif" font-size="12" '
            f'transform="rotate(-90 16 {(_TOP + _HEIGHT - _BOTTOM) / 2:.0f})">'
            f"{y_label}</text>"
        )

    for index, (label, ys) in enumerate(series):
        color = _PALETTE[index % len(_PALETTE)]
        segment: list[str] = []
        pieces: list[list[str]] = []
        for xv, yv in zip(xs, ys):
            yv = float(yv)
            ok = math.isfinite(yv) and (not log_y or yv > 0.0)
            if ok:
                segment.append(f"{map_x(xv):.2f},{map_y(yv):.2f}")
            elif segment:
                pieces.append(segment)
                segment = []
        if segment:
            pieces.append(segment)
        for piece in pieces:
            if len(piece) == 1:
                cx, cy = piece[0].split(",")
                parts.append(
                    f'<circle cx="{cx}" cy="{cy}" r="2" fill="{color}"/>'
                )
            else:
                parts.append(
                    f'<polyline points="{" ".join(piece)}" fill="none" '
                    f'stroke="{color}" stroke-width="1.5"/>'
                )
        ly = _TOP + 14 + 16 * index
        parts.append(
            f'<line x1="{_WIDTH - 150}" y1="{ly - 4}" x2="{_WIDTH - 128}" '
            f'y2="{ly - 4}" stroke="{color}" stroke-width="2"/>'
        )
        parts.append(
            f'<text x="{_WIDTH - 122}" y="{ly}" font-family="sans-serif" '
            f'font-size="11">{label}</text>'
        )
    parts.append("</svg>")
    with open(path, "w", encoding="utf-8") as handle:
        handle.write("\n".join(parts) + "\n")
