"""Self-contained SVG line charts, no external renderer.

One polyline per series; band curves are drawn dotted.  Output is plain
XML text, deterministic for identical inputs.
"""

from __future__ import annotations

import numpy as np

__all__ = ["line_chart"]

WIDTH = 880
HEIGHT = 520
MARGIN = {"left": 70, "right": 180, "top": 40, "bottom": 50}

PALETTE = ["#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"]
BAND_COLOR = "#555555"


def _escape(text: str) -> str:
    return (text.replace("&", "&amp;").replace("<", "&lt;")
            .replace(">", "&gt;").replace('"', "&quot;"))


def _fmt(v: float) -> str:
    return f"{v:.6g}"


def _ticks(lo: float, hi: float, n: int = 5) -> np.ndarray:
    if hi <= lo:
        hi = lo + 1.0
    return np.linspace(lo, hi, n)


def line_chart(series, title: str = "", x_label: str = "", y_label: str = "",
               bands=None, comment: str = "") -> str:
    """Render series = [(label, xs, ys), ...] as an SVG string.

    ``bands`` takes the same shape and is drawn as dotted grey curves
    (confidence bands).  ``comment`` is embedded as an XML comment right
    after the declaration (metadata header).
    """
    bands = bands or []
    all_x = np.concatenate([np.asarray(xs, float) for _, xs, _ in
                            list(series) + list(bands)])
    all_y = np.concatenate([np.asarray(ys, float) for _, _, ys in
                            list(series) + list(bands)])
    x_lo, x_hi = float(all_x.min()), float(all_x.max())
    y_lo, y_hi = float(min(all_y.min(), 0.0)), float(all_y.max())
    if x_hi == x_lo:
        x_hi = x_lo + 1.0
    if y_hi == y_lo:
        y_hi = y_lo + 1.0

    px_lo, px_hi = MARGIN["left"], WIDTH - MARGIN["right"]
    py_lo, py_hi = HEIGHT - MARGIN["bottom"], MARGIN["top"]

    def sx(x):
        return px_lo + (x - x_lo) / (x_hi - x_lo) * (px_hi - px_lo)

    def sy(y):
        return py_lo + (y - y_lo) / (y_hi - y_lo) * (py_hi - py_lo)

    parts = ['<?xml version="1.0" encoding="UTF-8"?>']
    if comment:
        parts.append(f"<!-- {_escape(comment)} -->")
    parts.append(
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" '
        f'height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">')
    parts.append(f'<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>')
    if title:
        parts.append(f'<text x="{WIDTH // 2}" y="24" text-anchor="middle" '
                     f'font-size="16">{_escape(title)}</text>')

    # axes
    parts.append(f'<line x1="{px_lo}" y1="{py_lo}" x2="{px_hi}" y2="{py_lo}" '
                 'stroke="black"/>')
    parts.append(f'<line x1="{px_lo}" y1="{py_lo}" x2="{px_lo}" y2="{py_hi}" '
                 'stroke="black"/>')
    for tx in _ticks(x_lo, x_hi):
        parts.append(f'<text x="{_fmt(sx(tx))}" y="{py_lo + 18}" '
                     f'text-anchor="middle" font-size="11">{_fmt(tx)}</text>')
    for ty in _ticks(y_lo, y_hi):
        parts.append(f'<text x="{px_lo - 6}" y="{_fmt(sy(ty) + 4)}" '
                     f'text-anchor="end" font-size="11">{_fmt(ty)}</text>')
    if x_label:
        parts.append(f'<text x="{(px_lo + px_hi) // 2}" y="{HEIGHT - 12}" '
                     f'text-anchor="middle" font-size="12">'
                     f'{_escape(x_label)}</text>')
    if y_label:
        parts.append(f'<text x="16" y="{(py_lo + py_hi) // 2}" font-size="12" '
                     f'transform="rotate(-90 16 {(py_lo + py_hi) // 2})" '
                     f'text-anchor="middle">{_escape(y_label)}</text>')

    legend_y = MARGIN["top"] + 10
    for i, (label, xs, ys) in enumerate(series):
        color = PALETTE[i % len(PALETTE)]
        pts = " ".join(f"{_fmt(sx(float(x)))},{_fmt(sy(float(y)))}"
                       for x, y in zip(xs, ys))
        parts.append(f'<polyline fill="none" stroke="{color}" '
                     f'stroke-width="1.5" points="{pts}"/>')
        parts.append(f'<line x1="{px_hi + 10}" y1="{legend_y}" '
                     f'x2="{px_hi + 34}" y2="{legend_y}" stroke="{color}" '
                     'stroke-width="1.5"/>')
        parts.append(f'<text x="{px_hi + 40}" y="{legend_y + 4}" '
                     f'font-size="11">{_escape(label)}</text>')
        legend_y += 18
    for label, xs, ys in bands:
        pts = " ".join(f"{_fmt(sx(float(x)))},{_fmt(sy(float(y)))}"
                       for x, y in zip(xs, ys))
        parts.append(f'<polyline fill="none" stroke="{BAND_COLOR}" '
                     f'stroke-width="1" stroke-dasharray="2,4" '
                     f'points="{pts}"/>')
        parts.append(f'<line x1="{px_hi + 10}" y1="{legend_y}" '
                     f'x2="{px_hi + 34}" y2="{legend_y}" '
                     f'stroke="{BAND_COLOR}" stroke-dasharray="2,4"/>')
        parts.append(f'<text x="{px_hi + 40}" y="{legend_y + 4}" '
                     f'font-size="11">{_escape(label)}</text>')
        legend_y += 18

    parts.append("</svg>")
    return "\n".join(parts) + "\n"
