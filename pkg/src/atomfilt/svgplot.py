"""Hand-rolled SVG stem plots with byte-deterministic output.

Only the CSV artifacts carry testable numbers; these plots are a visual
convenience.  Everything is formatted through a fixed-precision helper so
identical data always produces identical bytes (no library metadata, no
timestamps).
"""
from __future__ import annotations

import numpy as np

_PANEL_W = 320
_PANEL_H = 220
_MARGIN = 34


def _fmt(v: float) -> str:
    return f"{v:.4f}".rstrip("0").rstrip(".")


def _panel(title: str, values: np.ndarray, x0: int) -> list[str]:
    n = values.size
    lo = float(min(values.min(), 0.0))
    hi = float(max(values.max(), 0.0))
    if hi - lo < 1e-30:
        hi = lo + 1.0
    inner_w = _PANEL_W - 2 * _MARGIN
    inner_h = _PANEL_H - 2 * _MARGIN

    def sx(i):
        return x0 + _MARGIN + (inner_w * i / max(n - 1, 1))

    def sy(v):
        return _MARGIN + inner_h * (hi - v) / (hi - lo)

    out = [
        f'<rect x="{x0 + _MARGIN}" y="{_MARGIN}" width="{inner_w}" height="{inner_h}" '
        'fill="none" stroke="#999"/>',
        f'<text x="{x0 + _PANEL_W // 2}" y="{_MARGIN - 12}" text-anchor="middle" '
        f'font-size="12" font-family="monospace">{title}</text>',
    ]
    base = sy(0.0)
    out.append(
        f'<line x1="{x0 + _MARGIN}" y1="{_fmt(base)}" x2="{x0 + _MARGIN + inner_w}" '
        f'y2="{_fmt(base)}" stroke="#ccc"/>'
    )
    for i, v in enumerate(values):
        x = _fmt(sx(i))
        out.append(f'<line x1="{x}" y1="{_fmt(base)}" x2="{x}" y2="{_fmt(sy(v))}" stroke="#1f77b4"/>')
        out.append(f'<circle cx="{x}" cy="{_fmt(sy(v))}" r="1.6" fill="#1f77b4"/>')
    out.append(
        f'<text x="{x0 + _MARGIN}" y="{_PANEL_H - 8}" font-size="10" '
        f'font-family="monospace">[{_fmt(lo)}, {_fmt(hi)}]</text>'
    )
    return out


def stem_svg(panels: list[tuple[str, np.ndarray]], path) -> None:
    """Write one SVG with a stem plot per (title, values) panel, side by side."""
    width = _PANEL_W * len(panels)
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{_PANEL_H}" '
        f'viewBox="0 0 {width} {_PANEL_H}">',
        '<rect width="100%" height="100%" fill="white"/>',
    ]
    for i, (title, values) in enumerate(panels):
        parts.extend(_panel(title, np.asarray(values, dtype=float), i * _PANEL_W))
    parts.append("</svg>")
    with open(path, "w") as fh:
        fh.write("\n".join(parts))
        fh.write("\n")
