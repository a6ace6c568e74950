"""Minimal SVG line-chart emitter.

Writes plain SVG text with fixed-precision coordinates so that plots are
reproducible and need no plotting library.
"""

import math
from dataclasses import dataclass, field
from typing import Sequence
from xml.sax.saxutils import escape

import numpy as np

from ksjko.formatters.base import BaseFormatter

PALETTE = ["#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#17becf"]


@dataclass
class _Series:
    x: np.ndarray
    y: np.ndarray
    label: str


@dataclass
class SvgLineChart(BaseFormatter):
    """Line chart with labelled axes, optional log-scale y and a legend."""

    title: str
    x_label: str
    y_label: str
    log_y: bool = False
    width: int = 640
    height: int = 400
    series: list[_Series] = field(default_factory=list)

    MARGIN_LEFT = 70
    MARGIN_RIGHT = 150
    MARGIN_TOP = 40
    MARGIN_BOTTOM = 50

    def add_series(self, x: Sequence[float], y: Sequence[float], label: str) -> None:
        xs = np.asarray(x, dtype=np.float64)
        ys = np.asarray(y, dtype=np.float64)
        keep = np.isfinite(xs) & np.isfinite(ys)
        if self.log_y:
            keep &= ys > 0.0
        self.series.append(_Series(xs[keep], ys[keep], label))

    def format(self, data: object = None) -> str:
        return self.render()

    def _bounds(self) -> tuple[float, float, float, float]:
        xs = [s.x for s in self.series if s.x.size]
        ys = [s.y for s in self.series if s.y.size]
        if not xs:
            return 0.0, 1.0, 0.0, 1.0
        x_lo, x_hi = float(min(a.min() for a in xs)), float(max(a.max() for a in xs))
        y_lo, y_hi = float(min(a.min() for a in ys)), float(max(a.max() for a in ys))
        if self.log_y:
            y_lo, y_hi = math.floor(math.log10(y_lo)), math.ceil(math.log10(y_hi))
        if x_hi <= x_lo:
            x_hi = x_lo + 1.0
        if y_hi <= y_lo:
            y_hi = y_lo + 1.0
        return x_lo, x_hi, y_lo, y_hi

    def render(self) -> str:
        """Render the chart as an SVG document."""
        x_lo, x_hi, y_lo, y_hi = self._bounds()
        plot_w = self.width - self.MARGIN_LEFT - self.MARGIN_RIGHT
        plot_h = self.height - self.MARGIN_TOP - self.MARGIN_BOTTOM

        def px(x: np.ndarray) -> np.ndarray:
            return self.MARGIN_LEFT + (x - x_lo) / (x_hi - x_lo) * plot_w

        def py(y: np.ndarray) -> np.ndarray:
            v = np.log10(y) if self.log_y else y
            return self.MARGIN_TOP + (1.0 - (v - y_lo) / (y_hi - y_lo)) * plot_h

        parts = [
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{self.width}" '
            f'height="{self.height}" font-family="sans-serif" font-size="12">',
            f'<rect width="{self.width}" height="{self.height}" fill="white"/>',
            f'<text x="{self.width / 2:.1f}" y="22" text-anchor="middle" font-size="14">'
            f"{escape(self.title)}</text>",
            f'<rect x="{self.MARGIN_LEFT}" y="{self.MARGIN_TOP}" width="{plot_w}" '
            f'height="{plot_h}" fill="none" stroke="black"/>',
        ]
        parts.extend(self._ticks(x_lo, x_hi, y_lo, y_hi, plot_w, plot_h))

        for i, s in enumerate(self.series):
            if s.x.size == 0:
                continue
            color = PALETTE[i % len(PALETTE)]
            points = " ".join(f"{a:.2f},{b:.2f}" for a, b in zip(px(s.x), py(s.y)))
            parts.append(
                f'<polyline points="{points}" fill="none" stroke="{color}" stroke-width="1.5"/>'
            )
            ly = self.MARGIN_TOP + 16 * (i + 1)
            lx = self.width - self.MARGIN_RIGHT + 10
            parts.append(
                f'<line x1="{lx}" y1="{ly - 4}" x2="{lx + 20}" y2="{ly - 4}" '
                f'stroke="{color}" stroke-width="2"/>'
            )
            parts.append(f'<text x="{lx + 26}" y="{ly}">{escape(s.label)}</text>')

        parts.append(
            f'<text x="{self.MARGIN_LEFT + plot_w / 2:.1f}" y="{self.height - 10}" '
            f'text-anchor="middle">{escape(self.x_label)}</text>'
        )
        parts.append(
            f'<text x="16" y="{self.MARGIN_TOP + plot_h / 2:.1f}" text-anchor="middle" '
            f'transform="rotate(-90 16 {self.MARGIN_TOP + plot_h / 2:.1f})">'
            f"{escape(self.y_label)}</text>"
        )
        parts.append("</svg>")
        return "\n".join(parts) + "\n"

    def _ticks(
        self, x_lo: float, x_hi: float, y_lo: float, y_hi: float, plot_w: int, plot_h: int
    ) -> list[str]:
        out = []
        bottom = self.MARGIN_TOP + plot_h
        for k in range(5):
            frac = k / 4
            x = x_lo + frac * (x_hi - x_lo)
            sx = self.MARGIN_LEFT + frac * plot_w
            out.append(
                f'<line x1="{sx:.1f}" y1="{bottom}" x2="{sx:.1f}" y2="{bottom + 5}" '
                'stroke="black"/>'
            )
            out.append(
                f'<text x="{sx:.1f}" y="{bottom + 18}" text-anchor="middle">{x:.3g}</text>'
            )

        if self.log_y:
            levels = list(range(int(y_lo), int(y_hi) + 1))
            step = max(1, math.ceil(len(levels) / 8))
            labels = [(float(e), f"1e{e}") for e in levels[::step]]
        else:
            labels = [
                (y_lo + k / 4 * (y_hi - y_lo), f"{y_lo + k / 4 * (y_hi - y_lo):.3g}")
                for k in range(5)
            ]
        for value, text in labels:
            sy = self.MARGIN_TOP + (1.0 - (value - y_lo) / (y_hi - y_lo)) * plot_h
            out.append(
                f'<line x1="{self.MARGIN_LEFT - 5}" y1="{sy:.1f}" x2="{self.MARGIN_LEFT}" '
                f'y2="{sy:.1f}" stroke="black"/>'
            )
            out.append(
                f'<text x="{self.MARGIN_LEFT - 8}" y="{sy + 4:.1f}" text-anchor="end">{text}</text>'
            )
        return out
