"""Figures for benchmark reports.

``render_svg`` writes a small hand-built SVG (fixed 800x600 canvas, one
``<polyline>`` per algorithm) whose structure is stable enough to test.
``render_figure`` draws the same data with matplotlib for any format
matplotlib can save.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path
from xml.sax.saxutils import escape

from .bounds import adaptive_curve
from .errors import EmptyReport
from .harness import ALGO_ORDER, ExperimentReport
from .sorters import Algo

WIDTH, HEIGHT = 800, 600
MARGIN_LEFT, MARGIN_RIGHT, MARGIN_TOP, MARGIN_BOTTOM = 80, 140, 40, 70
COLORS = {Algo.RT3: "#1f77b4", Algo.RT2: "#d62728", Algo.FM3: "#2ca02c"}
REFERENCE_RATIOS = (2, 3)


@dataclass(frozen=True)
class Axes:
    x_lo: float
    x_hi: float
    y_lo: float
    y_hi: float

    def x(self, value: float) -> float:
        left, right = MARGIN_LEFT, WIDTH - MARGIN_RIGHT
        if self.x_hi == self.x_lo:
            return (left + right) / 2
        return left + (value - self.x_lo) / (self.x_hi - self.x_lo) * (right - left)

    def y(self, value: float) -> float:
        top, bottom = MARGIN_TOP, HEIGHT - MARGIN_BOTTOM
        return bottom - (value - self.y_lo) / (self.y_hi - self.y_lo) * (bottom - top)


def ratio_axes(ys: list[float], x_lo: float, x_hi: float) -> Axes:
    y_hi = max(3.5, math.ceil(max(ys) * 2) / 2 + 0.5)
    y_lo = min(1.0, math.floor(min(ys) * 2) / 2)
    return Axes(x_lo, x_hi, y_lo, y_hi)


def _svg(axes: Axes, series: dict[str, list[tuple[float, float]]], colors: dict[str, str],
         x_label: str, y_label: str, x_ticks: list[tuple[float, str]]) -> str:
    plot_left, plot_right = MARGIN_LEFT, WIDTH - MARGIN_RIGHT
    plot_top, plot_bottom = MARGIN_TOP, HEIGHT - MARGIN_BOTTOM
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}">',
        f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<line class="axis" x1="{plot_left}" y1="{plot_bottom}" x2="{plot_right}" y2="{plot_bottom}" stroke="black"/>',
        f'<line class="axis" x1="{plot_left}" y1="{plot_top}" x2="{plot_left}" y2="{plot_bottom}" stroke="black"/>',
    ]
    for value, label in x_ticks:
        x = axes.x(value)
        out.append(f'<text class="xtick" x="{x:.2f}" y="{plot_bottom + 18}" font-size="12" '
                   f'text-anchor="middle">{escape(label)}</text>')
    y = math.ceil(axes.y_lo * 2) / 2
    while y <= axes.y_hi + 1e-9:
        out.append(f'<text class="ytick" x="{plot_left - 8}" y="{axes.y(y) + 4:.2f}" font-size="12" '
                   f'text-anchor="end">{y:g}</text>')
        y += 0.5
    for ratio in REFERENCE_RATIOS:
        yy = axes.y(ratio)
        out.append(f'<line class="ref" data-ratio="{ratio}" x1="{plot_left}" y1="{yy:.2f}" '
                   f'x2="{plot_right}" y2="{yy:.2f}" stroke="gray" stroke-dasharray="6,4"/>')
    for idx, (name, pts) in enumerate(series.items()):
        coords = " ".join(f"{axes.x(px):.2f},{axes.y(py):.2f}" for px, py in pts)
        color = colors.get(name, "black")
        out.append(f'<polyline class="series" data-algo="{escape(name)}" points="{coords}" '
                   f'fill="none" stroke="{color}" stroke-width="2"/>')
        for px, py in pts:
            out.append(f'<circle cx="{axes.x(px):.2f}" cy="{axes.y(py):.2f}" r="3" fill="{color}"/>')
        ly = plot_top + 20 + 20 * idx
        out.append(f'<text class="legend" x="{plot_right + 15}" y="{ly}" font-size="14" '
                   f'fill="{color}">{escape(name)}</text>')
    out.append(f'<text class="xlabel" x="{(plot_left + plot_right) / 2}" y="{HEIGHT - 20}" '
               f'font-size="14" text-anchor="middle">{escape(x_label)}</text>')
    out.append(f'<text class="ylabel" x="20" y="{(plot_top + plot_bottom) / 2}" font-size="14" '
               f'text-anchor="middle" transform="rotate(-90 20 {(plot_top + plot_bottom) / 2})">'
               f'{escape(y_label)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def ratio_svg(report: ExperimentReport) -> tuple[str, Axes]:
    summary = report.summary
    if not summary:
        raise EmptyReport("the report has no rows to plot")
    sizes = sorted({s.size for s in summary})
    logs = [math.log2(s) for s in sizes]
    axes = ratio_axes([s.mean for s in summary], min(logs), max(logs))
    series: dict[str, list[tuple[float, float]]] = {}
    for s in summary:
        series.setdefault(s.algo.value, []).append((math.log2(s.size), s.mean))
    colors = {a.value: c for a, c in COLORS.items()}
    ticks = [(math.log2(s), str(s)) for s in sizes]
    return _svg(axes, series, colors, "permutation size (log scale)",
                "mean ratio: ops / lower bound", ticks), axes


def adaptive_svg(algos, b: int) -> tuple[str, Axes]:
    curves = [adaptive_curve(a, b) for a in algos]
    if not curves:
        raise EmptyReport("no algorithm given for the adaptive plot")
    r_hi = max(c.points[-1][0] for c in curves)
    axes = ratio_axes([float(p) for c in curves for _, p in c.points], 0, r_hi)
    series = {c.algo.value: [(r, float(v)) for r, v in c.points] for c in curves}
    colors = {a.value: c for a, c in COLORS.items()}
    step = max(1, r_hi // 10)
    ticks = [(r, str(r)) for r in range(0, r_hi + 1, step)]
    return _svg(axes, series, colors, f"prefix reversals used by an optimum (b = {b})",
                "adaptive ratio bound", ticks), axes


def render_svg(report: ExperimentReport, path: str | Path) -> None:
    text, _ = ratio_svg(report)
    Path(path).write_text(text, encoding="utf-8")


def render_adaptive_svg(algos, b: int, path: str | Path) -> None:
    text, _ = adaptive_svg([Algo(a) for a in algos], b)
    Path(path).write_text(text, encoding="utf-8")


def render_figure(report: ExperimentReport, path: str | Path, adaptive_b: int | None = None) -> None:
    """Matplotlib version of the ratio plot; adds the adaptive panel if ``adaptive_b``."""
    import matplotlib

    matplotlib.use("Agg")
    from matplotlib import pyplot as plt

    summary = report.summary
    if not summary:
        raise EmptyReport("the report has no rows to plot")
    ncols = 1 if adaptive_b is None else 2
    fig, axs = plt.subplots(1, ncols, figsize=(6.5 * ncols, 4.5), squeeze=False)
    ax = axs[0][0]
    for algo in ALGO_ORDER:
        rows = [s for s in summary if s.algo is algo]
        if not rows:
            continue
        xs = [s.size for s in rows]
        ax.plot(xs, [s.mean for s in rows], marker="o", color=COLORS[algo], label=algo.value)
        ax.fill_between(xs, [s.min for s in rows], [s.max for s in rows], color=COLORS[algo], alpha=0.15)
    for ratio in REFERENCE_RATIOS:
        ax.axhline(ratio, color="gray", linestyle="--", linewidth=0.8)
    ax.set_xscale("log", base=2)
    ax.set_xlabel("permutation size")
    ax.set_ylabel("ops / lower bound")
    ax.legend()
    if adaptive_b is not None:
        ax = axs[0][1]
        for algo in ALGO_ORDER:
            curve = adaptive_curve(algo, adaptive_b)
            ax.plot([r for r, _ in curve.points], [float(v) for _, v in curve.points],
                    color=COLORS[algo], label=algo.value)
        ax.set_xlabel(f"prefix reversals used by an optimum (b = {adaptive_b})")
        ax.set_ylabel("adaptive ratio bound")
        ax.legend()
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
