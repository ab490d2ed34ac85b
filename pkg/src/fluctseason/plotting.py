"""Figure rendering: series with mean, fluctuation with threshold, interval stems.

Figures are written as SVG with fixed ids and no timestamp, so the same
input always yields the same bytes. Plotted elements carry stable ids
(``series``, ``mean``, ``fluctuation``, ``threshold-upper``,
``threshold-lower``, ``stem-<k>``) that downstream tools can look up.
"""

from __future__ import annotations

import io
import re
from dataclasses import dataclass
from pathlib import Path

import matplotlib as mpl
import numpy as np
from matplotlib.figure import Figure

PLOT_KINDS = ("series_with_mean", "fluctuation_with_threshold", "interval_stem")

SERIES_COLOR = "tab:blue"
OVERLAY_COLOR = "tab:red"

_RC = {
    "svg.hashsalt": "fluctseason",
    "svg.fonttype": "none",
    "font.size": 14,
    "axes.grid": False,
    "path.simplify": False,
}


@dataclass(frozen=True)
class PlotSpec:
    kind: str
    path: str
    width_px: int = 1200
    height_px: int = 500
    title: str | None = None

    def __post_init__(self):
        if self.kind not in PLOT_KINDS:
            raise ValueError(f"plot kind must be one of {PLOT_KINDS}, got {self.kind!r}")
        if self.width_px <= 0 or self.height_px <= 0:
            raise ValueError("plot dimensions must be positive")


# SVG user units are points at 72 dpi; laying out at 72 dpi makes one unit one pixel
_DPI = 72


def _new_figure(spec: PlotSpec):
    fig = Figure(figsize=(spec.width_px / _DPI, spec.height_px / _DPI), dpi=_DPI)
    ax = fig.add_subplot(1, 1, 1)
    if spec.title:
        ax.set_title(spec.title)
    return fig, ax


def _save(fig, spec: PlotSpec):
    fig.tight_layout()
    buf = io.StringIO()
    fig.savefig(buf, format="svg", metadata={"Date": None, "Creator": "fluctseason"})
    text = re.sub(r'<svg ([^>]*?)width="[\d.]+pt" height="[\d.]+pt"',
                  rf'<svg \1width="{spec.width_px}px" height="{spec.height_px}px"', buf.getvalue(), count=1)
    Path(spec.path).write_text(text, encoding="utf-8")


def _masked(x):
    # undefined samples become gaps in the line
    return x.indices, np.where(x.defined, x.values, np.nan)


def plot_series_with_mean(series, mean, spec: PlotSpec):
    """Panel (a): the series in blue, its mean in red."""
    with mpl.rc_context(_RC):
        fig, ax = _new_figure(spec)
        ax.plot(series.indices, series.values, color=SERIES_COLOR, lw=1.0, gid="series", label="series")
        if mean is not None:
            ax.plot(*_masked(mean), color=OVERLAY_COLOR, lw=1.5, gid="mean", label="mean")
        ax.set_xlabel(f"sample ({series.period})")
        ax.legend(loc="upper left")
        _save(fig, spec)


def plot_fluctuation_with_threshold(fluct, threshold, spec: PlotSpec, normalized=False):
    """Panel (b): fluctuation with horizontal rules at +threshold and -threshold."""
    with mpl.rc_context(_RC):
        fig, ax = _new_figure(spec)
        ax.plot(*_masked(fluct), color=SERIES_COLOR, lw=1.0, gid="fluctuation")
        ax.axhline(threshold, color=OVERLAY_COLOR, lw=1.2, gid="threshold-upper")
        ax.axhline(-threshold, color=OVERLAY_COLOR, lw=1.2, gid="threshold-lower")
        ax.set_xlabel(f"sample ({fluct.period})")
        ax.set_ylabel("normalized fluctuation" if normalized else "fluctuation")
        _save(fig, spec)


def plot_interval_stem(intervals, spec: PlotSpec, crossings=None, unit_label="samples"):
    """Panel (c): one stem per inter-crossing interval.

    Stems sit at the later crossing time of each pair when ``crossings`` is
    given, otherwise at the interval's ordinal position.
    """
    intervals = list(intervals)
    if crossings is not None and len(crossings) == len(intervals) + 1:
        xs = list(crossings)[1:]
    else:
        xs = list(range(1, len(intervals) + 1))
    with mpl.rc_context(_RC):
        fig, ax = _new_figure(spec)
        for k, (x, d) in enumerate(zip(xs, intervals)):
            ax.plot([x, x], [0, d], color=SERIES_COLOR, lw=1.2, gid=f"stem-{k}")
            ax.plot([x], [d], "o", color=SERIES_COLOR, ms=4)
        if not intervals:
            ax.set_xlim(0, 1)
            ax.set_ylim(0, 1)
        else:
            ax.set_ylim(0, max(intervals) * 1.15)
        ax.set_xlabel("crossing time (sample)")
        ax.set_ylabel(f"time lapse ({unit_label})")
        _save(fig, spec)


def plot_report(report, directory, stem="analysis", width_px=1200, height_px=500):
    """Render all three panels of an analysis next to each other in ``directory``.

    Returns the written paths keyed by plot kind.
    """
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    paths = {kind: str(directory / f"{stem}_{kind}.svg") for kind in PLOT_KINDS}
    d = report.decomposition
    plot_series_with_mean(d.source, d.mean, PlotSpec("series_with_mean", paths["series_with_mean"], width_px, height_px))
    plot_fluctuation_with_threshold(
        report.signal, report.threshold,
        PlotSpec("fluctuation_with_threshold", paths["fluctuation_with_threshold"], width_px, height_px),
        normalized=report.config.normalize,
    )
    plot_interval_stem(
        report.intervals,
        PlotSpec("interval_stem", paths["interval_stem"], width_px, height_px),
        crossings=report.crossings.times,
    )
    return paths
