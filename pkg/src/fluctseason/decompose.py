"""Moving-average mean estimation and the mean + fluctuation split."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from .errors import AllUndefined, EmptySeries
from .series import MaskedSeries, Series

KINDS = ("centered", "trailing")
EDGE_POLICIES = ("undefined", "shrink")


@dataclass(frozen=True)
class MeanConfig:
    """Moving-average settings.

    For ``centered`` windows of even length the extra sample goes to the past
    side: the window around ``t`` is ``[t - ceil((L-1)/2), t + floor((L-1)/2)]``.
    """

    kind: str = "centered"
    length: int = 20
    edge_policy: str = "undefined"

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"kind must be one of {KINDS}, got {self.kind!r}")
        if self.edge_policy not in EDGE_POLICIES:
            raise ValueError(f"edge_policy must be one of {EDGE_POLICIES}, got {self.edge_policy!r}")
        if int(self.length) != self.length or self.length < 1:
            raise ValueError(f"length must be a positive integer, got {self.length!r}")

    @property
    def reach(self) -> tuple[int, int]:
        """Samples taken before and after ``t``."""
        if self.kind == "trailing":
            return self.length - 1, 0
        return math.ceil((self.length - 1) / 2), (self.length - 1) // 2


@dataclass(frozen=True)
class Decomposition:
    source: Series
    mean: MaskedSeries
    fluctuation: MaskedSeries


def _window_mean(windows: np.ndarray) -> np.ndarray:
    # Averaging offsets from each window's first sample keeps constant
    # stretches exact and makes the result independent of absolute position.
    ref = windows[:, 0]
    return ref + (windows - ref[:, None]).mean(axis=1)


def _snap_to_source(x: np.ndarray, m: np.ndarray) -> np.ndarray:
    """Nudge ``m`` by under one ulp of ``x`` where ``m + (x - m) != x``.

    Once ``m`` is a multiple of ``ulp(x)`` and ``|x - m| < |x|`` the
    difference is exactly representable and the sum restores ``x``. Samples
    with ``|x - m| >= |x|`` (a fluctuation larger than the sample itself) may
    stay off by half an ulp of the fluctuation; no nearby double fixes them.
    """
    bad = (m + (x - m)) != x
    if not bad.any():
        return m
    m = m.copy()
    xb, mb = x[bad], m[bad]
    u = np.spacing(np.abs(xb))
    with np.errstate(over="ignore", invalid="ignore"):
        snapped = np.round(mb / u) * u
        ok = np.isfinite(snapped) & ((snapped + (xb - snapped)) == xb)
    mb[ok] = snapped[ok]
    m[bad] = mb
    return m


def moving_average(x: Series, cfg: MeanConfig) -> MaskedSeries:
    """Moving average of ``x`` under ``cfg``.

    With ``edge_policy="undefined"`` the samples whose full window leaves the
    series are masked; with ``"shrink"`` the window is clipped to the series.
    """
    if len(x) == 0:
        raise EmptySeries("cannot average an empty series")
    n = len(x)
    before, after = cfg.reach
    values = np.full(n, np.nan)
    defined = np.zeros(n, dtype=bool)

    if n >= cfg.length:
        full = _window_mean(sliding_window_view(x.values, cfg.length))
        values[before:n - after] = full
        defined[before:n - after] = True

    if cfg.edge_policy == "shrink":
        for t in np.flatnonzero(~defined):
            lo, hi = max(0, t - before), min(n, t + after + 1)
            values[t] = _window_mean(x.values[None, lo:hi])[0]
        defined[:] = True

    values[defined] = _snap_to_source(x.values[defined], values[defined])

    return MaskedSeries(values, defined, x.period, x.start_index, x.label)


def decompose(x: Series, cfg: MeanConfig) -> Decomposition:
    """Split ``x`` into a smooth mean and the fluctuation ``x - mean``.

    The fluctuation is obtained by subtraction, so ``mean + fluctuation``
    reproduces ``x`` exactly wherever the mean is defined.
    """
    mean = moving_average(x, cfg)
    fluct = np.where(mean.defined, x.values - np.where(mean.defined, mean.values, 0.0), np.nan)
    fluctuation = MaskedSeries(fluct, mean.defined, x.period, x.start_index, x.label)
    return Decomposition(x, mean, fluctuation)


def default_epsilon(x: Series) -> float:
    return 1e-9 * float(np.max(np.abs(x.values)))


def normalized_fluctuation(d: Decomposition, epsilon: float | None = None) -> MaskedSeries:
    """Fluctuation relative to the mean, ``(x - mean) / mean``.

    Samples whose mean magnitude is at most ``epsilon`` (default
    ``1e-9 * max|x|``) are masked.
    """
    if epsilon is None:
        epsilon = default_epsilon(d.source)
    mean = d.mean.values
    ok = d.mean.defined & (np.abs(np.where(d.mean.defined, mean, 0.0)) > epsilon)
    if not ok.any():
        raise AllUndefined("mean is undefined or below epsilon at every sample")
    out = np.full(len(mean), np.nan)
    out[ok] = d.fluctuation.values[ok] / mean[ok]
    src = d.source
    return MaskedSeries(out, ok, src.period, src.start_index, src.label)


def deseasonalize(x: Series, cfg: MeanConfig) -> MaskedSeries:
    """Remove fluctuations, keeping only the mean component."""
    return decompose(x, cfg).mean
