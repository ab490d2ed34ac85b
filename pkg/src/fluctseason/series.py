"""Uniformly sampled series and time-scale changes."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import EmptySeries, NonFiniteValue, WindowTooLarge

_DAY = 86400
SECONDS_PER_UNIT = {
    "second": Fraction(1),
    "minute": Fraction(60),
    "hour": Fraction(3600),
    "day": Fraction(_DAY),
    "week": Fraction(7 * _DAY),
    "month": Fraction(36525 * _DAY, 1200),
    "year": Fraction(36525 * _DAY, 100),
}
SECONDS_PER_YEAR = SECONDS_PER_UNIT["year"]

_ALIASES = {"sec": "second", "s": "second", "min": "minute", "h": "hour", "d": "day"}


@dataclass(frozen=True)
class SamplingPeriod:
    """Sampling step, e.g. ``SamplingPeriod(5, "minute")``."""

    count: int = 1
    unit: str = "month"

    def __post_init__(self):
        if int(self.count) != self.count or self.count < 1:
            raise ValueError(f"sampling count must be a positive integer, got {self.count!r}")
        if self.unit not in SECONDS_PER_UNIT:
            raise ValueError(f"unknown time unit {self.unit!r}")
        object.__setattr__(self, "count", int(self.count))

    @property
    def seconds_per_unit(self) -> Fraction:
        return SECONDS_PER_UNIT[self.unit]

    @property
    def seconds(self) -> Fraction:
        return self.count * self.seconds_per_unit

    def scaled(self, factor: int) -> SamplingPeriod:
        return SamplingPeriod(self.count * factor, self.unit)

    @classmethod
    def parse(cls, text: str) -> SamplingPeriod:
        """Parse ``"<count> <unit>"``; plurals and a few short aliases are accepted."""
        m = re.fullmatch(r"\s*(\d+)\s*([A-Za-z]+)\s*", text)
        if m is None:
            raise ValueError(f"cannot parse sampling period {text!r}, expected '<count> <unit>'")
        unit = m.group(2).lower()
        unit = _ALIASES.get(unit, unit)
        if unit not in SECONDS_PER_UNIT and unit.endswith("s"):
            unit = unit[:-1]
        return cls(int(m.group(1)), unit)

    def __str__(self):
        return f"{self.count} {self.unit}"


def _frozen(values) -> np.ndarray:
    arr = np.array(values, dtype=float, copy=True)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class Series:
    """Finite real values on a uniform grid.

    Sample ``i`` sits at time offset ``(start_index + i) * period``.
    """

    values: np.ndarray
    period: SamplingPeriod = field(default_factory=SamplingPeriod)
    start_index: int = 0
    label: str = ""

    def __post_init__(self):
        arr = _frozen(self.values)
        if arr.ndim != 1:
            raise ValueError("series values must be one-dimensional")
        if arr.size == 0:
            raise EmptySeries("series has no values")
        bad = np.flatnonzero(~np.isfinite(arr))
        if bad.size:
            raise NonFiniteValue(int(bad[0]))
        object.__setattr__(self, "values", arr)

    def __len__(self):
        return self.values.size

    @property
    def indices(self) -> np.ndarray:
        return np.arange(self.start_index, self.start_index + len(self))


@dataclass(frozen=True)
class MaskedSeries:
    """Series with a per-sample defined flag; undefined samples hold NaN."""

    values: np.ndarray
    defined: np.ndarray
    period: SamplingPeriod = field(default_factory=SamplingPeriod)
    start_index: int = 0
    label: str = ""

    def __post_init__(self):
        defined = np.array(self.defined, dtype=bool, copy=True)
        values = np.array(self.values, dtype=float, copy=True)
        if values.shape != defined.shape or values.ndim != 1:
            raise ValueError("values and mask must be one-dimensional and of equal length")
        values[~defined] = np.nan
        if not np.all(np.isfinite(values[defined])):
            raise NonFiniteValue(int(np.flatnonzero(defined & ~np.isfinite(values))[0]))
        defined.setflags(write=False)
        values.setflags(write=False)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "defined", defined)

    @classmethod
    def from_series(cls, x: Series) -> MaskedSeries:
        return cls(x.values, np.ones(len(x), dtype=bool), x.period, x.start_index, x.label)

    def __len__(self):
        return self.values.size

    @property
    def indices(self) -> np.ndarray:
        return np.arange(self.start_index, self.start_index + len(self))

    @property
    def n_defined(self) -> int:
        return int(self.defined.sum())

    def defined_values(self) -> np.ndarray:
        return self.values[self.defined]


def make_series(values, period: SamplingPeriod | None = None, start_index: int = 0,
                label: str = "") -> Series:
    """Build a :class:`Series`, copying ``values``.

    Raises EmptySeries for no values and NonFiniteValue(i) for the first
    NaN or infinite entry.
    """
    return Series(values, period or SamplingPeriod(), int(start_index), label)


def _blocks(x: Series, window: int) -> np.ndarray:
    window = int(window)
    if window < 1:
        raise ValueError(f"window must be >= 1, got {window}")
    if len(x) < window:
        raise WindowTooLarge(window, len(x))
    n = len(x) // window
    return x.values[: n * window].reshape(n, window)


def rescale_sum(x: Series, window: int) -> Series:
    """Aggregate ``window`` consecutive samples into one by summation.

    Blocks are non-overlapping and aligned to the first sample; a trailing
    incomplete block is dropped. The result is sampled at ``window`` times
    the input period, e.g. twelve 5-minute samples become one hourly sample.
    """
    sums = _blocks(x, window).sum(axis=1)
    return Series(sums, x.period.scaled(window), x.start_index // window, x.label)


def rescale_mean(x: Series, window: int) -> Series:
    """Like :func:`rescale_sum` but each block sum is divided by ``window``."""
    sums = _blocks(x, window).sum(axis=1)
    return Series(sums / window, x.period.scaled(window), x.start_index // window, x.label)


def duration_in_years(n_samples, period: SamplingPeriod) -> float:
    # Fraction keeps 12 months == 1.0 exact; n_samples may be a median (non-integral)
    return float(Fraction(n_samples) * period.seconds / SECONDS_PER_YEAR)
