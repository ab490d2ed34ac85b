"""Threshold crossings of the fluctuation and seasonality/cycle verdicts."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .decompose import Decomposition, MeanConfig, decompose, default_epsilon, normalized_fluctuation
from .errors import InsufficientData, NoDefinedRegion, SeasonalityError, ZeroDispersion
from .series import MaskedSeries, SamplingPeriod, Series, duration_in_years

POLARITIES = ("positive", "negative", "both")
THRESHOLD_MODES = ("absolute", "sigma_multiple")
VERDICTS = ("strong_seasonality", "weak_seasonality", "strong_cycle", "weak_cycle", "none")

# How "approximately periodic" is judged; echoed in reports.
PERIODICITY_RULE = "median_conformity"


@dataclass(frozen=True)
class ThresholdSpec:
    mode: str = "sigma_multiple"
    value: float = 1.0

    def __post_init__(self):
        if self.mode not in THRESHOLD_MODES:
            raise ValueError(f"threshold mode must be one of {THRESHOLD_MODES}, got {self.mode!r}")
        if not self.value > 0:
            raise ValueError(f"threshold value must be > 0, got {self.value!r}")


@dataclass(frozen=True)
class CrossingSet:
    polarity: str
    threshold_used: float
    times: tuple[int, ...] = ()

    def __len__(self):
        return len(self.times)


@dataclass(frozen=True)
class Classification:
    verdict: str
    estimated_period_samples: float | None = None
    intervals: tuple[int, ...] = ()
    relative_dispersion: float | None = None

    @property
    def is_strong(self) -> bool:
        return self.verdict.startswith("strong")


@dataclass(frozen=True)
class AnalysisConfig:
    mean: MeanConfig = field(default_factory=MeanConfig)
    threshold: ThresholdSpec = field(default_factory=ThresholdSpec)
    polarity: str = "positive"
    rho: float = 0.25
    q: float = 0.8
    min_crossings: int = 3
    normalize: bool = False
    epsilon: float | None = None

    def __post_init__(self):
        if self.polarity not in POLARITIES:
            raise ValueError(f"polarity must be one of {POLARITIES}, got {self.polarity!r}")
        if self.rho < 0:
            raise ValueError("rho must be non-negative")
        if not 0 < self.q <= 1:
            raise ValueError("q must lie in (0, 1]")
        if self.min_crossings < 2:
            raise ValueError("min_crossings must be at least 2")

    def as_dict(self) -> dict:
        return {
            "mean_kind": self.mean.kind,
            "mean_length": self.mean.length,
            "edge_policy": self.mean.edge_policy,
            "threshold_mode": self.threshold.mode,
            "threshold_value": self.threshold.value,
            "polarity": self.polarity,
            "rho": self.rho,
            "q": self.q,
            "min_crossings": self.min_crossings,
            "normalize": self.normalize,
            "epsilon": self.epsilon,
            "periodicity_rule": PERIODICITY_RULE,
        }


@dataclass(frozen=True)
class AnalysisReport:
    config: AnalysisConfig
    series_label: str
    period: SamplingPeriod
    decomposition: Decomposition
    signal: MaskedSeries
    threshold: float
    crossings: CrossingSet
    classification: Classification

    @property
    def intervals(self) -> tuple[int, ...]:
        return self.classification.intervals

    @property
    def verdict(self) -> str:
        return self.classification.verdict

    def summary(self) -> dict:
        """Plain-data view used for serialization."""
        cls = self.classification
        fl = self.signal.defined_values()
        config = self.config.as_dict()
        config["period"] = str(self.period)
        config["label"] = self.series_label
        return {
            "schema_version": 1,
            "config": config,
            "decomposition": {
                "n_samples": len(self.decomposition.source),
                "n_defined": self.signal.n_defined,
                "first_defined_index": int(self.signal.indices[self.signal.defined][0]),
                "fluctuation_std": float(np.std(fl, ddof=1)) if fl.size > 1 else None,
            },
            "threshold": self.threshold,
            "polarity": self.crossings.polarity,
            "crossings": list(self.crossings.times),
            "intervals": list(cls.intervals),
            "verdict": cls.verdict,
            "estimated_period_samples": cls.estimated_period_samples,
            "relative_dispersion": cls.relative_dispersion,
        }


def estimate_threshold(fluct: MaskedSeries, spec: ThresholdSpec) -> float:
    """Threshold for crossing detection.

    ``absolute`` passes ``spec.value`` through; ``sigma_multiple`` scales the
    sample standard deviation (n - 1 denominator) of the defined values.
    """
    vals = fluct.defined_values()
    if vals.size < 2:
        raise InsufficientData(f"need at least 2 defined samples, got {vals.size}")
    if spec.mode == "absolute":
        return float(spec.value)
    sd = float(np.std(vals, ddof=1))
    if sd == 0:
        raise ZeroDispersion("fluctuation has zero standard deviation")
    return spec.value * sd


def detect_crossings(fluct: MaskedSeries, threshold: float, polarity: str = "positive") -> CrossingSet:
    """Samples where ``|f|`` rises above ``threshold``.

    ``T`` is reported when ``|f(T)| > threshold`` and ``|f(T-1)| <= threshold``,
    both samples defined, and the sign of ``f(T)`` matches ``polarity``.
    Times are absolute sample indices (``start_index`` + position).
    """
    if polarity not in POLARITIES:
        raise ValueError(f"polarity must be one of {POLARITIES}, got {polarity!r}")
    if not threshold > 0:
        raise ValueError("threshold must be > 0")
    if not fluct.defined.any():
        raise NoDefinedRegion("fluctuation has no defined samples")
    f = np.where(fluct.defined, fluct.values, 0.0)
    cur, prev = f[1:], f[:-1]
    hit = fluct.defined[1:] & fluct.defined[:-1] & (np.abs(cur) > threshold) & (np.abs(prev) <= threshold)
    if polarity == "positive":
        hit &= cur > threshold
    elif polarity == "negative":
        hit &= cur < -threshold
    times = np.flatnonzero(hit) + 1 + fluct.start_index
    return CrossingSet(polarity, float(threshold), tuple(int(t) for t in times))


def inter_crossing_intervals(c: CrossingSet) -> list[int]:
    return [int(b - a) for a, b in zip(c.times, c.times[1:])]


def classify(intervals, period: SamplingPeriod, rho: float = 0.25, q: float = 0.8,
             min_crossings: int = 3) -> Classification:
    """Verdict on a list of inter-crossing intervals.

    An interval ``d`` conforms when ``|d - m| / m <= rho`` with ``m`` the
    median interval; the pattern is strong when at least a fraction ``q`` of
    intervals conform. Periods strictly shorter than one year give a
    seasonality, anything longer (or exactly one year) a cycle.
    """
    intervals = tuple(int(d) for d in intervals)
    if len(intervals) < min_crossings - 1:
        return Classification("none", None, intervals, None)
    d = np.asarray(intervals, dtype=float)
    m = float(np.median(d))
    dev = np.abs(d - m) / m
    conforming = np.count_nonzero(dev <= rho)
    strength = "strong" if conforming / d.size >= q else "weak"
    kind = "seasonality" if duration_in_years(m, period) < 1 else "cycle"
    return Classification(f"{strength}_{kind}", m, intervals, float(dev.max()))


def _staged(stage, fn, *args):
    try:
        return fn(*args)
    except SeasonalityError as exc:
        exc.stage = stage
        raise


def analyze(x: Series, config: AnalysisConfig | None = None) -> AnalysisReport:
    """Decompose, threshold, detect crossings and classify in one go.

    Errors raised by a step carry the step name in their ``stage``
    attribute.
    """
    cfg = config or AnalysisConfig()
    d = _staged("decompose", decompose, x, cfg.mean)
    if cfg.normalize:
        eps = cfg.epsilon if cfg.epsilon is not None else default_epsilon(x)
        signal = _staged("normalize", normalized_fluctuation, d, eps)
    else:
        signal = d.fluctuation
    thr = _staged("threshold", estimate_threshold, signal, cfg.threshold)
    crossings = _staged("crossings", detect_crossings, signal, thr, cfg.polarity)
    cls = classify(inter_crossing_intervals(crossings), x.period, cfg.rho, cfg.q, cfg.min_crossings)
    return AnalysisReport(cfg, x.label, x.period, d, signal, thr, crossings, cls)
