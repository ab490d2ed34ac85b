"""Seasonalities and cycles from threshold crossings of a series' fluctuation.

A series is split into a moving-average mean and the fluctuation around it;
the times at which the fluctuation leaves a band ``[-threshold, threshold]``
are collected and the spacing between them decides whether the series shows
a strong (approximately periodic) or weak seasonality or cycle.
"""

__version__ = "0.1.0"

from .decompose import Decomposition, MeanConfig, decompose, deseasonalize, moving_average, normalized_fluctuation
from .detect import (
    AnalysisConfig,
    AnalysisReport,
    Classification,
    CrossingSet,
    ThresholdSpec,
    analyze,
    classify,
    detect_crossings,
    estimate_threshold,
    inter_crossing_intervals,
)
from .errors import *  # noqa: F401,F403
from .io import CsvSpec, read_csv, read_report, read_series_csv, write_report, write_series_csv
from .series import MaskedSeries, SamplingPeriod, Series, duration_in_years, make_series, rescale_mean, rescale_sum
