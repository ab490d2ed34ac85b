import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fluctseason.errors import EmptySeries, NonFiniteValue, WindowTooLarge
from fluctseason.series import SamplingPeriod, duration_in_years, make_series, rescale_mean, rescale_sum

import oracles

MONTH = SamplingPeriod(1, "month")
DAY = SamplingPeriod(1, "day")
HOUR = SamplingPeriod(1, "hour")

finite = st.floats(-1e6, 1e6, allow_nan=False, allow_infinity=False)


def test_make_series_minimal():
    x = make_series([1.0], MONTH, 0)
    assert len(x) == 1
    assert x.values.tolist() == [1.0]


def test_make_series_start_index():
    x = make_series([0, 0, 0], DAY, 5)
    assert x.start_index == 5
    assert x.indices.tolist() == [5, 6, 7]


def test_make_series_rejects_nan():
    with pytest.raises(NonFiniteValue) as exc:
        make_series([1.0, math.nan], HOUR, 0)
    assert exc.value.index == 1


def test_make_series_rejects_empty():
    with pytest.raises(EmptySeries):
        make_series([], HOUR)


def test_series_copies_and_is_read_only():
    src = np.array([1.0, 2.0])
    x = make_series(src)
    src[0] = 99
    assert x.values[0] == 1.0
    with pytest.raises(ValueError):
        x.values[0] = 5


@pytest.mark.parametrize("text, expected", [
    ("1 month", SamplingPeriod(1, "month")),
    ("5 minutes", SamplingPeriod(5, "minute")),
    ("12 hour", SamplingPeriod(12, "hour")),
    ("1 d", SamplingPeriod(1, "day")),
])
def test_period_parse(text, expected):
    assert SamplingPeriod.parse(text) == expected


@pytest.mark.parametrize("text", ["month", "0 day", "-1 hour", "3 fortnights", ""])
def test_period_parse_rejects(text):
    with pytest.raises(ValueError):
        SamplingPeriod.parse(text)


def test_period_seconds_are_positive_for_every_unit():
    for unit in ("second", "minute", "hour", "day", "week", "month", "year"):
        assert SamplingPeriod(1, unit).seconds > 0


def test_rescale_sum_blocks():
    # frozen from oracles.block_sums
    x = make_series([1, 2, 3, 4, 5, 6], MONTH)
    y = rescale_sum(x, 3)
    assert y.values.tolist() == [6.0, 15.0]
    assert y.period == SamplingPeriod(3, "month")


def test_rescale_sum_drops_incomplete_block():
    assert rescale_sum(make_series([1, 2, 3, 4, 5]), 2).values.tolist() == [3.0, 7.0]


def test_rescale_window_one_is_copy():
    x = make_series([3.5, -1.0, 2.0], HOUR, 4)
    y = rescale_sum(x, 1)
    assert y.values.tolist() == x.values.tolist()
    assert y.period == x.period
    assert y.values is not x.values


def test_rescale_mean_blocks():
    assert rescale_mean(make_series([1, 2, 3, 4, 5, 6]), 3).values.tolist() == [2.0, 5.0]
    assert rescale_mean(make_series([4, 2]), 2).values.tolist() == [3.0]


def test_rescale_mean_constant():
    x = make_series([7.25] * 10)
    assert rescale_mean(x, 4).values.tolist() == [7.25, 7.25]


def test_rescale_too_large():
    with pytest.raises(WindowTooLarge):
        rescale_sum(make_series([1, 2]), 3)
    with pytest.raises(WindowTooLarge):
        rescale_mean(make_series([1, 2]), 3)


def test_five_minutes_to_hours():
    x = make_series(np.arange(24, dtype=float), SamplingPeriod(5, "minute"))
    y = rescale_sum(x, 12)
    assert y.period.seconds == HOUR.seconds
    assert y.values.tolist() == oracles.block_sums(list(range(24)), 12)


@pytest.mark.parametrize("n, period, expected", [
    (12, MONTH, 1.0),
    (0, DAY, 0.0),
    (365, DAY, 365 / 365.25),
    (1, SamplingPeriod(1, "year"), 1.0),
    (52, SamplingPeriod(1, "week"), 364 / 365.25),
])
def test_duration_in_years(n, period, expected):
    assert duration_in_years(n, period) == pytest.approx(expected, rel=1e-15)


def test_twelve_months_is_exactly_one_year():
    assert duration_in_years(12, MONTH) == 1.0


@given(st.lists(finite, min_size=1, max_size=200), st.integers(1, 20))
def test_rescale_matches_block_oracle(values, window):
    if window > len(values):
        window = len(values)
    got = rescale_sum(make_series(values), window).values
    want = oracles.block_sums(values, window)
    assert len(got) == len(values) // window
    np.testing.assert_allclose(got, want, rtol=1e-9, atol=1e-9 * max(1.0, max(map(abs, values))))


@given(st.lists(finite, min_size=1, max_size=200), st.integers(1, 20))
def test_rescale_mean_is_sum_over_window(values, window):
    window = min(window, len(values))
    x = make_series(values)
    assert np.array_equal(rescale_mean(x, window).values, rescale_sum(x, window).values / window)


@settings(max_examples=50)
@given(st.lists(finite, min_size=4, max_size=300), st.integers(1, 6), st.integers(1, 6))
def test_rescale_composition(values, a, b):
    x = make_series(values)
    if a * b > len(x):
        return
    twice = rescale_sum(rescale_sum(x, a), b).values
    once = rescale_sum(x, a * b).values
    n = min(len(twice), len(once))
    scale = max(1.0, float(np.abs(x.values).sum()))
    np.testing.assert_allclose(twice[:n], once[:n], rtol=1e-9, atol=1e-9 * scale)
