"""Seeded generators for the synthetic fixtures.

All noise used by the tests comes from here, with explicit seeds.
"""

import numpy as np


def trend_plus_sinusoid(seed, n=240, level=100.0, slope=0.05, amplitude=10.0, period=12, noise=1.0):
    rng = np.random.default_rng(seed)
    t = np.arange(n)
    return level + slope * t + amplitude * np.sin(2 * np.pi * t / period) + rng.uniform(-noise, noise, n)


def white_noise(seed, n=240):
    return np.random.default_rng(seed).normal(size=n)


def five_minute_traffic(seed, weeks=8, amplitude=1.0, noise_ratio=3.0, level=0.0):
    """Daily sinusoid on a 5-minute grid plus uniform noise of ``noise_ratio`` x its amplitude."""
    rng = np.random.default_rng(seed)
    n = weeks * 7 * 288
    t = np.arange(n)
    bound = noise_ratio * amplitude
    return level + amplitude * np.sin(2 * np.pi * t / 288) + rng.uniform(-bound, bound, n)


def level_series(seed, n=None):
    """Random positive level with trend, periodic part and noise, at a random scale."""
    rng = np.random.default_rng(seed)
    n = n or int(rng.integers(30, 400))
    scale = 10 ** rng.uniform(-3, 8)
    t = np.arange(n)
    shape = 1 + 0.001 * t * rng.uniform(-1, 1) + 0.2 * np.sin(2 * np.pi * t / rng.integers(3, 30))
    return scale * (shape + 0.1 * rng.uniform(-1, 1, n))
