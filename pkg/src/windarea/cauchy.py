"""Cauchy distribution machinery: CDF and sampling, robust quantile fitting,
the truncated-mean and sine position estimators, and the KS statistic.

The Cauchy law C(p, sigma) has density sigma / (pi*(sigma^2 + (x-p)^2));
sigma = 0 is allowed and denotes the point mass at p. Position is what
replaces the (nonexistent) mean: the limit of clamped means, equivalently of
N*E[sin(X/N)].
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._seeds import RngSeed, make_generator
from .errors import TooFewSamples, WindAreaError

__all__ = [
    "CauchyParams",
    "DEFAULT_K_SCHEDULE",
    "cauchy_cdf",
    "cauchy_quantile",
    "sample_cauchy",
    "quantile_fit",
    "truncated_mean_estimator",
    "sine_estimator",
    "ks_statistic",
    "ks_two_sample",
    "fit_fragment",
]

DEFAULT_K_SCHEDULE = tuple(float(2**k) for k in range(4, 21))


@dataclass(frozen=True)
class CauchyParams:
    position: float
    scale: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.position) and math.isfinite(self.scale)):
            raise WindAreaError("Cauchy parameters must be finite")
        if self.scale < 0:
            raise WindAreaError(f"scale must be >= 0, got {self.scale}")


def cauchy_cdf(params: CauchyParams, x) -> np.ndarray | float:
    """F(x) = 1/2 + arctan((x - p)/sigma)/pi; exact unit step for sigma=0."""
    x = np.asarray(x, dtype=np.float64)
    if params.scale == 0.0:
        out = np.where(x >= params.position, 1.0, 0.0)
    else:
        out = 0.5 + np.arctan((x - params.position) / params.scale) / np.pi
    return float(out) if out.ndim == 0 else out


def cauchy_quantile(params: CauchyParams, q) -> np.ndarray | float:
    """Inverse CDF: p + sigma*tan(pi*(q - 1/2))."""
    q = np.asarray(q, dtype=np.float64)
    out = params.position + params.scale * np.tan(np.pi * (q - 0.5))
    return float(out) if out.ndim == 0 else out


def sample_cauchy(params: CauchyParams, n: int, seed: int | RngSeed) -> np.ndarray:
    """n i.i.d. draws via inverse-CDF sampling; deterministic given seed."""
    n = int(n)
    if n < 1:
        raise WindAreaError("n must be >= 1")
    u = make_generator(seed).random(n)
    return params.position + params.scale * np.tan(np.pi * (u - 0.5))


def quantile_fit(samples) -> CauchyParams:
    """Robust fit: position = median, scale = half the interquartile range.

    Exact at the analytic quartiles (Cauchy quartiles sit at p +/- sigma);
    heavy tails never move it.
    """
    x = np.asarray(samples, dtype=np.float64)
    if x.size < 4:
        raise TooFewSamples(f"quantile fit needs >= 4 samples, got {x.size}")
    q25, q50, q75 = np.percentile(x, [25.0, 50.0, 75.0])
    return CauchyParams(float(q50), float(0.5 * (q75 - q25)))


def truncated_mean_estimator(samples, k_schedule=DEFAULT_K_SCHEDULE) -> np.ndarray:
    """Means of clamp(x, -k, k) for each k in the increasing schedule.

    For samples in a Cauchy attraction domain the sequence plateaus near the
    position parameter (the clamped-mean characterization of position).
    """
    x = np.asarray(samples, dtype=np.float64)
    if x.size == 0:
        raise WindAreaError("samples must be nonempty")
    ks = np.asarray(k_schedule, dtype=np.float64)
    if ks.size == 0 or not (np.diff(ks) > 0).all():
        raise WindAreaError("k_schedule must be nonempty and increasing")
    return np.array([float(np.mean(np.clip(x, -k, k))) for k in ks])


def sine_estimator(samples, big_n: float) -> float:
    """N * mean(sin(x/N)): the smooth-truncation position estimator."""
    x = np.asarray(samples, dtype=np.float64)
    if x.size == 0:
        raise WindAreaError("samples must be nonempty")
    big_n = float(big_n)
    if big_n <= 0:
        raise WindAreaError("N must be positive")
    return float(big_n * np.mean(np.sin(x / big_n)))


def ks_statistic(samples, params: CauchyParams) -> float:
    """One-sample Kolmogorov-Smirnov distance between the empirical CDF and
    C(params): sup_i max(i/n - F(x_(i)), F(x_(i)) - (i-1)/n)."""
    x = np.sort(np.asarray(samples, dtype=np.float64))
    if x.size == 0:
        raise WindAreaError("samples must be nonempty")
    n = x.size
    f = np.asarray(cauchy_cdf(params, x), dtype=np.float64)
    i = np.arange(1, n + 1)
    d_plus = (i / n - f).max()
    d_minus = (f - (i - 1) / n).max()
    return float(max(d_plus, d_minus, 0.0))


def ks_two_sample(a, b) -> float:
    """Two-sample KS distance: sup |ECDF_a - ECDF_b|."""
    a = np.sort(np.asarray(a, dtype=np.float64))
    b = np.sort(np.asarray(b, dtype=np.float64))
    if a.size == 0 or b.size == 0:
        raise WindAreaError("both sample sets must be nonempty")
    grid = np.concatenate([a, b])
    fa = np.searchsorted(a, grid, side="right") / a.size
    fb = np.searchsorted(b, grid, side="right") / b.size
    return float(np.abs(fa - fb).max())


def fit_fragment(samples) -> dict:
    """JSON fragment {position, scale, ks, n} for reports: quantile fit plus
    the KS distance of the samples against their own fit."""
    x = np.asarray(samples, dtype=np.float64)
    fit = quantile_fit(x)
    return {
        "position": fit.position,
        "scale": fit.scale,
        "ks": ks_statistic(x, fit),
        "n": int(x.size),
    }
