"""Poisson point clouds and the normalized winding-sum Monte Carlo.

One trial drops a Poisson cloud of intensity K on a window containing the
curve's hull and evaluates (1/K) * sum of winding numbers at the points.
Over trials (fixed curve, fresh clouds) the sums approach a Cauchy law whose
position is the curve's algebraic area; the heavy tails come from points
landing arbitrarily close to the curve, which is why trials query points
directly instead of reading a precomputed grid field.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from ._seeds import RngSeed, derive_seed, make_generator
from .curves import PlanarPath
from .errors import BadRate, WindAreaError
from .winding import winding_numbers

__all__ = [
    "Window",
    "PointCloud",
    "WindingSumResult",
    "TrialEnsemble",
    "hull_window",
    "sample_poisson",
    "winding_sum",
    "cauchy_trial_ensemble",
    "poissonization_check",
    "write_ensemble_csv",
    "ensemble_fragment",
]


@dataclass(frozen=True)
class Window:
    """Axis-aligned rectangle."""

    x_min: float
    x_max: float
    y_min: float
    y_max: float

    def __post_init__(self) -> None:
        if not all(
            math.isfinite(v) for v in (self.x_min, self.x_max, self.y_min, self.y_max)
        ):
            raise WindAreaError("window bounds must be finite")
        if self.x_max < self.x_min or self.y_max < self.y_min:
            raise WindAreaError("window must have nonnegative extent")

    @property
    def area(self) -> float:
        return (self.x_max - self.x_min) * (self.y_max - self.y_min)

    def to_json_dict(self) -> dict:
        return {
            "x_min": self.x_min,
            "x_max": self.x_max,
            "y_min": self.y_min,
            "y_max": self.y_max,
        }


@dataclass(frozen=True, eq=False)
class PointCloud:
    """A Poisson draw: count ~ Poisson(intensity * window area), points
    i.i.d. uniform on the window given the count."""

    points: np.ndarray  # (m, 2)
    intensity: float
    window: Window


@dataclass(frozen=True)
class WindingSumResult:
    """Normalized winding sum of one cloud. skipped counts points that fell
    within query tolerance of the curve (excluded from the sum)."""

    value: float
    skipped: int


@dataclass(frozen=True, eq=False)
class TrialEnsemble:
    values: np.ndarray  # (trials,)
    skipped: np.ndarray  # (trials,) int64
    intensity: float
    window: Window


def hull_window(path: PlanarPath, pad: float = 0.05) -> Window:
    """Path bounding box padded by `pad` per side. The winding vanishes off
    the hull, so sums over any window containing this one are unchanged."""
    x0, x1, y0, y1 = path.bbox
    px = (x1 - x0) * pad
    py = (y1 - y0) * pad
    return Window(x0 - px, x1 + px, y0 - py, y1 + py)


def sample_poisson(
    intensity: float, window: Window, seed: int | RngSeed
) -> PointCloud:
    """Homogeneous Poisson point process on the window."""
    intensity = float(intensity)
    if intensity <= 0:
        raise WindAreaError(f"intensity must be positive, got {intensity}")
    gen = make_generator(seed)
    count = int(gen.poisson(intensity * window.area))
    u = gen.random((count, 2))
    pts = np.column_stack(
        [
            window.x_min + u[:, 0] * (window.x_max - window.x_min),
            window.y_min + u[:, 1] * (window.y_max - window.y_min),
        ]
    )
    return PointCloud(pts, intensity, window)


def winding_sum(path: PlanarPath, cloud: PointCloud) -> WindingSumResult:
    """(1/K) * sum of winding numbers at the cloud's points.

    Points within query tolerance of the curve are skipped and counted;
    the window is expected to contain the padded hull of the closed path.
    """
    if cloud.points.shape[0] == 0:
        return WindingSumResult(0.0, 0)
    wind, oncurve = winding_numbers(path, cloud.points)
    clean = wind[~oncurve]
    return WindingSumResult(
        float(int(clean.sum()) / cloud.intensity), int(oncurve.sum())
    )


def _one_trial(path: PlanarPath, intensity: float, window: Window, seed: RngSeed):
    return winding_sum(path, sample_poisson(intensity, window, seed))


def cauchy_trial_ensemble(
    path: PlanarPath,
    intensity: float,
    trials: int,
    seed: int | RngSeed,
    workers: int = 1,
    window: Window | None = None,
) -> TrialEnsemble:
    """Repeated winding sums for the fixed path (quenched randomness: only
    the cloud resamples). Trial i uses the derived seed (seed, i), so the
    ensemble is a pure function of (path, intensity, trials, seed) for any
    worker count or execution order.
    """
    trials = int(trials)
    if trials < 1:
        raise WindAreaError("trials must be >= 1")
    if window is None:
        window = hull_window(path)
    seeds = [derive_seed(seed, i) for i in range(trials)]
    if workers > 1:
        with ThreadPoolExecutor(max_workers=int(workers)) as pool:
            results = list(
                pool.map(lambda s: _one_trial(path, intensity, window, s), seeds)
            )
    else:
        results = [_one_trial(path, intensity, window, s) for s in seeds]
    return TrialEnsemble(
        values=np.array([r.value for r in results]),
        skipped=np.array([r.skipped for r in results], dtype=np.int64),
        intensity=float(intensity),
        window=window,
    )


def poissonization_check(
    dist_samples, lam: float, seed: int | RngSeed, n_sums: int = 1000
):
    """Poisson-count vs fixed-count normalized sums of i.i.d. draws from the
    empirical distribution of dist_samples.

    Returns (poisson_sums, fixed_sums), each of n_sums entries normalized by
    lam; the fixed count is ceil(lam). The two sets should be statistically
    indistinguishable when lam is large (that equivalence is what justifies
    Poisson sampling in the winding-sum limit).
    """
    x = np.asarray(dist_samples, dtype=np.float64)
    if x.size == 0:
        raise WindAreaError("dist_samples must be nonempty")
    lam = float(lam)
    if lam < 1.0:
        raise BadRate(f"lambda must be >= 1, got {lam}")
    n_sums = int(n_sums)
    if n_sums < 1:
        raise WindAreaError("n_sums must be >= 1")
    gen = make_generator(seed)

    counts = gen.poisson(lam, n_sums)
    total = int(counts.sum())
    draws = x[gen.integers(0, x.size, total)]
    c = np.concatenate([[0.0], np.cumsum(draws)])
    ends = np.cumsum(counts)
    starts = ends - counts
    poisson_sums = (c[ends] - c[starts]) / lam

    fixed_count = int(math.ceil(lam))
    fixed_sums = np.empty(n_sums)
    chunk = max(1, 2_000_000 // fixed_count)
    for i in range(0, n_sums, chunk):
        m = min(chunk, n_sums - i)
        idx = gen.integers(0, x.size, (m, fixed_count))
        fixed_sums[i : i + m] = x[idx].sum(axis=1) / lam
    return poisson_sums, fixed_sums


def write_ensemble_csv(ensemble: TrialEnsemble, dest) -> None:
    lines = ["trial,S_K"]
    lines.extend(f"{i},{v:.17g}" for i, v in enumerate(ensemble.values))
    text = "\n".join(lines) + "\n"
    if isinstance(dest, (str, bytes)) or hasattr(dest, "__fspath__"):
        with open(dest, "w") as fh:
            fh.write(text)
    else:
        dest.write(text)


def ensemble_fragment(ensemble: TrialEnsemble) -> dict:
    """Summary JSON fragment {K, trials, position, scale, ks, skipped}."""
    from .cauchy import fit_fragment

    frag = fit_fragment(ensemble.values)
    return {
        "K": ensemble.intensity,
        "trials": int(ensemble.values.size),
        "position": frag["position"],
        "scale": frag["scale"],
        "ks": frag["ks"],
        "skipped": int(ensemble.skipped.sum()),
    }
