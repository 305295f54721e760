"""Planar polyline paths: Brownian samplers, bridge refinement, restriction,
skeletons, p-variation, and the CSV path format.

A path is a polyline (t_i, x_i, y_i) with times in [0, 1]. Everywhere in this
package the curve it denotes is the chord-closed loop: the polyline plus the
straight segment from its last vertex back to its first.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from ._seeds import RngSeed, as_seed, derive_seed, make_generator
from .errors import (
    BadExponent,
    BadRange,
    NonUniformPath,
    NotAVertex,
    WindAreaError,
)

__all__ = [
    "PlanarPath",
    "Dissection",
    "RngSeed",
    "as_seed",
    "derive_seed",
    "sample_brownian",
    "brownian_lineage",
    "bridge_refine",
    "restrict",
    "pl_skeleton",
    "p_variation",
    "curve_length",
    "dyadic_dissections",
    "read_path_csv",
    "write_path_csv",
    "unit_square",
    "circle_path",
    "parabola_path",
    "figure_eight_path",
    "line_path",
    "translate",
    "scale",
    "reverse",
]


@dataclass(frozen=True, eq=False)
class PlanarPath:
    """Immutable planar polyline with times.

    times: shape (m,), strictly increasing, times[0] = 0, times[-1] = 1.
    points: shape (m, 2), all finite. m >= 2.
    """

    times: np.ndarray
    points: np.ndarray

    def __post_init__(self) -> None:
        times = np.ascontiguousarray(self.times, dtype=np.float64)
        points = np.ascontiguousarray(self.points, dtype=np.float64)
        if times.ndim != 1 or times.size < 2:
            raise WindAreaError("path needs at least 2 vertices")
        if points.shape != (times.size, 2):
            raise WindAreaError(
                f"points shape {points.shape} does not match {times.size} times"
            )
        if not (np.isfinite(times).all() and np.isfinite(points).all()):
            raise WindAreaError("path coordinates must be finite")
        if times[0] != 0.0 or times[-1] != 1.0:
            raise WindAreaError("times must start at 0 and end at 1")
        if not (np.diff(times) > 0).all():
            raise WindAreaError("times must be strictly increasing")
        times.flags.writeable = False
        points.flags.writeable = False
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "points", points)

    @property
    def n_steps(self) -> int:
        return self.times.size - 1

    @property
    def x(self) -> np.ndarray:
        return self.points[:, 0]

    @property
    def y(self) -> np.ndarray:
        return self.points[:, 1]

    @cached_property
    def loop_points(self) -> np.ndarray:
        """Vertices of the chord-closed loop: points plus the start repeated."""
        loop = np.vstack([self.points, self.points[:1]])
        loop.flags.writeable = False
        return loop

    @cached_property
    def bbox(self) -> tuple[float, float, float, float]:
        """(x_min, x_max, y_min, y_max) of the closed loop."""
        return (
            float(self.x.min()),
            float(self.x.max()),
            float(self.y.min()),
            float(self.y.max()),
        )

    @cached_property
    def diameter(self) -> float:
        x0, x1, y0, y1 = self.bbox
        return math.hypot(x1 - x0, y1 - y0)

    def has_uniform_times(self) -> bool:
        n = self.n_steps
        return bool(np.array_equal(self.times, np.arange(n + 1) / n))


@dataclass(frozen=True)
class Dissection:
    """Strictly increasing vertex indices of a path, starting at 0.

    The index form of a time dissection 0 = t_0 < ... < t_n = 1; the final
    index must equal the last vertex of whichever path it is applied to
    (checked in pl_skeleton).
    """

    indices: tuple[int, ...]

    def __post_init__(self) -> None:
        idx = tuple(int(i) for i in self.indices)
        if len(idx) < 2:
            raise WindAreaError("dissection needs at least 2 indices")
        if idx[0] != 0:
            raise WindAreaError("dissection must start at index 0")
        if any(b <= a for a, b in zip(idx, idx[1:])):
            raise WindAreaError("dissection indices must be strictly increasing")
        object.__setattr__(self, "indices", idx)

    @classmethod
    def from_times(cls, path: PlanarPath, times) -> "Dissection":
        """Resolve dissection times against the path's vertex times."""
        out = []
        for t in np.asarray(times, dtype=np.float64):
            hit = np.nonzero(path.times == t)[0]
            if hit.size == 0:
                raise NotAVertex(f"time {t!r} is not a vertex time of the path")
            out.append(int(hit[0]))
        return cls(tuple(out))

    def __len__(self) -> int:
        return len(self.indices)


def sample_brownian(steps: int, seed: int | RngSeed) -> PlanarPath:
    """Planar Brownian path on [0,1] sampled at a uniform grid.

    Each of the `steps` increments is a centered bivariate Gaussian with
    independent coordinates of variance 1/steps. Starts at the origin.
    Pure function of (steps, seed).
    """
    steps = int(steps)
    if steps < 1:
        raise WindAreaError("steps must be >= 1")
    gen = make_generator(seed)
    incr = gen.standard_normal((steps, 2)) * math.sqrt(1.0 / steps)
    points = np.empty((steps + 1, 2))
    points[0] = 0.0
    np.cumsum(incr, axis=0, out=points[1:])
    return PlanarPath(np.arange(steps + 1) / steps, points)


def bridge_refine(
    path: PlanarPath, seed: int | RngSeed, *, midpoint_only: bool = False
) -> PlanarPath:
    """Insert the Brownian-bridge midpoint of every edge.

    The inserted vertex is Gaussian around the edge midpoint with
    per-coordinate variance dt/4 where dt is the (uniform) time step.
    Original vertices are preserved bit-exactly. `midpoint_only=True` is the
    degenerate test hook: zero variance, exact PL midpoints.
    """
    n = path.n_steps
    if not path.has_uniform_times():
        raise NonUniformPath("bridge refinement requires uniform time spacing")
    mids = 0.5 * (path.points[:-1] + path.points[1:])
    if not midpoint_only:
        std = 0.5 * math.sqrt(1.0 / n)
        mids = mids + make_generator(seed).standard_normal((n, 2)) * std
    points = np.empty((2 * n + 1, 2))
    points[0::2] = path.points
    points[1::2] = mids
    # arange(2i)/(2n) rounds to the same float as arange(i)/n, so the old
    # times reappear bit-exactly in the refined grid.
    return PlanarPath(np.arange(2 * n + 1) / (2 * n), points)


def brownian_lineage(
    base_steps: int, target_steps: int, seed: int | RngSeed
) -> PlanarPath:
    """Brownian path at target_steps refined from a coarse base_steps sample.

    Paths produced with the same (base_steps, seed) share the coarse skeleton
    at every resolution, which is what lets scale estimates at different step
    counts be compared on the same underlying trajectory.
    """
    base_steps, target_steps = int(base_steps), int(target_steps)
    if target_steps < base_steps or target_steps % base_steps:
        raise WindAreaError("target_steps must be a multiple of base_steps")
    ratio = target_steps // base_steps
    if ratio & (ratio - 1):
        raise WindAreaError("target_steps / base_steps must be a power of 2")
    path = sample_brownian(base_steps, seed)
    level = 0
    while path.n_steps < target_steps:
        level += 1
        path = bridge_refine(path, derive_seed(seed, level))
    return path


def restrict(path: PlanarPath, i: int, j: int) -> PlanarPath:
    """Sub-path over vertices i..j, times renormalized to [0, 1]."""
    i, j = int(i), int(j)
    if not (0 <= i < j <= path.n_steps):
        raise BadRange(f"need 0 <= i < j <= {path.n_steps}, got i={i}, j={j}")
    t = path.times[i : j + 1]
    return PlanarPath((t - t[0]) / (t[-1] - t[0]), path.points[i : j + 1].copy())


def pl_skeleton(path: PlanarPath, d: Dissection) -> PlanarPath:
    """The polyline through the dissection's vertices only."""
    idx = np.asarray(d.indices, dtype=np.int64)
    if idx[-1] > path.n_steps:
        raise NotAVertex(f"index {idx[-1]} is beyond the last vertex {path.n_steps}")
    if idx[-1] != path.n_steps:
        raise NotAVertex("dissection must span vertex 0 to the last vertex")
    return PlanarPath(path.times[idx], path.points[idx].copy())


def dyadic_dissections(n_steps: int, levels: int) -> list[Dissection]:
    """Dissections at strides n, n/2, ..., n/2^levels (coarse to fine).

    n_steps must be divisible by 2**levels.
    """
    n_steps, levels = int(n_steps), int(levels)
    if levels < 0 or n_steps % (1 << levels):
        raise WindAreaError(f"{n_steps} steps do not split into 2^{levels} parts")
    return [
        Dissection(tuple(range(0, n_steps + 1, n_steps >> k)))
        for k in range(levels + 1)
    ]


def p_variation(series, p: float) -> float:
    """Exact p-variation of a polyline series over vertex dissections.

    series: shape (m,) scalars or (m, d) points. For piecewise-linear data the
    supremum over all dissections is attained at vertices, so the O(m^2)
    dynamic program below is exact. Endpoints are always part of the optimum
    evaluation (V[last] is returned), matching sup over dissections that
    include 0 and 1.
    """
    p = float(p)
    if p < 1.0:
        raise BadExponent(f"p-variation needs p >= 1, got {p}")
    pts = np.asarray(series, dtype=np.float64)
    if pts.ndim == 1:
        pts = pts[:, None]
    m = pts.shape[0]
    if m < 2:
        raise WindAreaError("series needs at least 2 entries")
    best = np.zeros(m)
    for j in range(1, m):
        d = np.sqrt(((pts[:j] - pts[j]) ** 2).sum(axis=1))
        best[j] = (best[:j] + d**p).max()
    return float(best[-1] ** (1.0 / p))


def curve_length(path: PlanarPath) -> float:
    """Euclidean length of the polyline including the closing chord."""
    d = np.diff(path.loop_points, axis=0)
    return float(np.sum(np.hypot(d[:, 0], d[:, 1])))


# ---------------------------------------------------------------------------
# path file format: CSV `t,x,y`, 17 significant digits

_HEADER = "t,x,y"


def write_path_csv(path: PlanarPath, dest) -> None:
    """Write a path as CSV. dest: filename or text file object."""
    lines = [_HEADER]
    for t, (px, py) in zip(path.times, path.points):
        lines.append(f"{t:.17g},{px:.17g},{py:.17g}")
    text = "\n".join(lines) + "\n"
    if isinstance(dest, (str, bytes)) or hasattr(dest, "__fspath__"):
        with open(dest, "w") as fh:
            fh.write(text)
    else:
        dest.write(text)


def read_path_csv(src) -> PlanarPath:
    """Read a path written by write_path_csv."""
    if isinstance(src, (str, bytes)) or hasattr(src, "__fspath__"):
        with open(src) as fh:
            return read_path_csv(fh)
    header = src.readline().strip()
    if header != _HEADER:
        raise WindAreaError(f"expected header {_HEADER!r}, got {header!r}")
    data = np.loadtxt(src, delimiter=",", ndmin=2)
    if data.shape[1] != 3:
        raise WindAreaError(f"expected 3 columns, got {data.shape[1]}")
    return PlanarPath(data[:, 0], data[:, 1:])


# ---------------------------------------------------------------------------
# built-in test curves

def unit_square() -> PlanarPath:
    """CCW unit square, explicitly closed (degenerate chord)."""
    pts = [(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0), (0.0, 0.0)]
    return PlanarPath(np.arange(5) / 4, np.array(pts))


def circle_path(n: int, loops: int = 1, radius: float = 1.0) -> PlanarPath:
    """Regular n-gon on the circle, traversed CCW `loops` times.

    n*loops edges; the last vertex coincides with the first bit-exactly, so
    the closing chord is degenerate.
    """
    n, loops = int(n), int(loops)
    if n < 3 or loops < 1:
        raise WindAreaError("need n >= 3 and loops >= 1")
    m = n * loops
    ang = 2.0 * np.pi * (np.arange(m + 1) % n) / n
    pts = radius * np.column_stack([np.cos(ang), np.sin(ang)])
    return PlanarPath(np.arange(m + 1) / m, pts)


def parabola_path(n: int) -> PlanarPath:
    """The arc (t, t^2) on [0,1]; its chord closure bounds area 1/6, winding +1."""
    t = np.arange(int(n) + 1) / int(n)
    return PlanarPath(t, np.column_stack([t, t * t]))


def figure_eight_path(n: int) -> PlanarPath:
    """Symmetric figure-eight (x = sin a, y = sin a cos a): two congruent
    lobes of opposite orientation (left +1, right -1), each of area 2/3.
    """
    n = int(n)
    if n < 8:
        raise WindAreaError("need n >= 8")
    ang = 2.0 * np.pi * (np.arange(n + 1) % n) / n
    s, c = np.sin(ang), np.cos(ang)
    return PlanarPath(np.arange(n + 1) / n, np.column_stack([s, s * c]))


def line_path(a=(0.0, 0.0), b=(1.0, 1.0)) -> PlanarPath:
    """Two-vertex path; the chord closure retraces it, enclosing zero area."""
    return PlanarPath(np.array([0.0, 1.0]), np.array([a, b], dtype=np.float64))


# ---------------------------------------------------------------------------
# affine helpers (used by equivariance tests and window plumbing)

def translate(path: PlanarPath, dx: float, dy: float) -> PlanarPath:
    return PlanarPath(path.times, path.points + np.array([dx, dy]))


def scale(path: PlanarPath, c: float) -> PlanarPath:
    return PlanarPath(path.times, path.points * float(c))


def reverse(path: PlanarPath) -> PlanarPath:
    return PlanarPath((1.0 - path.times)[::-1], path.points[::-1].copy())
