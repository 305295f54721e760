"""Integer winding numbers of chord-closed polylines.

Point queries use the signed ray-crossing (nonzero) rule; grid fields use a
scanline over cell-center rows. Counterclockwise loops wind positively. An
independent angle-accumulation oracle is provided for cross-checking.
"""

from __future__ import annotations

import json
import math
import weakref
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .curves import PlanarPath
from .errors import PointOnCurve, WindAreaError

__all__ = [
    "GridSpec",
    "WindingField",
    "EPS_FACTOR",
    "query_eps",
    "winding_number",
    "winding_numbers",
    "winding_field",
    "angle_winding_oracle",
    "grid_for_path",
    "write_field_csv",
]

# near-curve tolerance for point queries, as a fraction of bbox diameter
EPS_FACTOR = 1e-12


@dataclass(frozen=True)
class GridSpec:
    """Square-cell grid: cell (ix, iy) has center
    (x_min + (ix+0.5)*cell, y_min + (iy+0.5)*cell)."""

    x_min: float
    y_min: float
    cell: float
    nx: int
    ny: int

    def __post_init__(self) -> None:
        if self.cell <= 0 or not math.isfinite(self.cell):
            raise WindAreaError(f"cell must be positive, got {self.cell}")
        if self.nx < 1 or self.ny < 1:
            raise WindAreaError("grid needs nx >= 1 and ny >= 1")

    @property
    def cell_area(self) -> float:
        return self.cell * self.cell

    @property
    def x_max(self) -> float:
        return self.x_min + self.nx * self.cell

    @property
    def y_max(self) -> float:
        return self.y_min + self.ny * self.cell

    def centers_x(self) -> np.ndarray:
        return self.x_min + (np.arange(self.nx) + 0.5) * self.cell

    def centers_y(self) -> np.ndarray:
        return self.y_min + (np.arange(self.ny) + 0.5) * self.cell

    def to_json_dict(self) -> dict:
        return {
            "x_min": self.x_min,
            "y_min": self.y_min,
            "cell": self.cell,
            "nx": self.nx,
            "ny": self.ny,
        }


@dataclass(frozen=True, eq=False)
class WindingField:
    """Winding numbers at cell centers. values[ix, iy] is exact wherever
    mask[ix, iy] is False; masked centers are within cell/2 of the curve or
    too close to a scanline intercept to classify."""

    grid: GridSpec
    values: np.ndarray  # (nx, ny) int32
    mask: np.ndarray  # (nx, ny) bool

    @property
    def masked_count(self) -> int:
        return int(self.mask.sum())

    @property
    def masked_area(self) -> float:
        return self.masked_count * self.grid.cell_area


def grid_for_path(path: PlanarPath, resolution: int, pad: float = 0.05) -> GridSpec:
    """Square grid of resolution^2 cells covering the path bbox padded by
    `pad` per side; the shorter bbox axis is centered."""
    resolution = int(resolution)
    if resolution < 1:
        raise WindAreaError("resolution must be >= 1")
    x0, x1, y0, y1 = path.bbox
    w, h = x1 - x0, y1 - y0
    extent = max(w, h)
    if extent <= 0.0:  # degenerate single-point path
        extent = 1.0
    side = extent * (1.0 + 2.0 * pad)
    cx, cy = 0.5 * (x0 + x1), 0.5 * (y0 + y1)
    return GridSpec(cx - 0.5 * side, cy - 0.5 * side, side / resolution,
                    resolution, resolution)


def query_eps(path: PlanarPath) -> float:
    """Near-curve tolerance for point queries on this path."""
    return EPS_FACTOR * path.diameter


# strip indexes are pure functions of the path; cache per path object
_index_cache: "weakref.WeakKeyDictionary[PlanarPath, _kernels.StripIndex]" = (
    weakref.WeakKeyDictionary()
)


def _strip_index(path: PlanarPath) -> _kernels.StripIndex:
    idx = _index_cache.get(path)
    if idx is None:
        loop = path.loop_points
        idx = _kernels.build_strip_index(loop[:, 0], loop[:, 1], query_eps(path))
        _index_cache[path] = idx
    return idx


def winding_numbers(path: PlanarPath, points) -> tuple[np.ndarray, np.ndarray]:
    """Batch point query: (wind int64, oncurve bool) per point.

    Winding entries are meaningless where oncurve is set; callers decide
    whether to skip or raise.
    """
    pts = np.atleast_2d(np.asarray(points, dtype=np.float64))
    loop = path.loop_points
    return _kernels.winding_queries(
        loop[:, 0], loop[:, 1], _strip_index(path),
        pts[:, 0], pts[:, 1], query_eps(path),
    )


def winding_number(path: PlanarPath, z) -> int:
    """Winding of the chord-closed path around z (ray-crossing rule)."""
    wind, oncurve = winding_numbers(path, [z])
    if oncurve[0]:
        raise PointOnCurve(f"point {tuple(z)} is within tolerance of the curve")
    return int(wind[0])


def angle_winding_oracle(path: PlanarPath, z) -> int:
    """Independent winding computation: accumulate the signed turning angle
    of the loop as seen from z, divide by 2*pi, round.

    Shares no code with the crossing rule; used to cross-check it. The true
    winding is within 1/2 of the accumulated angle over 2*pi, so rounding is
    exact for points off the curve.
    """
    z = np.asarray(z, dtype=np.float64)
    _, oncurve = winding_numbers(path, [z])
    if oncurve[0]:
        raise PointOnCurve(f"point {tuple(z)} is within tolerance of the curve")
    v = path.loop_points - z
    cross = v[:-1, 0] * v[1:, 1] - v[:-1, 1] * v[1:, 0]
    dot = v[:-1, 0] * v[1:, 0] + v[:-1, 1] * v[1:, 1]
    total = float(np.sum(np.arctan2(cross, dot)))
    return int(round(total / (2.0 * math.pi)))


def winding_field(path: PlanarPath, grid: GridSpec, workers: int = 1) -> WindingField:
    """Winding numbers at all cell centers via a row scanline.

    Rows are independent; `workers` only splits them into blocks, the result
    is identical for any worker count.
    """
    workers = max(1, int(workers))
    loop = path.loop_points
    lx, ly = loop[:, 0], loop[:, 1]
    if workers == 1 or grid.ny < 2 * workers:
        vals, mask = _kernels.field_scan(
            lx, ly, grid.x_min, grid.y_min, grid.cell, grid.nx, grid.ny
        )
    else:
        bounds = np.linspace(0, grid.ny, workers + 1).astype(int)
        blocks = [(int(a), int(b)) for a, b in zip(bounds[:-1], bounds[1:]) if b > a]

        def run(block):
            return _kernels.field_scan(
                lx, ly, grid.x_min, grid.y_min, grid.cell,
                grid.nx, grid.ny, block[0], block[1],
            )

        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(run, blocks))
        vals = np.concatenate([p[0] for p in parts], axis=0)
        mask = np.concatenate([p[1] for p in parts], axis=0)
    # kernels produce row-major (iy, ix); the public layout is values[ix, iy]
    values = np.ascontiguousarray(vals.T)
    mask = np.ascontiguousarray(mask.T)
    values.flags.writeable = False
    mask.flags.writeable = False
    return WindingField(grid, values, mask)


def write_field_csv(field: WindingField, dest, sidecar=None) -> None:
    """Export unmasked cells as CSV rows `ix,iy,theta`, plus a JSON sidecar
    holding the grid spec and masked-cell count."""
    ix, iy = np.nonzero(~field.mask)
    theta = field.values[ix, iy]
    lines = ["ix,iy,theta"]
    lines.extend(f"{a},{b},{t}" for a, b, t in zip(ix, iy, theta))
    text = "\n".join(lines) + "\n"
    if isinstance(dest, (str, bytes)) or hasattr(dest, "__fspath__"):
        with open(dest, "w") as fh:
            fh.write(text)
    else:
        dest.write(text)
    if sidecar is not None:
        doc = {
            "grid": field.grid.to_json_dict(),
            "masked_cells": field.masked_count,
            "rows": int(theta.size),
        }
        with open(sidecar, "w") as fh:
            json.dump(doc, fh, indent=2, sort_keys=True)
            fh.write("\n")
