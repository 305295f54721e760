"""Kernel backend selection.

The compiled Cython kernels and the numpy fallback implement the same
arithmetic contract (see py_backend docstring) and return bitwise-identical
results. Set WINDAREA_BACKEND=python or =compiled to force one; by default
the compiled extension is used when the build produced it.
"""

from __future__ import annotations

import importlib
import os

import numpy as np

from . import py_backend
from .py_backend import StripIndex, build_strip_index

__all__ = [
    "BACKEND",
    "StripIndex",
    "build_strip_index",
    "winding_queries",
    "field_scan",
]

_forced = os.environ.get("WINDAREA_BACKEND")
if _forced not in (None, "", "python", "compiled"):
    raise ImportError(
        f"WINDAREA_BACKEND must be 'python' or 'compiled', got {_forced!r}"
    )

_core = None
if _forced != "python":
    try:
        _core = importlib.import_module(__name__ + "._core")
    except ImportError:
        _core = None
    if _core is None and _forced == "compiled":
        raise ImportError(
            "WINDAREA_BACKEND=compiled but the extension is not built; "
            "run `pip install -e . --no-build-isolation`"
        )

BACKEND = "compiled" if _core is not None else "python"


def _c64(a) -> np.ndarray:
    return np.ascontiguousarray(a, dtype=np.float64)


def winding_queries(loop_x, loop_y, index: StripIndex, qx, qy, eps: float):
    """Winding number and on-curve flag of the closed loop at each point."""
    if _core is not None:
        return _core.winding_queries(
            _c64(loop_x),
            _c64(loop_y),
            np.ascontiguousarray(index.start, dtype=np.int64),
            np.ascontiguousarray(index.edges, dtype=np.int64),
            index.y0,
            index.h,
            index.nstrips,
            _c64(qx),
            _c64(qy),
            float(eps),
        )
    return py_backend.winding_queries(
        _c64(loop_x), _c64(loop_y), index, _c64(qx), _c64(qy), float(eps)
    )


def field_scan(loop_x, loop_y, x0, y0, cell, nx, ny, row_lo=0, row_hi=None):
    """Winding values and near-curve mask for grid rows [row_lo, row_hi)."""
    if row_hi is None:
        row_hi = ny
    args = (
        float(x0), float(y0), float(cell),
        int(nx), int(ny), int(row_lo), int(row_hi),
    )
    if _core is not None:
        return _core.field_scan(_c64(loop_x), _c64(loop_y), *args)
    return py_backend.field_scan(_c64(loop_x), _c64(loop_y), *args)
