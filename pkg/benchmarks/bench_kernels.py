"""Timing comparison of the compiled and pure-numpy kernel backends.

Run:  python benchmarks/bench_kernels.py [--steps 65536] [--grid 2048]

Both backends produce bitwise-identical output (asserted here); the point
of the compiled one is speed on the scanline and on point-query batches.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

import windarea as wa
from windarea._kernels import build_strip_index, py_backend
from windarea.winding import grid_for_path, query_eps

try:
    from windarea._kernels import _core
except ImportError:
    _core = None


def _time(fn, repeat: int):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--steps", type=int, default=2**16)
    ap.add_argument("--grid", type=int, default=2048)
    ap.add_argument("--queries", type=int, default=200_000)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=7)
    args = ap.parse_args()

    path = wa.sample_brownian(args.steps, wa.as_seed(args.seed))
    g = grid_for_path(path, args.grid)
    lx = np.ascontiguousarray(path.loop_points[:, 0])
    ly = np.ascontiguousarray(path.loop_points[:, 1])
    eps = query_eps(path)
    rng = np.random.default_rng(args.seed)
    lo = path.points.min(axis=0)
    hi = path.points.max(axis=0)
    q = lo + rng.random((args.queries, 2)) * (hi - lo)
    qx = np.ascontiguousarray(q[:, 0])
    qy = np.ascontiguousarray(q[:, 1])
    idx = build_strip_index(lx, ly, eps)

    print(f"path: {args.steps} steps, grid {args.grid}^2, {args.queries} queries")

    t_py, (v_py, m_py) = _time(
        lambda: py_backend.field_scan(lx, ly, g.x_min, g.y_min, g.cell, g.nx, g.ny, 0, g.ny),
        args.repeat,
    )
    print(f"field_scan  numpy    {t_py * 1e3:9.1f} ms")
    if _core is not None:
        t_c, (v_c, m_c) = _time(
            lambda: _core.field_scan(lx, ly, g.x_min, g.y_min, g.cell, g.nx, g.ny, 0, g.ny),
            args.repeat,
        )
        assert np.array_equal(v_py, v_c) and np.array_equal(m_py, m_c)
        print(f"field_scan  compiled {t_c * 1e3:9.1f} ms   ({t_py / t_c:5.1f}x)")

    t_py, (w_py, on_py) = _time(
        lambda: py_backend.winding_queries(lx, ly, idx, qx, qy, eps), args.repeat
    )
    print(f"queries     numpy    {t_py * 1e3:9.1f} ms")
    if _core is not None:
        t_c, (w_c, on_c) = _time(
            lambda: _core.winding_queries(
                lx, ly, idx.start, idx.edges, idx.y0, idx.h, idx.nstrips, qx, qy, eps
            ),
            args.repeat,
        )
        assert np.array_equal(w_py, w_c) and np.array_equal(on_py, on_c)
        print(f"queries     compiled {t_c * 1e3:9.1f} ms   ({t_py / t_c:5.1f}x)")
    if _core is None:
        print("compiled backend not built; numpy only")


if __name__ == "__main__":
    main()
