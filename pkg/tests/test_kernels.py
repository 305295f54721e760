import numpy as np
import pytest

import windarea as wa
from windarea._kernels import BACKEND, build_strip_index, field_scan, winding_queries
from windarea._kernels import _core, py_backend


def _brute_winding(loop_x, loop_y, px, py):
    # reference crossing counter, scalar and index-free
    w = 0
    for k in range(loop_x.size - 1):
        ax, ay, bx, by = loop_x[k], loop_y[k], loop_x[k + 1], loop_y[k + 1]
        if (ay > py) != (by > py):
            side = (bx - ax) * (py - ay) - (px - ax) * (by - ay)
            if by > ay and side > 0:
                w += 1
            elif by < ay and side < 0:
                w -= 1
    return w


def _loops(seed, steps=256):
    p = wa.sample_brownian(steps, seed)
    lp = p.loop_points
    return np.ascontiguousarray(lp[:, 0]), np.ascontiguousarray(lp[:, 1])


def test_queries_match_brute_force():
    rng = np.random.default_rng(5)
    for s in range(8):
        lx, ly = _loops(s)
        eps = 1e-12 * float(np.hypot(lx.max() - lx.min(), ly.max() - ly.min()))
        idx = build_strip_index(lx, ly, eps)
        qx = rng.normal(size=50)
        qy = rng.normal(size=50)
        w, on = winding_queries(lx, ly, idx, qx, qy, eps)
        for i in range(50):
            if not on[i]:
                assert w[i] == _brute_winding(lx, ly, qx[i], qy[i])


def test_strip_count_never_changes_results():
    lx, ly = _loops(11, 512)
    eps = 1e-12
    qx = np.linspace(lx.min(), lx.max(), 200)
    qy = np.linspace(ly.min(), ly.max(), 200)
    base = py_backend.winding_queries(
        lx, ly, build_strip_index(lx, ly, eps), qx, qy, eps
    )
    # degenerate single-strip index: every edge in every query's bucket
    n_edges = lx.size - 1
    flat = py_backend.StripIndex(
        float(ly.min() - 1.0),
        float(ly.max() - ly.min() + 2.0),
        1,
        np.array([0, n_edges], dtype=np.int64),
        np.arange(n_edges, dtype=np.int64),
    )
    alt = py_backend.winding_queries(lx, ly, flat, qx, qy, eps)
    assert np.array_equal(base[0], alt[0])
    assert np.array_equal(base[1], alt[1])


def test_row_blocking_is_exact():
    # block results are (rows, nx) slabs that tile the full scan exactly
    lx, ly = _loops(3, 512)
    full = field_scan(lx, ly, -2.0, -2.0, 4.0 / 64, 64, 64)
    top = field_scan(lx, ly, -2.0, -2.0, 4.0 / 64, 64, 64, row_lo=0, row_hi=40)
    bot = field_scan(lx, ly, -2.0, -2.0, 4.0 / 64, 64, 64, row_lo=40, row_hi=64)
    assert np.array_equal(full[0], np.vstack([top[0], bot[0]]))
    assert np.array_equal(full[1], np.vstack([top[1], bot[1]]))


@pytest.mark.skipif(_core is None, reason="compiled backend not built")
def test_backends_agree_bitwise():
    rng = np.random.default_rng(17)
    for s in (1, 8, 33):
        lx, ly = _loops(s, 1024)
        eps = 1e-12 * float(np.hypot(lx.max() - lx.min(), ly.max() - ly.min()))
        idx = build_strip_index(lx, ly, eps)
        qx = rng.normal(size=400)
        qy = rng.normal(size=400)
        pw, pon = py_backend.winding_queries(lx, ly, idx, qx, qy, eps)
        cw, con = _core.winding_queries(
            lx, ly,
            np.ascontiguousarray(idx.start), np.ascontiguousarray(idx.edges),
            idx.y0, idx.h, idx.nstrips,
            qx, qy, eps,
        )
        assert np.array_equal(pw, np.asarray(cw))
        assert np.array_equal(pon, np.asarray(con))
        pf = py_backend.field_scan(lx, ly, -2.0, -2.0, 4.0 / 128, 128, 128, 0, 128)
        cf = _core.field_scan(lx, ly, -2.0, -2.0, 4.0 / 128, 128, 128, 0, 128)
        assert np.array_equal(pf[0], np.asarray(cf[0]))
        assert np.array_equal(pf[1], np.asarray(cf[1]))


def test_vertex_on_ray_counted_once():
    # diamond whose vertices sit exactly on the query's horizontal ray:
    # the half-open rule (ay > py) != (by > py) counts the crossing once
    lx = np.array([1.0, 0.0, -1.0, 0.0, 1.0])
    ly = np.array([0.0, 1.0, 0.0, -1.0, 0.0])
    eps = 1e-15
    idx = build_strip_index(lx, ly, eps)
    w, on = winding_queries(lx, ly, idx, np.array([0.0]), np.array([0.0]), eps)
    assert not on[0]
    assert w[0] == 1
    # outside point on the same ray sees zero
    w2, on2 = winding_queries(lx, ly, idx, np.array([5.0]), np.array([0.0]), eps)
    assert not on2[0] and w2[0] == 0


def test_horizontal_edges_never_cross():
    # unit square traversed CCW has two horizontal edges on y=0 and y=1
    sq = wa.unit_square().loop_points
    lx, ly = np.ascontiguousarray(sq[:, 0]), np.ascontiguousarray(sq[:, 1])
    eps = 1e-15
    idx = build_strip_index(lx, ly, eps)
    w, on = winding_queries(
        lx, ly, idx, np.array([0.5, -1.0]), np.array([0.5, 0.5]), eps
    )
    assert w.tolist() == [1, 0]
    assert not on.any()


def test_backend_name_is_consistent():
    assert BACKEND in ("python", "compiled")
    assert wa.BACKEND == BACKEND
    assert (BACKEND == "compiled") == (_core is not None)
