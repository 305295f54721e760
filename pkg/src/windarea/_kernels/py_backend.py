"""Vectorized numpy implementation of the winding kernels.

The compiled backend (_core.pyx) mirrors this file expression for expression.
Both backends must keep the following arithmetic identical so their outputs
agree bitwise:

  crossing  : (ay > py) != (by > py)
  side      : (bx-ax)*(py-ay) - (px-ax)*(by-ay)    (+1 if up and side>0,
                                                    -1 if down and side<0)
  intercept : qx = ax + ((cy-ay)*(bx-ax)) / (by-ay)
  centers   : cx(i) = x0 + (i + 0.5)*cell          (same for cy)
  seg dist  : t = ((px-ax)*dx + (py-ay)*dy) / (dx*dx+dy*dy), clamped to [0,1]
              (t = 0 for zero-length edges); d2 = |p - (a + t*d)|^2

Counting and masking are integer adds / boolean ors of exact predicates, so
results do not depend on evaluation order, strip heuristics, or row blocking.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

BACKEND_NAME = "python"

_QUERY_CHUNK = 4_000_000  # cap on edges*points per dense block


@dataclass(frozen=True)
class StripIndex:
    """CSR buckets of edge ids over horizontal strips of the loop's y-range.

    Pruning only: a query against strip floor((py - y0)/h) sees every edge
    whose eps-expanded y-span contains py, so the strip layout never changes
    results, only how many edges get tested.
    """

    y0: float
    h: float
    nstrips: int
    start: np.ndarray  # int64 (nstrips+1,)
    edges: np.ndarray  # int64 (total incidences,)

    def strip_of(self, qy: np.ndarray) -> np.ndarray:
        s = np.floor((qy - self.y0) / self.h).astype(np.int64)
        return np.clip(s, 0, self.nstrips - 1)


def build_strip_index(loop_x, loop_y, eps: float) -> StripIndex:
    ay, by = loop_y[:-1], loop_y[1:]
    ylo = np.minimum(ay, by) - eps
    yhi = np.maximum(ay, by) + eps
    n_edges = ay.size
    y0 = float(ylo.min())
    span = float(yhi.max()) - y0
    if span <= 0.0:
        return StripIndex(
            y0, 1.0, 1,
            np.array([0, n_edges], dtype=np.int64),
            np.arange(n_edges, dtype=np.int64),
        )
    h = max(float(np.median(yhi - ylo)), span / (8.0 * n_edges))
    nstrips = max(1, min(8 * n_edges, int(np.ceil(span / h))))
    s_lo = np.clip(np.floor((ylo - y0) / h).astype(np.int64), 0, nstrips - 1)
    s_hi = np.clip(np.floor((yhi - y0) / h).astype(np.int64), 0, nstrips - 1)
    lens = s_hi - s_lo + 1
    total = int(lens.sum())
    eids = np.repeat(np.arange(n_edges, dtype=np.int64), lens)
    offs = np.arange(total, dtype=np.int64) - np.repeat(
        np.concatenate([[0], np.cumsum(lens[:-1])]), lens
    )
    strips = np.repeat(s_lo, lens) + offs
    order = np.argsort(strips, kind="stable")
    counts = np.bincount(strips, minlength=nstrips)
    start = np.concatenate([[0], np.cumsum(counts)]).astype(np.int64)
    return StripIndex(y0, h, nstrips, start, eids[order])


def winding_queries(loop_x, loop_y, index: StripIndex, qx, qy, eps: float):
    """Winding numbers of the closed loop at query points.

    Returns (wind int64 array, oncurve bool array); wind is meaningless where
    oncurve is set (the point is within eps of some edge).
    """
    qx = np.ascontiguousarray(qx, dtype=np.float64)
    qy = np.ascontiguousarray(qy, dtype=np.float64)
    wind = np.zeros(qx.size, dtype=np.int64)
    oncurve = np.zeros(qx.size, dtype=bool)
    if qx.size == 0:
        return wind, oncurve
    eps2 = eps * eps
    strips = index.strip_of(qy)
    order = np.argsort(strips, kind="stable")
    sorted_strips = strips[order]
    # group queries per strip, test each group densely against its edges
    group_bounds = np.flatnonzero(np.diff(sorted_strips)) + 1
    group_starts = np.concatenate([[0], group_bounds, [qx.size]])
    for g in range(group_starts.size - 1):
        g0, g1 = int(group_starts[g]), int(group_starts[g + 1])
        s = int(sorted_strips[g0])
        eids = index.edges[index.start[s] : index.start[s + 1]]
        if eids.size == 0:
            continue
        sel = order[g0:g1]
        step = max(1, _QUERY_CHUNK // max(1, eids.size))
        for c0 in range(0, sel.size, step):
            sub = sel[c0 : c0 + step]
            w, on = _dense_queries(loop_x, loop_y, eids, qx[sub], qy[sub], eps2)
            wind[sub] = w
            oncurve[sub] = on
    return wind, oncurve


def _dense_queries(loop_x, loop_y, eids, px, py, eps2):
    ax = loop_x[eids][:, None]
    ay = loop_y[eids][:, None]
    bx = loop_x[eids + 1][:, None]
    by = loop_y[eids + 1][:, None]
    px = px[None, :]
    py = py[None, :]

    crossing = (ay > py) != (by > py)
    side = (bx - ax) * (py - ay) - (px - ax) * (by - ay)
    up = by > ay
    contrib = np.where(crossing & up & (side > 0.0), 1, 0) + np.where(
        crossing & ~up & (side < 0.0), -1, 0
    )
    wind = contrib.sum(axis=0, dtype=np.int64)

    dx = bx - ax
    dy = by - ay
    l2 = dx * dx + dy * dy
    safe = np.where(l2 > 0.0, l2, 1.0)
    t = np.where(l2 > 0.0, ((px - ax) * dx + (py - ay) * dy) / safe, 0.0)
    t = np.clip(t, 0.0, 1.0)
    ex = px - (ax + t * dx)
    ey = py - (ay + t * dy)
    oncurve = ((ex * ex + ey * ey) <= eps2).any(axis=0)
    return wind, oncurve


def field_scan(loop_x, loop_y, x0, y0, cell, nx, ny, row_lo, row_hi):
    """Winding values and mask at cell centers for grid rows [row_lo, row_hi).

    Returns (values int32 (rows, nx), mask bool (rows, nx)). Masked cells are
    those whose center is within cell/2 of some edge or within 4 ulps of a
    scanline intercept; values are computed everywhere regardless.
    """
    nrows = row_hi - row_lo
    ax, bx = loop_x[:-1], loop_x[1:]
    ay, by = loop_y[:-1], loop_y[1:]
    cxs = x0 + (np.arange(nx) + 0.5) * cell
    cys = y0 + (np.arange(row_lo, row_hi) + 0.5) * cell

    diff = np.zeros((nrows, nx + 1), dtype=np.int32)
    mask = np.zeros((nrows, nx), dtype=bool)

    # --- signed ray crossings per row -------------------------------------
    ylo = np.minimum(ay, by)
    yhi = np.maximum(ay, by)
    # clamp in float space before casting: paths far outside the grid must
    # not overflow the index arithmetic
    lo = np.clip(np.floor((ylo - y0) / cell - 0.5) - 1.0, row_lo, row_hi)
    hi = np.clip(np.floor((yhi - y0) / cell - 0.5) + 2.0, row_lo, row_hi)
    lo = lo.astype(np.int64)
    hi = hi.astype(np.int64)
    lens = np.maximum(hi - lo, 0)
    total = int(lens.sum())
    if total:
        eids = np.repeat(np.arange(ax.size, dtype=np.int64), lens)
        offs = np.arange(total, dtype=np.int64) - np.repeat(
            np.concatenate([[0], np.cumsum(lens[:-1])]), lens
        )
        iy = np.repeat(lo, lens) + offs
        cy = cys[iy - row_lo]
        aye, bye = ay[eids], by[eids]
        keep = (aye > cy) != (bye > cy)
        if keep.any():
            eids, iy, cy = eids[keep], iy[keep], cy[keep]
            aye, bye = aye[keep], bye[keep]
            axe, bxe = ax[eids], bx[eids]
            qx = axe + ((cy - aye) * (bxe - axe)) / (bye - aye)
            sgn = np.where(bye > aye, 1, -1).astype(np.int32)
            k = np.searchsorted(cxs, qx, side="left").astype(np.int64)
            row = iy - row_lo
            np.add.at(diff, (row, np.zeros_like(k)), sgn)
            np.add.at(diff, (row, k), -sgn)
            # centers within 4 ulps of an intercept are classification ties
            for off in (-1, 0):
                ixn = k + off
                ok = (ixn >= 0) & (ixn < nx)
                if ok.any():
                    cxn = cxs[ixn[ok]]
                    qxo = qx[ok]
                    tol = 4.0 * np.spacing(np.maximum(np.abs(cxn), np.abs(qxo)))
                    near = np.abs(cxn - qxo) <= tol
                    mask[row[ok][near], ixn[ok][near]] = True

    values = np.cumsum(diff, axis=1, dtype=np.int32)[:, :nx]

    # --- distance mask: centers within cell/2 of an edge ------------------
    # candidates: 3x3 neighborhoods of edge samples at spacing <= cell/2
    # (a proven superset), then the exact segment-distance filter. The filter
    # makes the final mask independent of how candidates were generated.
    seg_len = np.hypot(bx - ax, by - ay)
    ns = np.maximum(1, np.ceil(seg_len / (0.5 * cell)).astype(np.int64))
    counts = ns + 1
    total = int(counts.sum())
    eids = np.repeat(np.arange(ax.size, dtype=np.int64), counts)
    offs = np.arange(total, dtype=np.int64) - np.repeat(
        np.concatenate([[0], np.cumsum(counts[:-1])]), counts
    )
    tloc = offs / ns[eids]
    axe, bxe, aye, bye = ax[eids], bx[eids], ay[eids], by[eids]
    sx = axe + tloc * (bxe - axe)
    sy = aye + tloc * (bye - aye)
    gxf = np.floor((sx - x0) / cell)
    gyf = np.floor((sy - y0) / cell)
    inb = (gxf >= -1) & (gxf <= nx) & (gyf >= row_lo - 1) & (gyf <= row_hi)
    eids, gx, gy = eids[inb], gxf[inb].astype(np.int64), gyf[inb].astype(np.int64)
    r = 0.5 * cell
    r2 = r * r
    for du in (-1, 0, 1):
        for dv in (-1, 0, 1):
            cix = gx + du
            ciy = gy + dv
            ok = (cix >= 0) & (cix < nx) & (ciy >= row_lo) & (ciy < row_hi)
            if not ok.any():
                continue
            cix_o, ciy_o, e_o = cix[ok], ciy[ok], eids[ok]
            cx = cxs[cix_o]
            cy = cys[ciy_o - row_lo]
            dxe = bx[e_o] - ax[e_o]
            dye = by[e_o] - ay[e_o]
            l2 = dxe * dxe + dye * dye
            safe = np.where(l2 > 0.0, l2, 1.0)
            t = np.where(
                l2 > 0.0,
                ((cx - ax[e_o]) * dxe + (cy - ay[e_o]) * dye) / safe,
                0.0,
            )
            t = np.clip(t, 0.0, 1.0)
            ex = cx - (ax[e_o] + t * dxe)
            ey = cy - (ay[e_o] + t * dye)
            near = (ex * ex + ey * ey) <= r2
            mask[ciy_o[near] - row_lo, cix_o[near]] = True

    return values, mask
