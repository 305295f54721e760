# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled winding kernels.

Mirrors py_backend.py expression for expression; see that module's docstring
for the shared arithmetic contract. Any change here must be made there too,
and vice versa — the test suite asserts bitwise agreement.
"""

import numpy as np

from libc.math cimport INFINITY, ceil, fabs, floor, hypot, nextafter


def winding_queries(
    const double[::1] lx,
    const double[::1] ly,
    const long long[::1] start,
    const long long[::1] edge_ids,
    double y0,
    double h,
    long long nstrips,
    const double[::1] qx,
    const double[::1] qy,
    double eps,
):
    cdef Py_ssize_t npts = qx.shape[0]
    wind_arr = np.zeros(npts, dtype=np.int64)
    on_arr = np.zeros(npts, dtype=np.uint8)
    cdef long long[::1] wind = wind_arr
    cdef unsigned char[::1] oncurve = on_arr
    cdef double eps2 = eps * eps
    cdef Py_ssize_t i, j
    cdef long long s, e, w
    cdef unsigned char onc
    cdef double px, py, ax, ay, bx, by, side, dx, dy, l2, t, ex, ey

    with nogil:
        for i in range(npts):
            px = qx[i]
            py = qy[i]
            s = <long long> floor((py - y0) / h)
            if s < 0:
                s = 0
            if s >= nstrips:
                s = nstrips - 1
            w = 0
            onc = 0
            for j in range(start[s], start[s + 1]):
                e = edge_ids[j]
                ax = lx[e]
                ay = ly[e]
                bx = lx[e + 1]
                by = ly[e + 1]
                if (ay > py) != (by > py):
                    side = (bx - ax) * (py - ay) - (px - ax) * (by - ay)
                    if by > ay:
                        if side > 0.0:
                            w += 1
                    else:
                        if side < 0.0:
                            w -= 1
                if not onc:
                    dx = bx - ax
                    dy = by - ay
                    l2 = dx * dx + dy * dy
                    if l2 > 0.0:
                        t = ((px - ax) * dx + (py - ay) * dy) / l2
                        if t < 0.0:
                            t = 0.0
                        elif t > 1.0:
                            t = 1.0
                    else:
                        t = 0.0
                    ex = px - (ax + t * dx)
                    ey = py - (ay + t * dy)
                    if ex * ex + ey * ey <= eps2:
                        onc = 1
            wind[i] = w
            oncurve[i] = onc
    return wind_arr, on_arr.view(np.bool_)


def field_scan(
    const double[::1] lx,
    const double[::1] ly,
    double x0,
    double y0,
    double cell,
    Py_ssize_t nx,
    Py_ssize_t ny,
    Py_ssize_t row_lo,
    Py_ssize_t row_hi,
):
    cdef Py_ssize_t nrows = row_hi - row_lo
    cdef Py_ssize_t n_edges = lx.shape[0] - 1
    diff_arr = np.zeros((nrows, nx + 1), dtype=np.int32)
    mask_arr = np.zeros((nrows, nx), dtype=np.uint8)
    cdef int[:, ::1] diff = diff_arr
    cdef unsigned char[:, ::1] mask = mask_arr

    cdef Py_ssize_t e, mid, klo, khi, k, ixn, cix
    cdef long long iy, lo, hi, gx, gy, ciy, ns, j
    cdef int du, dv, half
    cdef int sgn
    cdef double ax, ay, bx, by, ylo, yhi, cy, cx, qxv, cxn, m, tol
    cdef double lod, hid, gxd, gyd
    cdef double dxe, dye, l2, t, ex, ey, sx, sy, tloc
    cdef double r = 0.5 * cell
    cdef double r2 = r * r

    with nogil:
        # --- signed ray crossings per row ---------------------------------
        for e in range(n_edges):
            ax = lx[e]
            ay = ly[e]
            bx = lx[e + 1]
            by = ly[e + 1]
            if ay < by:
                ylo = ay
                yhi = by
            else:
                ylo = by
                yhi = ay
            # clamp in float space before casting (far-away edges must not
            # overflow the index arithmetic)
            lod = floor((ylo - y0) / cell - 0.5) - 1.0
            hid = floor((yhi - y0) / cell - 0.5) + 2.0
            if lod < row_lo:
                lod = row_lo
            if hid > row_hi:
                hid = row_hi
            lo = <long long> lod
            hi = <long long> hid
            if hi < lo:
                hi = lo
            for iy in range(lo, hi):
                cy = y0 + (iy + 0.5) * cell
                if (ay > cy) != (by > cy):
                    qxv = ax + ((cy - ay) * (bx - ax)) / (by - ay)
                    sgn = 1 if by > ay else -1
                    klo = 0
                    khi = nx
                    while klo < khi:
                        mid = (klo + khi) // 2
                        if x0 + (mid + 0.5) * cell < qxv:
                            klo = mid + 1
                        else:
                            khi = mid
                    k = klo
                    diff[iy - row_lo, 0] += sgn
                    diff[iy - row_lo, k] -= sgn
                    for half in range(2):
                        ixn = k - 1 + half
                        if 0 <= ixn < nx:
                            cxn = x0 + (ixn + 0.5) * cell
                            m = fabs(cxn)
                            if fabs(qxv) > m:
                                m = fabs(qxv)
                            tol = 4.0 * (nextafter(m, INFINITY) - m)
                            if fabs(cxn - qxv) <= tol:
                                mask[iy - row_lo, ixn] = 1

        # --- distance mask: centers within cell/2 of an edge ---------------
        for e in range(n_edges):
            ax = lx[e]
            ay = ly[e]
            bx = lx[e + 1]
            by = ly[e + 1]
            dxe = bx - ax
            dye = by - ay
            l2 = dxe * dxe + dye * dye
            ns = <long long> ceil(hypot(dxe, dye) / (0.5 * cell))
            if ns < 1:
                ns = 1
            for j in range(ns + 1):
                tloc = <double> j / <double> ns
                sx = ax + tloc * (bx - ax)
                sy = ay + tloc * (by - ay)
                gxd = floor((sx - x0) / cell)
                gyd = floor((sy - y0) / cell)
                if gxd < -1 or gxd > nx or gyd < row_lo - 1 or gyd > row_hi:
                    continue
                gx = <long long> gxd
                gy = <long long> gyd
                for du in range(-1, 2):
                    cix = gx + du
                    if cix < 0 or cix >= nx:
                        continue
                    cx = x0 + (cix + 0.5) * cell
                    for dv in range(-1, 2):
                        ciy = gy + dv
                        if ciy < row_lo or ciy >= row_hi:
                            continue
                        if mask[ciy - row_lo, cix]:
                            continue
                        cy = y0 + (ciy + 0.5) * cell
                        if l2 > 0.0:
                            t = ((cx - ax) * dxe + (cy - ay) * dye) / l2
                            if t < 0.0:
                                t = 0.0
                            elif t > 1.0:
                                t = 1.0
                        else:
                            t = 0.0
                        ex = cx - (ax + t * dxe)
                        ey = cy - (ay + t * dye)
                        if ex * ex + ey * ey <= r2:
                            mask[ciy - row_lo, cix] = 1

    values = np.cumsum(diff_arr, axis=1, dtype=np.int32)[:, :nx]
    return values, mask_arr.view(np.bool_)
