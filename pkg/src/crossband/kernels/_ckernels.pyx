# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled hot kernels: census descriptors, Hamming cost volume, SGM.

Arithmetic order matches ``_pykernels`` exactly; the test suite checks the
two backends for bitwise equality.
"""

import numpy as np
cimport numpy as cnp
from libc.stdint cimport uint64_t

cnp.import_array()

cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil

NAME = "cython"


cdef inline int _clamp(int v, int lo, int hi) nogil:
    if v < lo:
        return lo
    if v > hi:
        return hi
    return v


cdef inline int _popcount(uint64_t x) nogil:
    return __builtin_popcountll(x)


def census_descriptors(img, int window):
    cdef const double[:, ::1] a = np.ascontiguousarray(img, dtype=np.float64)
    cdef Py_ssize_t H = a.shape[0], W = a.shape[1]
    cdef int h = window // 2
    out = np.zeros((H, W), dtype=np.uint64)
    cdef uint64_t[:, ::1] o = out
    cdef Py_ssize_t y, x
    cdef int i, j, k
    cdef double c
    cdef uint64_t desc
    with nogil:
        for y in range(H):
            for x in range(W):
                c = a[y, x]
                desc = 0
                k = 0
                for i in range(-h, h + 1):
                    for j in range(-h, h + 1):
                        if i == 0 and j == 0:
                            continue
                        if a[_clamp(<int>y + i, 0, <int>H - 1), _clamp(<int>x + j, 0, <int>W - 1)] < c:
                            desc |= (<uint64_t>1) << k
                        k += 1
                o[y, x] = desc
    return out


def census_volume(desc_l, desc_r, int dmax):
    cdef const uint64_t[:, ::1] l = np.ascontiguousarray(desc_l, dtype=np.uint64)
    cdef const uint64_t[:, ::1] r = np.ascontiguousarray(desc_r, dtype=np.uint64)
    cdef Py_ssize_t H = l.shape[0], W = l.shape[1]
    vol = np.zeros((H, W, dmax + 1), dtype=np.float64)
    cdef double[:, :, ::1] v = vol
    cdef Py_ssize_t y, x, d, dlim
    cdef uint64_t dl
    with nogil:
        for y in range(H):
            for x in range(W):
                dl = l[y, x]
                dlim = dmax if dmax < x else x
                for d in range(dlim + 1):
                    v[y, x, d] = _popcount(dl ^ r[y, x - d])
    return vol


cdef void _path(const double[:, :, ::1] c, double[:, :, ::1] out, int dy, int dx,
                double p1, double p2, double[:, :, ::1] rows, double[:, ::1] mins) nogil:
    # rows[ci] holds the row being computed, rows[1 - ci] the previous one
    cdef int H = c.shape[0], W = c.shape[1], D = c.shape[2]
    cdef int yi, y, xi, x, d, px, py, ci, pi
    cdef double best, t, m, pm, val
    for yi in range(H):
        y = yi if dy >= 0 else H - 1 - yi
        py = y - dy
        ci = yi & 1
        # horizontal paths read the current row, others the previous
        pi = ci if dy == 0 else 1 - ci
        for xi in range(W):
            x = xi if dx >= 0 else W - 1 - xi
            px = x - dx
            m = 1e300
            if py < 0 or py >= H or px < 0 or px >= W:
                for d in range(D):
                    val = c[y, x, d]
                    rows[ci, x, d] = val
                    if val < m:
                        m = val
            else:
                pm = mins[pi, px]
                for d in range(D):
                    best = rows[pi, px, d]
                    if d > 0:
                        t = rows[pi, px, d - 1] + p1
                        if t < best:
                            best = t
                    if d < D - 1:
                        t = rows[pi, px, d + 1] + p1
                        if t < best:
                            best = t
                    t = pm + p2
                    if t < best:
                        best = t
                    val = (c[y, x, d] + best) - pm
                    rows[ci, x, d] = val
                    if val < m:
                        m = val
            mins[ci, x] = m
            for d in range(D):
                out[y, x, d] += rows[ci, x, d]


def sgm_aggregate(vol, double p1, double p2, directions):
    cdef const double[:, :, ::1] c = np.ascontiguousarray(vol, dtype=np.float64)
    cdef Py_ssize_t H = c.shape[0], W = c.shape[1], D = c.shape[2]
    out = np.zeros((H, W, D), dtype=np.float64)
    cdef double[:, :, ::1] o = out
    cdef double[:, :, ::1] rows = np.zeros((2, W, D))
    cdef double[:, ::1] mins = np.zeros((2, W))
    cdef int dy, dx
    for dy, dx in directions:
        with nogil:
            _path(c, o, dy, dx, p1, p2, rows, mins)
    return out
