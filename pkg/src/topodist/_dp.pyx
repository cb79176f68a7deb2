# cython: boundscheck=False, wraparound=False, initializedcheck=False
"""Compiled dynamic-programming table fills (preferred backend).

Semantically identical to ``_dp_py``; the tables agree bit for bit.
"""

from libc.math cimport INFINITY, fabs

import numpy as np

BACKEND_NAME = "compiled"


def dope_fill(const double[::1] vx, const signed char[::1] kx,
              const double[::1] vy, const signed char[::1] ky):
    """Fill the (m+1)x(n+1) alignment-cost table (see _dp_py.dope_fill)."""
    cdef Py_ssize_t m = vx.shape[0]
    cdef Py_ssize_t n = vy.shape[0]
    out = np.full((m + 1, n + 1), np.inf)
    cdef double[:, ::1] d = out
    cdef Py_ssize_t i, j
    cdef double acc, best, cand
    d[0, 0] = 0.0
    acc = 0.0
    for i in range(1, m + 1):
        acc += vx[i - 1] * kx[i - 1]
        if i % 2 == 0:
            d[i, 0] = acc
    acc = 0.0
    for j in range(1, n + 1):
        acc += vy[j - 1] * ky[j - 1]
        if j % 2 == 0:
            d[0, j] = acc
    for i in range(1, m + 1):
        for j in range(1, n + 1):
            best = INFINITY
            if kx[i - 1] == ky[j - 1]:
                best = d[i - 1, j - 1] + fabs(vx[i - 1] - vy[j - 1])
            if i >= 2:
                cand = d[i - 2, j] + fabs(vx[i - 1] - vx[i - 2])
                if cand < best:
                    best = cand
            if j >= 2:
                cand = d[i, j - 2] + fabs(vy[j - 1] - vy[j - 2])
                if cand < best:
                    best = cand
            d[i, j] = best
    return out


def dtw_fill(const double[::1] x, const double[::1] y):
    """Fill the m x n accumulated-cost table for dynamic time warping."""
    cdef Py_ssize_t m = x.shape[0]
    cdef Py_ssize_t n = y.shape[0]
    out = np.empty((m, n))
    cdef double[:, ::1] d = out
    cdef Py_ssize_t i, j
    cdef double acc, best, cand
    acc = 0.0
    for j in range(n):
        acc += fabs(x[0] - y[j])
        d[0, j] = acc
    acc = 0.0
    for i in range(m):
        acc += fabs(x[i] - y[0])
        d[i, 0] = acc
    for i in range(1, m):
        for j in range(1, n):
            best = d[i - 1, j - 1]
            cand = d[i - 1, j]
            if cand < best:
                best = cand
            cand = d[i, j - 1]
            if cand < best:
                best = cand
            d[i, j] = fabs(x[i] - y[j]) + best
    return out
