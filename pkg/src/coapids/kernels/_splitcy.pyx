# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled split-search kernels.

Operation-for-operation twin of ``_splitpy``; compiled with FP contraction
disabled so both backends produce bit-identical gains and thresholds.
"""

import numpy as np

from libc.math cimport frexp, INFINITY, NAN

GINI = 0
ENTROPY = 1

cdef double P0 = 1.01875663804580931796e-4
cdef double P1 = 4.97494994976747001425e-1
cdef double P2 = 4.70579119878881725854e0
cdef double P3 = 1.44989225341610930846e1
cdef double P4 = 1.79368678507819816313e1
cdef double P5 = 7.70838733755885391666e0
cdef double Q0 = 1.12873587189167450590e1
cdef double Q1 = 4.52279145837532221105e1
cdef double Q2 = 8.29875266912776603211e1
cdef double Q3 = 7.11544750618563894466e1
cdef double Q4 = 2.31251620126765340583e1
cdef double LOG2EA = 4.4269504088896340735992e-1
cdef double SQRTH = 0.70710678118654752440


cdef inline double _log2(double value) nogil:
    cdef int ei
    cdef double x = frexp(value, &ei)
    cdef double e = <double> ei
    cdef double z, num, den, y, r
    if x < SQRTH:
        e -= 1.0
        x = 2.0 * x - 1.0
    else:
        x = x - 1.0
    z = x * x
    num = P0
    num = num * x + P1
    num = num * x + P2
    num = num * x + P3
    num = num * x + P4
    num = num * x + P5
    den = x + Q0
    den = den * x + Q1
    den = den * x + Q2
    den = den * x + Q3
    den = den * x + Q4
    y = x * (z * num / den) - 0.5 * z
    r = y * LOG2EA
    r += x * LOG2EA
    r += y
    r += x
    r += e
    return r


def log2_shared(values):
    arr = np.ascontiguousarray(values, dtype=np.float64)
    out = np.empty_like(arr)
    cdef double[::1] src = arr.ravel()
    cdef double[::1] dst = out.ravel()
    cdef Py_ssize_t i
    for i in range(src.shape[0]):
        dst[i] = _log2(src[i])
    return out


def log2_scalar(double value):
    return _log2(value)


def class_stats(int[:] idx, int[:] y, double[:] w, int k):
    totals = np.zeros(k, dtype=np.float64)
    cdef double[::1] t = totals
    cdef Py_ssize_t i, row
    for i in range(idx.shape[0]):
        row = idx[i]
        t[y[row]] += w[row]
    return totals


def grad_stats(int[:] idx, double[:] g, double[:] h):
    cdef double gs = 0.0
    cdef double hs = 0.0
    cdef Py_ssize_t i, row
    for i in range(idx.shape[0]):
        row = idx[i]
        gs += g[row]
        hs += h[row]
    return gs, hs


def scan_classification(double[:, ::1] X, int[:] idx, Py_ssize_t j,
                        int[:] y, double[:] w,
                        double[:] totals, double total_weight,
                        double parent_cost, int criterion):
    cdef Py_ssize_t m = idx.shape[0]
    if m < 2:
        return -INFINITY, NAN
    cdef Py_ssize_t k = totals.shape[0]
    cdef double[::1] cum = np.zeros(k, dtype=np.float64)
    cdef double best_gain = -INFINITY
    cdef double best_thr = NAN
    cdef double prev, v, wl, wr, acc_l, acc_r, imp_l, imp_r, pl, pr, child, gain
    cdef Py_ssize_t i, c, row

    row = idx[0]
    prev = X[row, j]
    cum[y[row]] += w[row]
    for i in range(1, m):
        row = idx[i]
        v = X[row, j]
        if v != prev:
            wl = 0.0
            for c in range(k):
                wl += cum[c]
            wr = total_weight - wl
            if criterion == GINI:
                acc_l = 0.0
                acc_r = 0.0
                for c in range(k):
                    pl = cum[c] / wl
                    acc_l += pl * pl
                    pr = (totals[c] - cum[c]) / wr
                    acc_r += pr * pr
                imp_l = 1.0 - acc_l
                imp_r = 1.0 - acc_r
            else:
                imp_l = 0.0
                imp_r = 0.0
                for c in range(k):
                    pl = cum[c] / wl
                    if pl > 0.0:
                        imp_l -= pl * _log2(pl)
                    pr = (totals[c] - cum[c]) / wr
                    if pr > 0.0:
                        imp_r -= pr * _log2(pr)
            child = wl * imp_l + wr * imp_r
            gain = parent_cost - child
            if gain > best_gain:
                best_gain = gain
                best_thr = (prev + v) / 2.0
            prev = v
        cum[y[row]] += w[row]
    return best_gain, best_thr


def scan_regression(double[:, ::1] X, int[:] idx, Py_ssize_t j,
                    double[:] g, double[:] h,
                    double g_total, double h_total,
                    double lam, double min_child_weight, double parent_score):
    cdef Py_ssize_t m = idx.shape[0]
    if m < 2:
        return -INFINITY, NAN
    cdef double best_gain = -INFINITY
    cdef double best_thr = NAN
    cdef double prev, v, gl, hl, gr, hr, gain
    cdef Py_ssize_t i, row

    row = idx[0]
    prev = X[row, j]
    gl = g[row]
    hl = h[row]
    for i in range(1, m):
        row = idx[i]
        v = X[row, j]
        if v != prev:
            gr = g_total - gl
            hr = h_total - hl
            if hl >= min_child_weight and hr >= min_child_weight:
                gain = gl * gl / (hl + lam) + gr * gr / (hr + lam) - parent_score
                if gain > best_gain:
                    best_gain = gain
                    best_thr = (prev + v) / 2.0
            prev = v
        gl += g[row]
        hl += h[row]
    return best_gain, best_thr


def partition(int[:, ::1] cols, unsigned char[:] flags):
    cdef Py_ssize_t d = cols.shape[0]
    cdef Py_ssize_t m = cols.shape[1]
    cdef Py_ssize_t ml = 0
    cdef Py_ssize_t i, j, a, b
    for i in range(m):
        if flags[cols[0, i]]:
            ml += 1
    left = np.empty((d, ml), dtype=np.int32)
    right = np.empty((d, m - ml), dtype=np.int32)
    cdef int[:, ::1] lv = left
    cdef int[:, ::1] rv = right
    for j in range(d):
        a = 0
        b = 0
        for i in range(m):
            if flags[cols[j, i]]:
                lv[j, a] = cols[j, i]
                a += 1
            else:
                rv[j, b] = cols[j, i]
                b += 1
    return left, right
