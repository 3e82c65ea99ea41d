# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Fused Cython implementations of the chart-level kernels.

Semantics match `_impl_py` (see that module for the conventions); these exist
because the Busemann-volume estimator and the batched metric suites evaluate
millions of chord roots.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport fabs, log, sqrt

cnp.import_array()

INF_T = 1e300
cdef double C_INF = 1e300
cdef double DEG_EPS = 1e-14


cdef inline void _ell_roots(const double* p, const double* d, const double[:, ::1] M,
                            const double[::1] b, double c0, int n,
                            double* tm, double* tp) noexcept nogil:
    cdef double aq = 0.0, bq = 0.0, cq = c0
    cdef double mp, md
    cdef int i, j
    for i in range(n):
        mp = 0.0
        md = 0.0
        for j in range(n):
            mp += M[i, j] * p[j]
            md += M[i, j] * d[j]
        aq += d[i] * md
        bq += d[i] * mp + d[i] * b[i]
        cq += p[i] * mp + 2.0 * p[i] * b[i]
    cdef double disc = bq * bq - aq * cq
    if disc < 0.0:
        disc = 0.0
    cdef double s = sqrt(disc)
    cdef double sgn = 1.0 if bq >= 0.0 else -1.0
    cdef double u = -(bq + sgn * s)
    cdef double scale = fabs(bq) + fabs(cq) + 1.0
    cdef double t1, t2
    if fabs(aq) > DEG_EPS * scale:
        t1 = u / aq
    else:
        if fabs(u) <= DEG_EPS:
            tm[0] = -C_INF
            tp[0] = C_INF
            return
        t1 = C_INF if u > 0.0 else -C_INF
    if fabs(u) > 0.0:
        t2 = cq / u
    else:
        t2 = -C_INF if bq >= 0.0 else C_INF
    if t1 > C_INF:
        t1 = C_INF
    elif t1 < -C_INF:
        t1 = -C_INF
    if t2 > C_INF:
        t2 = C_INF
    elif t2 < -C_INF:
        t2 = -C_INF
    if t1 <= t2:
        tm[0] = t1
        tp[0] = t2
    else:
        tm[0] = t2
        tp[0] = t1
    if tm[0] > 0.0:
        tm[0] = 0.0
    if tp[0] < 0.0:
        tp[0] = 0.0


cdef inline void _poly_roots(const double* p, const double* d, const double[:, ::1] G,
                             const double[::1] h, int m, int n,
                             double* tm, double* tp) noexcept nogil:
    cdef double lo = -C_INF, hi = C_INF
    cdef double slack, rate, r
    cdef int i, j
    for i in range(m):
        slack = h[i]
        rate = 0.0
        for j in range(n):
            slack -= G[i, j] * p[j]
            rate += G[i, j] * d[j]
        if rate > 0.0:
            r = slack / rate
            if r < hi:
                hi = r
        elif rate < 0.0:
            r = slack / rate
            if r > lo:
                lo = r
    if lo > 0.0:
        lo = 0.0
    if hi < 0.0:
        hi = 0.0
    tm[0] = lo
    tp[0] = hi


cdef inline double _cr(double tm, double tp, double tb) noexcept nogil:
    cdef double r1, r2
    if tm <= -C_INF / 2:
        r1 = 1.0
    else:
        r1 = (tb - tm) / (-tm)
    if tp >= C_INF / 2:
        r2 = 1.0
    else:
        r2 = tp / (tp - tb)
    return log(r1 * r2)


cdef inline double _finsler(double tm, double tp) noexcept nogil:
    cdef double a = 0.0, c = 0.0
    if tm > -C_INF / 2:
        a = 1.0 / (-tm if -tm > 1e-300 else 1e-300)
    if tp < C_INF / 2:
        c = 1.0 / (tp if tp > 1e-300 else 1e-300)
    return a + c


def chord_roots_ellipsoid(P, D, M, b, double c0):
    cdef cnp.ndarray[double, ndim=2] Pa = np.ascontiguousarray(np.atleast_2d(P), dtype=np.float64)
    cdef cnp.ndarray[double, ndim=2] Da = np.ascontiguousarray(np.atleast_2d(D), dtype=np.float64)
    cdef double[:, ::1] Mv = np.ascontiguousarray(M, dtype=np.float64)
    cdef double[::1] bv = np.ascontiguousarray(b, dtype=np.float64)
    cdef Py_ssize_t k = Pa.shape[0]
    cdef int n = <int>Pa.shape[1]
    cdef cnp.ndarray[double, ndim=2] out = np.empty((k, 2))
    cdef Py_ssize_t i
    with nogil:
        for i in range(k):
            _ell_roots(&Pa[i, 0], &Da[i, 0], Mv, bv, c0, n, &out[i, 0], &out[i, 1])
    return out


def chord_roots_polytope(P, D, G, h):
    cdef cnp.ndarray[double, ndim=2] Pa = np.ascontiguousarray(np.atleast_2d(P), dtype=np.float64)
    cdef cnp.ndarray[double, ndim=2] Da = np.ascontiguousarray(np.atleast_2d(D), dtype=np.float64)
    cdef double[:, ::1] Gv = np.ascontiguousarray(G, dtype=np.float64)
    cdef double[::1] hv = np.ascontiguousarray(h, dtype=np.float64)
    cdef Py_ssize_t k = Pa.shape[0]
    cdef int n = <int>Pa.shape[1]
    cdef int m = <int>Gv.shape[0]
    cdef cnp.ndarray[double, ndim=2] out = np.empty((k, 2))
    cdef Py_ssize_t i
    with nogil:
        for i in range(k):
            _poly_roots(&Pa[i, 0], &Da[i, 0], Gv, hv, m, n, &out[i, 0], &out[i, 1])
    return out


def cr_distance(tm, tp, tb):
    cdef cnp.ndarray[double, ndim=1] tma = np.ascontiguousarray(np.atleast_1d(tm), dtype=np.float64)
    cdef cnp.ndarray[double, ndim=1] tpa = np.ascontiguousarray(np.atleast_1d(tp), dtype=np.float64)
    cdef cnp.ndarray[double, ndim=1] tba = np.ascontiguousarray(np.atleast_1d(tb), dtype=np.float64)
    cdef Py_ssize_t k = tma.shape[0]
    cdef cnp.ndarray[double, ndim=1] out = np.empty(k)
    cdef Py_ssize_t i
    for i in range(k):
        out[i] = _cr(tma[i], tpa[i], tba[i])
    return out


def finsler_factor(tm, tp):
    cdef cnp.ndarray[double, ndim=1] tma = np.ascontiguousarray(np.atleast_1d(tm), dtype=np.float64)
    cdef cnp.ndarray[double, ndim=1] tpa = np.ascontiguousarray(np.atleast_1d(tp), dtype=np.float64)
    cdef Py_ssize_t k = tma.shape[0]
    cdef cnp.ndarray[double, ndim=1] out = np.empty(k)
    cdef Py_ssize_t i
    for i in range(k):
        out[i] = _finsler(tma[i], tpa[i])
    return out


def pair_distance_ellipsoid(A, B, M, b, double c0):
    cdef cnp.ndarray[double, ndim=2] Aa = np.ascontiguousarray(np.atleast_2d(A), dtype=np.float64)
    cdef cnp.ndarray[double, ndim=2] Ba = np.ascontiguousarray(np.atleast_2d(B), dtype=np.float64)
    cdef double[:, ::1] Mv = np.ascontiguousarray(M, dtype=np.float64)
    cdef double[::1] bv = np.ascontiguousarray(b, dtype=np.float64)
    cdef Py_ssize_t k = Aa.shape[0]
    cdef int n = <int>Aa.shape[1]
    cdef cnp.ndarray[double, ndim=1] out = np.zeros(k)
    cdef cnp.ndarray[double, ndim=1] dbuf = np.empty(n)
    cdef double tb, tmv, tpv
    cdef Py_ssize_t i
    cdef int j
    for i in range(k):
        tb = 0.0
        for j in range(n):
            dbuf[j] = Ba[i, j] - Aa[i, j]
            tb += dbuf[j] * dbuf[j]
        tb = sqrt(tb)
        if tb <= 0.0:
            out[i] = 0.0
            continue
        for j in range(n):
            dbuf[j] /= tb
        _ell_roots(&Aa[i, 0], &dbuf[0], Mv, bv, c0, n, &tmv, &tpv)
        out[i] = _cr(tmv, tpv, tb)
    return out


def pair_distance_polytope(A, B, G, h):
    cdef cnp.ndarray[double, ndim=2] Aa = np.ascontiguousarray(np.atleast_2d(A), dtype=np.float64)
    cdef cnp.ndarray[double, ndim=2] Ba = np.ascontiguousarray(np.atleast_2d(B), dtype=np.float64)
    cdef double[:, ::1] Gv = np.ascontiguousarray(G, dtype=np.float64)
    cdef double[::1] hv = np.ascontiguousarray(h, dtype=np.float64)
    cdef Py_ssize_t k = Aa.shape[0]
    cdef int n = <int>Aa.shape[1]
    cdef int m = <int>Gv.shape[0]
    cdef cnp.ndarray[double, ndim=1] out = np.zeros(k)
    cdef cnp.ndarray[double, ndim=1] dbuf = np.empty(n)
    cdef double tb, tmv, tpv
    cdef Py_ssize_t i
    cdef int j
    for i in range(k):
        tb = 0.0
        for j in range(n):
            dbuf[j] = Ba[i, j] - Aa[i, j]
            tb += dbuf[j] * dbuf[j]
        tb = sqrt(tb)
        if tb <= 0.0:
            out[i] = 0.0
            continue
        for j in range(n):
            dbuf[j] /= tb
        _poly_roots(&Aa[i, 0], &dbuf[0], Gv, hv, m, n, &tmv, &tpv)
        out[i] = _cr(tmv, tpv, tb)
    return out


def density_ellipsoid(P, DIRS, M, b, double c0, nd, chunk=8192):
    cdef cnp.ndarray[double, ndim=2] Pa = np.ascontiguousarray(np.atleast_2d(P), dtype=np.float64)
    cdef cnp.ndarray[double, ndim=2] Ua = np.ascontiguousarray(DIRS, dtype=np.float64)
    cdef double[:, ::1] Mv = np.ascontiguousarray(M, dtype=np.float64)
    cdef double[::1] bv = np.ascontiguousarray(b, dtype=np.float64)
    cdef Py_ssize_t k = Pa.shape[0]
    cdef Py_ssize_t m = Ua.shape[0]
    cdef int n = <int>Pa.shape[1]
    cdef double power = <double>nd
    cdef cnp.ndarray[double, ndim=1] out = np.empty(k)
    cdef double tmv, tpv, acc, F
    cdef Py_ssize_t i, j
    with nogil:
        for i in range(k):
            acc = 0.0
            for j in range(m):
                _ell_roots(&Pa[i, 0], &Ua[j, 0], Mv, bv, c0, n, &tmv, &tpv)
                F = _finsler(tmv, tpv)
                acc += F ** (-power)
            out[i] = m / acc
    return out


def density_polytope(P, DIRS, G, h, nd, chunk=8192):
    cdef cnp.ndarray[double, ndim=2] Pa = np.ascontiguousarray(np.atleast_2d(P), dtype=np.float64)
    cdef cnp.ndarray[double, ndim=2] Ua = np.ascontiguousarray(DIRS, dtype=np.float64)
    cdef double[:, ::1] Gv = np.ascontiguousarray(G, dtype=np.float64)
    cdef double[::1] hv = np.ascontiguousarray(h, dtype=np.float64)
    cdef Py_ssize_t k = Pa.shape[0]
    cdef Py_ssize_t m = Ua.shape[0]
    cdef int n = <int>Pa.shape[1]
    cdef int mf = <int>Gv.shape[0]
    cdef double power = <double>nd
    cdef cnp.ndarray[double, ndim=1] out = np.empty(k)
    cdef double tmv, tpv, acc, F
    cdef Py_ssize_t i, j
    with nogil:
        for i in range(k):
            acc = 0.0
            for j in range(m):
                _poly_roots(&Pa[i, 0], &Ua[j, 0], Gv, hv, mf, n, &tmv, &tpv)
                F = _finsler(tmv, tpv)
                acc += F ** (-power)
            out[i] = m / acc
    return out
