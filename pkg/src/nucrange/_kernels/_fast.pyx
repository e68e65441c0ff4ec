# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled curve-evaluation kernels; mirrors ``pure.py`` exactly."""

from libc.math cimport cos, sin

import numpy as np

BACKEND = "cython"


def curve_xy(double cx, double cy, double p,
             double q1, double q2, double r1, double r2, phis):
    cdef double[::1] ph = np.ascontiguousarray(phis, dtype=np.float64)
    cdef Py_ssize_t n = ph.shape[0], i
    x_arr = np.empty(n, dtype=np.float64)
    y_arr = np.empty(n, dtype=np.float64)
    cdef double[::1] x = x_arr
    cdef double[::1] y = y_arr
    cdef double c, s
    for i in range(n):
        c = cos(ph[i])
        s = sin(ph[i])
        x[i] = cx + p * (q1 * c + r1 * s)
        y[i] = cy + p * (q2 * c + r2 * s)
    return x_arr, y_arr


def conic_residual(x, y, double cx, double cy, double inv_scale,
                   double ca, double cb, double cc):
    cdef double[::1] xv = np.ascontiguousarray(x, dtype=np.float64)
    cdef double[::1] yv = np.ascontiguousarray(y, dtype=np.float64)
    cdef Py_ssize_t n = xv.shape[0], i
    out_arr = np.empty(n, dtype=np.float64)
    cdef double[::1] out = out_arr
    cdef double u, v
    for i in range(n):
        u = (xv[i] - cx) * inv_scale
        v = (yv[i] - cy) * inv_scale
        out[i] = ca * u * u + cb * v * v + cc * u * v - 1.0
    return out_arr


cdef inline double _g_at(double phi,
                         double ecx, double ecy, double ep,
                         double eq1, double eq2, double er1, double er2,
                         double ccx, double ccy, double cinv,
                         double ca, double cb, double cc) nogil:
    cdef double c = cos(phi)
    cdef double s = sin(phi)
    cdef double u = (ecx + ep * (eq1 * c + er1 * s) - ccx) * cinv
    cdef double v = (ecy + ep * (eq2 * c + er2 * s) - ccy) * cinv
    return ca * u * u + cb * v * v + cc * u * v - 1.0


def residual_on_curve(curve, conic, phis):
    cdef double ecx = curve[0], ecy = curve[1], ep = curve[2]
    cdef double eq1 = curve[3], eq2 = curve[4], er1 = curve[5], er2 = curve[6]
    cdef double ccx = conic[0], ccy = conic[1], cinv = conic[2]
    cdef double ca = conic[3], cb = conic[4], cc = conic[5]
    cdef double[::1] ph = np.ascontiguousarray(phis, dtype=np.float64)
    cdef Py_ssize_t n = ph.shape[0], i
    out_arr = np.empty(n, dtype=np.float64)
    cdef double[::1] out = out_arr
    for i in range(n):
        out[i] = _g_at(ph[i], ecx, ecy, ep, eq1, eq2, er1, er2,
                       ccx, ccy, cinv, ca, cb, cc)
    return out_arr


def bisect_on_curve(curve, conic, double lo, double hi, double flo,
                    double tol, int max_iter):
    cdef double ecx = curve[0], ecy = curve[1], ep = curve[2]
    cdef double eq1 = curve[3], eq2 = curve[4], er1 = curve[5], er2 = curve[6]
    cdef double ccx = conic[0], ccy = conic[1], cinv = conic[2]
    cdef double ca = conic[3], cb = conic[4], cc = conic[5]
    cdef bint neg = flo < 0.0
    cdef double mid, fm
    cdef int it
    for it in range(max_iter):
        mid = 0.5 * (lo + hi)
        if hi - lo < tol:
            return mid
        fm = _g_at(mid, ecx, ecy, ep, eq1, eq2, er1, er2,
                   ccx, ccy, cinv, ca, cb, cc)
        if (fm < 0.0) == neg:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)
