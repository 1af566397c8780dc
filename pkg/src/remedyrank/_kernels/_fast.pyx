# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled implementations of the hot kernels.

Same contracts as ``remedyrank._kernels.fallback``; see the docstrings
there. The Jacobi sweep recomputes row inner products directly (cheap in C)
instead of tracking a Gram matrix.
"""

from libc.math cimport sqrt, fabs, copysign

import numpy as np

BACKEND_NAME = "compiled"


def jacobi_sweeps(double[:, ::1] wt, double[:, ::1] va, double tol, int max_sweeps):
    cdef Py_ssize_t n = wt.shape[0]
    cdef Py_ssize_t m = wt.shape[1]
    cdef Py_ssize_t nv = va.shape[1]
    cdef Py_ssize_t p, q, k
    cdef int sweep, rotations
    cdef double app, aqq, apq, denom, ratio, off, frob2, floor
    cdef double theta, t, c, s, xp, xq

    off = 0.0
    for sweep in range(1, max_sweeps + 1):
        # columns this far below the matrix scale are numerically zero;
        # their pair ratios are noise over noise and must not drive
        # rotations (rank-deficient inputs would never converge otherwise)
        frob2 = 0.0
        for p in range(n):
            for k in range(m):
                frob2 += wt[p, k] * wt[p, k]
        floor = frob2 * 1e-28
        rotations = 0
        off = 0.0
        for p in range(n - 1):
            for q in range(p + 1, n):
                app = 0.0
                aqq = 0.0
                apq = 0.0
                for k in range(m):
                    xp = wt[p, k]
                    xq = wt[q, k]
                    app += xp * xp
                    aqq += xq * xq
                    apq += xp * xq
                if app <= floor or aqq <= floor:
                    continue
                denom = sqrt(app * aqq)
                if denom <= 0.0:
                    continue
                ratio = fabs(apq) / denom
                if ratio > off:
                    off = ratio
                if ratio <= tol:
                    continue
                rotations += 1
                theta = (aqq - app) / (2.0 * apq)
                t = copysign(1.0, theta) / (fabs(theta) + sqrt(1.0 + theta * theta))
                c = 1.0 / sqrt(1.0 + t * t)
                s = t * c
                for k in range(m):
                    xp = wt[p, k]
                    xq = wt[q, k]
                    wt[p, k] = c * xp - s * xq
                    wt[q, k] = s * xp + c * xq
                for k in range(nv):
                    xp = va[p, k]
                    xq = va[q, k]
                    va[p, k] = c * xp - s * xq
                    va[q, k] = s * xp + c * xq
        if rotations == 0:
            return sweep, off, True
    return max_sweeps, off, False


def bm25_transform(double[::1] data, long[::1] indices, long[::1] indptr,
                   double[::1] doc_len, double[::1] idf,
                   double k1, double b, double avgdl):
    cdef Py_ssize_t m = indptr.shape[0] - 1
    cdef Py_ssize_t i, e
    cdef double f, norm_i
    out_arr = np.empty(data.shape[0], dtype=np.float64)
    cdef double[::1] out = out_arr
    for i in range(m):
        norm_i = k1 * (1.0 - b + b * doc_len[i] / avgdl)
        for e in range(indptr[i], indptr[i + 1]):
            f = data[e]
            out[e] = f * (k1 + 1.0) / (f + norm_i) * idf[indices[e]]
    return out_arr
