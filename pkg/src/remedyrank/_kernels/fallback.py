"""Numpy implementations of the hot kernels.

Selected automatically when the compiled extension is unavailable (or when
REMEDYRANK_FORCE_FALLBACK is set). Signatures and semantics match
``remedyrank._kernels._fast`` exactly.
"""

from __future__ import annotations

import math

import numpy as np

BACKEND_NAME = "fallback"


def jacobi_sweeps(wt: np.ndarray, va: np.ndarray, tol: float, max_sweeps: int):
    """Orthogonalize the rows of ``wt`` in place with cyclic Jacobi rotations.

    ``wt`` holds the working matrix transposed (row j is column j of the
    original matrix); every plane rotation applied to a row pair of ``wt``
    is mirrored onto the row pair of ``va``, so ``va`` accumulates the right
    singular vectors. Returns (sweeps_used, max_off, converged) where
    ``max_off`` is the largest |<wi,wj>| / (|wi||wj|) seen in the final sweep.

    The Python-level loop cost is kept tolerable by tracking the Gram matrix
    of the rows incrementally (refreshed from scratch each sweep); the
    terminating sweep applies no rotations, so its threshold checks are made
    against an exact, freshly computed Gram matrix.
    """
    n = wt.shape[0]
    off = 0.0
    for sweep in range(1, max_sweeps + 1):
        g = wt @ wt.T
        # columns this far below the matrix scale are numerically zero;
        # their pair ratios are noise over noise and must not drive
        # rotations (rank-deficient inputs would never converge otherwise)
        floor = float(np.trace(g)) * 1e-28
        rotations = 0
        off = 0.0
        for p in range(n - 1):
            for q in range(p + 1, n):
                app = g[p, p]
                aqq = g[q, q]
                apq = g[p, q]
                if app <= floor or aqq <= floor:
                    continue
                denom = math.sqrt(app * aqq)
                if denom <= 0.0:
                    continue
                ratio = abs(apq) / denom
                if ratio > off:
                    off = ratio
                if ratio <= tol:
                    continue
                rotations += 1
                theta = (aqq - app) / (2.0 * apq)
                t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(1.0 + theta * theta))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c

                wp = wt[p].copy()
                wt[p] *= c
                wt[p] -= s * wt[q]
                wt[q] *= c
                wt[q] += s * wp

                vp = va[p].copy()
                va[p] *= c
                va[p] -= s * va[q]
                va[q] *= c
                va[q] += s * vp

                # congruence update of the tracked Gram matrix: rows then columns
                gp = g[p].copy()
                g[p] = c * gp - s * g[q]
                g[q] = s * gp + c * g[q]
                gcp = g[:, p].copy()
                g[:, p] = c * gcp - s * g[:, q]
                g[:, q] = s * gcp + c * g[:, q]
        if rotations == 0:
            return sweep, off, True
    return max_sweeps, off, False


def bm25_transform(data, indices, indptr, doc_len, idf, k1, b, avgdl):
    """Entry-wise BM25 reweighting of a CSR matrix.

    Each stored value f at (row i, column j) becomes
    f*(k1+1) / (f + k1*(1 - b + b*doc_len[i]/avgdl)) * idf[j].
    """
    row_lengths = np.diff(indptr)
    dl = np.repeat(doc_len, row_lengths)
    denom = data + k1 * (1.0 - b + b * dl / avgdl)
    return data * (k1 + 1.0) / denom * idf[indices]
