"""Truncated SVD of the weighted matrix and the latent vectors it defines.

The factorization is R ~= U @ diag(S) @ V with U of shape (m, r), S the
non-increasing singular values and V of shape (r, n): rows of V are latent
dimensions, columns of V are symptoms. Disease latent vectors are the rows
of U scaled by S (so they equal R @ V.T exactly); symptom latent vectors
are the columns of V, unscaled.

The default algorithm is a deterministic one-sided Jacobi SVD (cyclic
Hestenes rotations), exact to working precision at this corpus scale. A
seeded randomized subspace-iteration path is available for larger inputs.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .sparse import SparseWeightMatrix
from .weighting import WeightedMatrix

DEFAULT_RANK = 50
MAX_SWEEPS = 300
SWEEP_TOL = 1e-13
RANDOMIZED_OVERSAMPLE = 10
RANDOMIZED_POWER_ITERS = 4

SVD_METHODS = ("dense", "randomized")


class FactorizationError(Exception):
    pass


class ConvergenceError(FactorizationError):
    """Jacobi sweeps hit the cap; carries the residual that was reached."""

    def __init__(self, sweeps: int, residual: float):
        self.sweeps = sweeps
        self.residual = residual
        super().__init__(f"no convergence after {sweeps} sweeps "
                         f"(max off-diagonal ratio {residual:.3e})")


@dataclass(frozen=True, eq=False)
class Factorization:
    """Rank-r truncated SVD triplet plus build metadata."""

    u: np.ndarray          # (m, r)
    s: np.ndarray          # (r,)
    v: np.ndarray          # (r, n)
    method: str = "dense"
    seed: int | None = None
    sweeps: int = 0

    @property
    def rank(self) -> int:
        return len(self.s)

    @property
    def m(self) -> int:
        return self.u.shape[0]

    @property
    def n(self) -> int:
        return self.v.shape[1]

    def disease_latents(self) -> np.ndarray:
        """Rows of U scaled by the singular values, one row per disease."""
        return self.u * self.s

    def symptom_latent(self, col: int) -> np.ndarray:
        return self.v[:, col]

    def eligible_rows(self) -> np.ndarray:
        """Boolean mask of diseases with a nonzero latent vector.

        All-zero input rows stay exactly zero through the factorization and
        are flagged ineligible. The mask is computed on U * S, not U alone:
        orthonormal completion can place entries in U columns whose singular
        value is zero, and those contribute nothing to the latent vector.
        """
        return np.any(self.u * self.s != 0.0, axis=1)

    def reconstruct(self) -> np.ndarray:
        return (self.u * self.s) @ self.v


def _as_dense(matrix) -> np.ndarray:
    if isinstance(matrix, WeightedMatrix):
        return matrix.csr.to_dense()
    if isinstance(matrix, SparseWeightMatrix):
        return matrix.to_dense()
    return np.array(matrix, dtype=np.float64)


def _complete_basis(u: np.ndarray, start: int) -> None:
    """Fill columns start..r-1 of u with a deterministic orthonormal extension.

    Walks the standard basis, projects out the existing columns and keeps
    candidates whose residual is comfortably large. Needed when the
    requested rank exceeds the numerical rank (zero singular values leave
    their left vectors undefined).
    """
    m, r = u.shape
    col = start
    for cand in range(m):
        if col >= r:
            return
        vec = np.zeros(m)
        vec[cand] = 1.0
        vec -= u[:, :col] @ (u[:, :col].T @ vec)
        norm = np.linalg.norm(vec)
        if norm > 0.5:
            u[:, col] = vec / norm
            col += 1
    if col < r:
        raise FactorizationError("could not complete an orthonormal basis")


def _dense_svd(a: np.ndarray, backend=None):
    """Full economy SVD by one-sided Jacobi. Returns (u, s, vt, sweeps)."""
    kernel = (backend or _kernels).jacobi_sweeps
    m, n = a.shape
    if m < n:
        u, s, vt, sweeps = _dense_svd(a.T, backend)
        return vt.T, s, u.T, sweeps

    wt = np.ascontiguousarray(a.T)          # row j of wt = column j of a
    va = np.eye(n)
    sweeps, off, converged = kernel(wt, va, SWEEP_TOL, MAX_SWEEPS)
    if not converged:
        raise ConvergenceError(sweeps, off)

    norms = np.sqrt(np.einsum("ij,ij->i", wt, wt))
    order = np.argsort(-norms, kind="stable")
    s = norms[order]
    vt = va[order]

    u = np.zeros((m, n))
    cutoff = s[0] * 1e-12 if s[0] > 0 else 0.0
    numerical_rank = int(np.sum(s > cutoff))
    if numerical_rank:
        u[:, :numerical_rank] = wt[order[:numerical_rank]].T / s[:numerical_rank]
    _complete_basis(u, numerical_rank)
    return u, s, vt, sweeps


def _randomized_svd(a: np.ndarray, r: int, seed: int, backend=None):
    """Seeded Gaussian sketch + power iterations, small SVD via Jacobi."""
    m, n = a.shape
    rng = np.random.default_rng(seed)
    sketch = min(r + RANDOMIZED_OVERSAMPLE, min(m, n))
    omega = rng.standard_normal((n, sketch))
    q, _ = np.linalg.qr(a @ omega)
    for _ in range(RANDOMIZED_POWER_ITERS):
        z, _ = np.linalg.qr(a.T @ q)
        q, _ = np.linalg.qr(a @ z)
    b = q.T @ a
    ub, s, vt, sweeps = _dense_svd(b, backend)
    return q @ ub, s, vt, sweeps


def truncated_svd(matrix, r: int, method: str = "dense",
                  seed: int = 0, backend=None) -> Factorization:
    """Top-r singular triplets of the (weighted) matrix.

    Args:
        matrix: WeightedMatrix, SparseWeightMatrix or dense array.
        r: truncation rank, 1 <= r <= min(m, n).
        method: "dense" (deterministic Jacobi) or "randomized" (seeded
            subspace iteration; accurate when the spectrum decays).
        seed: RNG seed for the randomized method.
        backend: kernel backend override (tests and benchmarks).

    Raises FactorizationError for a rank out of range or an all-zero input,
    ConvergenceError if the sweep cap is hit.
    """
    a = _as_dense(matrix)
    m, n = a.shape
    if not 1 <= r <= min(m, n):
        raise FactorizationError(f"rank {r} out of range for a {m}x{n} matrix")
    if not np.any(a):
        raise FactorizationError("matrix has no nonzero entries")
    if method == "dense":
        u, s, vt, sweeps = _dense_svd(a, backend)
    elif method == "randomized":
        u, s, vt, sweeps = _randomized_svd(a, r, seed, backend)
    else:
        raise ValueError(f"unknown SVD method {method!r}; expected one of {SVD_METHODS}")
    return Factorization(
        u=np.ascontiguousarray(u[:, :r]),
        s=np.ascontiguousarray(s[:r]),
        v=np.ascontiguousarray(vt[:r]),
        method=method,
        seed=seed if method == "randomized" else None,
        sweeps=sweeps,
    )


def disease_latents(f: Factorization) -> np.ndarray:
    """Module-level alias for Factorization.disease_latents()."""
    return f.disease_latents()
