"""Compressed sparse row container for the disease x symptom weight matrix.

Rows are diseases, columns are symptoms. An absent entry means weight zero;
explicit zeros are never stored. Instances are treated as immutable after
construction and are safe to share across threads.
"""

from __future__ import annotations

import numpy as np


class SparseWeightMatrix:
    """CSR matrix with float64 values and int64 index arrays."""

    __slots__ = ("m", "n", "indptr", "indices", "data")

    def __init__(self, m: int, n: int, indptr, indices, data):
        if m <= 0 or n <= 0:
            raise ValueError(f"matrix shape must be positive, got {m}x{n}")
        self.m = int(m)
        self.n = int(n)
        self.indptr = np.ascontiguousarray(indptr, dtype=np.int64)
        self.indices = np.ascontiguousarray(indices, dtype=np.int64)
        self.data = np.ascontiguousarray(data, dtype=np.float64)
        if self.indptr.shape != (self.m + 1,):
            raise ValueError("indptr length must be m + 1")
        if self.indptr[0] != 0 or self.indptr[-1] != len(self.data):
            raise ValueError("indptr endpoints inconsistent with data")
        if len(self.indices) != len(self.data):
            raise ValueError("indices and data lengths differ")
        if len(self.indices) and (self.indices.min() < 0 or self.indices.max() >= self.n):
            raise ValueError("column index out of range")

    @classmethod
    def from_entries(cls, m, n, rows, cols, values) -> "SparseWeightMatrix":
        """Build from coordinate entries, summing duplicate (row, col) pairs.

        Entries that sum to exactly zero are dropped so the stored pattern
        keeps the absent-means-zero convention.
        """
        rows = np.asarray(rows, dtype=np.int64)
        cols = np.asarray(cols, dtype=np.int64)
        values = np.asarray(values, dtype=np.float64)
        if not (len(rows) == len(cols) == len(values)):
            raise ValueError("rows, cols and values must have equal length")
        if len(rows) == 0:
            return cls(m, n, np.zeros(m + 1, dtype=np.int64), [], [])
        if rows.min() < 0 or rows.max() >= m:
            raise ValueError("row index out of range")
        if cols.min() < 0 or cols.max() >= n:
            raise ValueError("column index out of range")

        order = np.lexsort((cols, rows))
        rows, cols, values = rows[order], cols[order], values[order]
        # collapse duplicates: group boundaries where (row, col) changes
        new_group = np.empty(len(rows), dtype=bool)
        new_group[0] = True
        new_group[1:] = (rows[1:] != rows[:-1]) | (cols[1:] != cols[:-1])
        starts = np.flatnonzero(new_group)
        summed = np.add.reduceat(values, starts)
        rows, cols = rows[starts], cols[starts]

        keep = summed != 0.0
        rows, cols, summed = rows[keep], cols[keep], summed[keep]
        indptr = np.zeros(m + 1, dtype=np.int64)
        np.add.at(indptr, rows + 1, 1)
        np.cumsum(indptr, out=indptr)
        return cls(m, n, indptr, cols, summed)

    @property
    def nnz(self) -> int:
        return len(self.data)

    @property
    def density(self) -> float:
        return self.nnz / (self.m * self.n)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.m, self.n)

    def to_dense(self) -> np.ndarray:
        out = np.zeros((self.m, self.n))
        for i in range(self.m):
            lo, hi = self.indptr[i], self.indptr[i + 1]
            out[i, self.indices[lo:hi]] = self.data[lo:hi]
        return out

    def row_sums(self) -> np.ndarray:
        """Sum of stored values per row (the raw document length)."""
        out = np.zeros(self.m)
        np.add.at(out, np.repeat(np.arange(self.m), np.diff(self.indptr)), self.data)
        return out

    def positive_column_counts(self) -> np.ndarray:
        """Number of rows with a strictly positive entry, per column."""
        pos = self.data > 0
        return np.bincount(self.indices[pos], minlength=self.n).astype(np.int64)

    def zero_row_indices(self) -> np.ndarray:
        return np.flatnonzero(np.diff(self.indptr) == 0)

    def total(self) -> float:
        return float(self.data.sum())

    def get(self, i: int, j: int) -> float:
        lo, hi = self.indptr[i], self.indptr[i + 1]
        hit = np.flatnonzero(self.indices[lo:hi] == j)
        return float(self.data[lo + hit[0]]) if len(hit) else 0.0

    def with_data(self, data) -> "SparseWeightMatrix":
        """Same sparsity pattern, new values (used by the weighting schemes)."""
        data = np.asarray(data, dtype=np.float64)
        if data.shape != self.data.shape:
            raise ValueError("replacement data must match the stored pattern")
        return SparseWeightMatrix(self.m, self.n, self.indptr.copy(), self.indices.copy(), data)

    def scaled(self, alpha: float) -> "SparseWeightMatrix":
        return self.with_data(self.data * float(alpha))
