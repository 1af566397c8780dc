#!/usr/bin/env python3
"""Benchmark the compiled kernels against the numpy fallback.

Times the two hot paths on corpus-scale inputs: the one-sided Jacobi SVD
sweep and the BM25 entry transform. Usage:

    python3 benchmarks/bench_kernels.py [--m 1145] [--n 272] [--repeat 3]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from remedyrank._kernels import available_backends, get_backend
from remedyrank.factorization import truncated_svd
from remedyrank.sparse import SparseWeightMatrix
from remedyrank.weighting import bm25_idf


def synthetic_matrix(rng, m, n, density=0.12):
    dense = np.where(rng.random((m, n)) < density, rng.uniform(1, 30, (m, n)), 0.0)
    if not dense.any():
        dense[0, 0] = 1.0
    rows, cols = np.nonzero(dense)
    return SparseWeightMatrix.from_entries(m, n, rows, cols, dense[rows, cols])


def time_call(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--m", type=int, default=1145)
    parser.add_argument("--n", type=int, default=272)
    parser.add_argument("--rank", type=int, default=50)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    rng = np.random.default_rng(0)
    matrix = synthetic_matrix(rng, args.m, args.n)
    doc_len = matrix.row_sums()
    idf = np.ascontiguousarray(bm25_idf(matrix.m, matrix.positive_column_counts()))
    avgdl = float(doc_len.mean())

    backends = available_backends()
    print(f"matrix {args.m}x{args.n}, nnz {matrix.nnz}, rank {args.rank}, "
          f"best of {args.repeat}")
    print(f"{'kernel':<16} " + " ".join(f"{b:>12}" for b in backends) + "  speedup")

    times = {}
    for name in backends:
        backend = get_backend(name)
        times[name] = time_call(
            lambda: truncated_svd(matrix, args.rank, backend=backend), args.repeat)
    line = f"{'jacobi_svd':<16} " + " ".join(f"{times[b]:>11.3f}s" for b in backends)
    if len(backends) == 2:
        line += f"  {times['fallback'] / times['compiled']:>6.1f}x"
    print(line)

    times = {}
    for name in backends:
        backend = get_backend(name)
        times[name] = time_call(
            lambda: backend.bm25_transform(matrix.data, matrix.indices, matrix.indptr,
                                           doc_len, idf, 1.2, 0.75, avgdl),
            max(args.repeat, 10))
    line = f"{'bm25_transform':<16} " + " ".join(f"{times[b] * 1e3:>10.2f}ms" for b in backends)
    if len(backends) == 2:
        line += f"  {times['fallback'] / times['compiled']:>6.1f}x"
    print(line)


if __name__ == "__main__":
    main()
