"""Relevance weighting of the raw weight matrix: BM25 (default) or TF-IDF.

Both schemes treat each disease row as a document and each symptom column as
a term. The raw weight plays the role of the term frequency, and the
document length of a disease is the sum of its raw weights. Transformations
are entry-wise: the sparsity pattern is preserved and absent entries stay
zero.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .sparse import SparseWeightMatrix

SCHEMES = ("bm25", "tfidf", "raw")


class WeightingError(Exception):
    """Raised when a weighting scheme cannot be applied (e.g. empty matrix)."""


@dataclass(frozen=True)
class Bm25Params:
    """Saturation and length-normalization parameters.

    k1 controls how quickly repeated evidence saturates (the transformed
    value is bounded by (k1+1) * idf); b in [0, 1] controls how strongly
    long disease rows are penalized. idf_floor clamps per-symptom IDF at
    zero, trading fidelity to the signed formula for non-negative outputs.
    """

    k1: float = 1.2
    b: float = 0.75
    idf_floor: bool = False

    def __post_init__(self):
        if self.k1 < 0:
            raise ValueError(f"k1 must be >= 0, got {self.k1}")
        if not 0.0 <= self.b <= 1.0:
            raise ValueError(f"b must be in [0, 1], got {self.b}")


@dataclass(frozen=True)
class CorpusStats:
    """Per-corpus quantities feeding the weighting formulas."""

    n_docs: int                    # number of diseases
    positive_doc_counts: np.ndarray  # per symptom: diseases with positive weight
    doc_lengths: np.ndarray        # per disease: sum of raw weights
    avg_doc_length: float


@dataclass(frozen=True)
class WeightedMatrix:
    """A reweighted matrix plus the scheme that produced it."""

    csr: SparseWeightMatrix
    scheme: str
    k1: float | None = None
    b: float | None = None
    idf_floor: bool = False

    @property
    def shape(self):
        return self.csr.shape


def compute_stats(matrix: SparseWeightMatrix) -> CorpusStats:
    """Document counts, lengths and per-symptom positive-document counts."""
    if matrix.nnz == 0:
        raise WeightingError("all-zero matrix: average document length is undefined")
    doc_lengths = matrix.row_sums()
    return CorpusStats(
        n_docs=matrix.m,
        positive_doc_counts=matrix.positive_column_counts(),
        doc_lengths=doc_lengths,
        avg_doc_length=float(doc_lengths.mean()),
    )


def bm25_idf(n_docs: int, n_t: np.ndarray, floor: bool = False) -> np.ndarray:
    """Probabilistic IDF: ln((N - n_t + 0.5) / (n_t + 0.5)).

    Negative for terms present in more than half the documents; the optional
    floor clamps those at zero.
    """
    idf = np.log((n_docs - n_t + 0.5) / (n_t + 0.5))
    return np.maximum(idf, 0.0) if floor else idf


def bm25_weight(matrix: SparseWeightMatrix, params: Bm25Params = Bm25Params()) -> WeightedMatrix:
    """Entry-wise BM25 reweighting.

    f -> f*(k1+1) / (f + k1*(1 - b + b*|D|/avgdl)) * idf, with natural-log
    IDF. Values may be negative unless params.idf_floor is set.
    """
    stats = compute_stats(matrix)
    idf = bm25_idf(stats.n_docs, stats.positive_doc_counts, params.idf_floor)
    data = _kernels.bm25_transform(
        matrix.data, matrix.indices, matrix.indptr,
        stats.doc_lengths, np.ascontiguousarray(idf),
        params.k1, params.b, stats.avg_doc_length,
    )
    return WeightedMatrix(matrix.with_data(data), "bm25",
                          k1=params.k1, b=params.b, idf_floor=params.idf_floor)


def tfidf_weight(matrix: SparseWeightMatrix) -> WeightedMatrix:
    """Entry-wise TF-IDF: f -> f * ln(N / n_t), natural log."""
    stats = compute_stats(matrix)
    # columns with stored entries always have n_t >= 1 when weights are
    # positive; guard anyway so an explicit zero entry cannot divide by zero
    n_t = np.maximum(stats.positive_doc_counts, 1)
    data = matrix.data * np.log(stats.n_docs / n_t)[matrix.indices]
    return WeightedMatrix(matrix.with_data(data), "tfidf")


def raw_weight(matrix: SparseWeightMatrix) -> WeightedMatrix:
    """Pass-through scheme: keep the aggregated raw weights."""
    if matrix.nnz == 0:
        raise WeightingError("all-zero matrix")
    return WeightedMatrix(matrix.with_data(matrix.data.copy()), "raw")


def apply_scheme(matrix: SparseWeightMatrix, scheme: str,
                 params: Bm25Params = Bm25Params()) -> WeightedMatrix:
    if scheme == "bm25":
        return bm25_weight(matrix, params)
    if scheme == "tfidf":
        return tfidf_weight(matrix)
    if scheme == "raw":
        return raw_weight(matrix)
    raise ValueError(f"unknown weighting scheme {scheme!r}; expected one of {SCHEMES}")


def bm25_entry(f: float, doc_len: float, avgdl: float, n_docs: int, n_t: int,
               params: Bm25Params = Bm25Params()) -> float:
    """Scalar reference form of the BM25 entry formula (used for spot checks)."""
    idf = math.log((n_docs - n_t + 0.5) / (n_t + 0.5))
    if params.idf_floor:
        idf = max(idf, 0.0)
    tf = f * (params.k1 + 1.0) / (f + params.k1 * (1.0 - params.b + params.b * doc_len / avgdl))
    return tf * idf
