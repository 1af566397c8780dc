"""Weighting schemes against hand values, the naive oracle, and properties."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import naive_bm25, naive_tfidf
from remedyrank.sparse import SparseWeightMatrix
from remedyrank.weighting import (Bm25Params, CorpusStats, WeightingError,
                                  apply_scheme, bm25_weight, compute_stats,
                                  tfidf_weight)


def csr_from_dense(dense):
    dense = np.asarray(dense, dtype=np.float64)
    rows, cols = np.nonzero(dense)
    return SparseWeightMatrix.from_entries(dense.shape[0], dense.shape[1],
                                           rows, cols, dense[rows, cols])


small_dense = st.integers(1, 5).flatmap(
    lambda m: st.integers(1, 5).flatmap(
        lambda n: st.lists(
            st.lists(st.one_of(st.just(0.0), st.floats(0.01, 50.0)), min_size=n, max_size=n),
            min_size=m, max_size=m,
        )
    )
).map(np.array).filter(lambda a: a.sum() > 0)


class TestComputeStats:
    def test_one_by_one(self):
        stats = compute_stats(csr_from_dense([[2.0]]))
        assert stats.n_docs == 1
        assert list(stats.positive_doc_counts) == [1]
        assert list(stats.doc_lengths) == [2.0]
        assert stats.avg_doc_length == 2.0

    def test_two_by_two(self):
        stats = compute_stats(csr_from_dense([[1.0, 0.0], [1.0, 1.0]]))
        assert list(stats.positive_doc_counts) == [2, 1]
        assert list(stats.doc_lengths) == [1.0, 2.0]
        assert stats.avg_doc_length == 1.5

    def test_all_zero_matrix_errors(self):
        empty = SparseWeightMatrix(2, 2, [0, 0, 0], [], [])
        with pytest.raises(WeightingError):
            compute_stats(empty)

    def test_independent_scan_agrees(self, rng):
        dense = np.where(rng.random((17, 11)) < 0.3, rng.uniform(0.5, 8, (17, 11)), 0.0)
        if not dense.any():
            dense[0, 0] = 1.0
        stats = compute_stats(csr_from_dense(dense))
        n_t = [int(sum(1 for i in range(17) if dense[i, j] > 0)) for j in range(11)]
        doc_len = [math.fsum(dense[i]) for i in range(17)]
        assert list(stats.positive_doc_counts) == n_t
        assert np.allclose(stats.doc_lengths, doc_len, rtol=1e-12)
        assert stats.avg_doc_length == pytest.approx(sum(doc_len) / 17, rel=1e-12)


class TestBm25:
    def test_single_entry_negative_idf(self):
        # N=1, n_t=1, f=1, |D|=avgdl: tf part is 1, idf = ln(0.5/1.5)
        wm = bm25_weight(csr_from_dense([[1.0]]))
        assert wm.csr.get(0, 0) == pytest.approx(-1.0986122886681098, abs=1e-12)

    def test_idf_floor_clamps(self):
        wm = bm25_weight(csr_from_dense([[1.0]]), Bm25Params(idf_floor=True))
        assert wm.csr.get(0, 0) == 0.0

    def test_b_zero_ignores_document_length(self):
        # same f for one symptom, very different row sums
        dense = [[2.0, 30.0, 0.0], [2.0, 0.0, 1.0]]
        wm = bm25_weight(csr_from_dense(dense), Bm25Params(b=0.0))
        assert wm.csr.get(0, 0) == pytest.approx(wm.csr.get(1, 0), rel=1e-15)

    def test_saturation_approaches_ceiling(self):
        dense = np.zeros((10, 2))
        dense[0, 0] = 1000.0
        dense[:, 1] = 1.0     # second column keeps avgdl finite everywhere
        wm = bm25_weight(csr_from_dense(dense), Bm25Params(k1=1.2, b=0.0))
        idf = math.log((10 - 1 + 0.5) / 1.5)
        tf_part = wm.csr.get(0, 0) / idf
        assert tf_part == pytest.approx(2.1973631642029563, rel=1e-12)
        assert tf_part < 1.2 + 1.0

    def test_matches_naive_oracle(self, rng):
        for _ in range(25):
            m, n = rng.integers(1, 6, size=2)
            dense = np.where(rng.random((m, n)) < 0.6, rng.uniform(0.1, 20, (m, n)), 0.0)
            if not dense.any():
                continue
            for floor in (False, True):
                wm = bm25_weight(csr_from_dense(dense), Bm25Params(idf_floor=floor))
                assert np.max(np.abs(wm.csr.to_dense() - naive_bm25(dense, idf_floor=floor))) <= 1e-12

    @settings(max_examples=60, deadline=None)
    @given(small_dense, st.floats(0.0, 3.0), st.floats(0.0, 1.0))
    def test_oracle_equivalence_property(self, dense, k1, b):
        wm = bm25_weight(csr_from_dense(dense), Bm25Params(k1=k1, b=b))
        assert np.max(np.abs(wm.csr.to_dense() - naive_bm25(dense, k1=k1, b=b))) <= 1e-12

    def test_sparsity_not_expanded(self, rng):
        dense = np.where(rng.random((6, 6)) < 0.4, rng.uniform(0.5, 5, (6, 6)), 0.0)
        dense[0, 0] = 1.0
        wm = bm25_weight(csr_from_dense(dense))
        assert np.all((wm.csr.to_dense() != 0) <= (dense != 0))

    def test_monotone_in_f_and_bounded(self):
        # one disease per f value, b=0 so rows are independent of length
        fs = [0.5, 1.0, 2.0, 5.0, 20.0, 400.0]
        dense = np.zeros((len(fs) + 9, 2))
        for i, f in enumerate(fs):
            dense[i, 0] = f
        dense[:, 1] = 1.0
        wm = bm25_weight(csr_from_dense(dense), Bm25Params(k1=1.5, b=0.0))
        idf = math.log((dense.shape[0] - len(fs) + 0.5) / (len(fs) + 0.5))
        tf = [wm.csr.get(i, 0) / idf for i in range(len(fs))]
        assert all(tf[i] < tf[i + 1] for i in range(len(fs) - 1))
        assert all(t < 2.5 for t in tf)

    def test_idf_anti_monotone_in_doc_count(self):
        # grow n_t for a fixed f and |D|: weighted value must not increase
        values = []
        for n_t in range(1, 8):
            dense = np.zeros((8, 8))
            for i in range(n_t):
                dense[i, 0] = 3.0
            for i in range(8):
                dense[i, 7] = 3.0   # keeps every |D| identical
            wm = bm25_weight(csr_from_dense(dense))
            values.append(wm.csr.get(0, 0))
        assert all(a >= b for a, b in zip(values, values[1:]))

    def test_invalid_params_rejected(self):
        with pytest.raises(ValueError):
            Bm25Params(k1=-0.1)
        with pytest.raises(ValueError):
            Bm25Params(b=1.5)


class TestTfidf:
    def test_everywhere_symptom_scores_zero(self):
        dense = np.ones((4, 2))
        wm = tfidf_weight(csr_from_dense(dense))
        assert np.all(wm.csr.to_dense() == 0.0)

    def test_frozen_value(self):
        dense = np.zeros((10, 2))
        dense[0, 0] = 2.0
        dense[:, 1] = 1.0
        wm = tfidf_weight(csr_from_dense(dense))
        assert wm.csr.get(0, 0) == pytest.approx(4.605170185988092, abs=1e-12)

    def test_matches_naive_oracle(self, rng):
        for _ in range(25):
            m, n = rng.integers(1, 6, size=2)
            dense = np.where(rng.random((m, n)) < 0.6, rng.uniform(0.1, 20, (m, n)), 0.0)
            if not dense.any():
                continue
            wm = tfidf_weight(csr_from_dense(dense))
            assert np.max(np.abs(wm.csr.to_dense() - naive_tfidf(dense))) <= 1e-12


class TestApplyScheme:
    def test_raw_is_identity(self, rng):
        dense = np.where(rng.random((5, 4)) < 0.5, rng.uniform(1, 9, (5, 4)), 0.0)
        dense[0, 0] = 2.0
        wm = apply_scheme(csr_from_dense(dense), "raw")
        assert wm.scheme == "raw"
        assert np.array_equal(wm.csr.to_dense(), dense)

    def test_scheme_tags(self):
        matrix = csr_from_dense([[1.0, 2.0]])
        assert apply_scheme(matrix, "bm25").scheme == "bm25"
        assert apply_scheme(matrix, "tfidf").scheme == "tfidf"
        with pytest.raises(ValueError):
            apply_scheme(matrix, "bm42")

    def test_kernel_backends_agree(self, rng):
        from remedyrank._kernels import available_backends, get_backend
        if "compiled" not in available_backends():
            pytest.skip("compiled kernels not built")
        dense = np.where(rng.random((40, 17)) < 0.3, rng.uniform(0.1, 30, (40, 17)), 0.0)
        dense[0, 0] = 1.0
        matrix = csr_from_dense(dense)
        stats = compute_stats(matrix)
        from remedyrank.weighting import bm25_idf
        idf = bm25_idf(stats.n_docs, stats.positive_doc_counts)
        args = (matrix.data, matrix.indices, matrix.indptr, stats.doc_lengths,
                np.ascontiguousarray(idf), 1.2, 0.75, stats.avg_doc_length)
        compiled = get_backend("compiled").bm25_transform(*args)
        fallback = get_backend("fallback").bm25_transform(*args)
        assert np.max(np.abs(compiled - fallback)) <= 1e-13
