"""Golden checks against the bundled example corpus in data/.

These are dataset goldens: they pin the shipped files' counts, cleaning
tallies and query results. If the corpus is regenerated or edited, failures
here mean golden drift, not an engine defect.
"""

import numpy as np
import pytest

from remedyrank.corpus import build_matrix
from remedyrank.recommender import Query, recommend, search_symptoms
from remedyrank.weighting import compute_stats

BUNDLED_HASH = "8269e039b2d899f8165053dd3e4246240e09992580bc418a06820c9c92f21829"


class TestCorpusCounts:
    def test_rows_read_match_published_scale(self, bundled_corpus):
        report = bundled_corpus.report
        assert report.files["dia_t.csv"].rows_read == 1167
        assert report.files["sym_t.csv"].rows_read == 273

    def test_post_clean_counts(self, bundled_corpus):
        assert bundled_corpus.n_diseases == 1145
        assert bundled_corpus.n_symptoms == 272

    def test_cleaning_tallies(self, bundled_corpus):
        files = bundled_corpus.report.files
        assert files["dia_t.csv"].dropped == {"null_attribute": 22}
        assert files["sym_t.csv"].dropped == {"null_attribute": 1}
        weights = files["diffsydiw.csv"]
        assert weights.dropped == {"invalid_weight": 1, "negative_weight": 2,
                                   "null_attribute": 4, "unknown_id": 7}
        assert weights.delimiter_normalized == 6
        assert files["prec_t.csv"].dropped == {"null_attribute": 1, "unknown_id": 2}

    def test_content_hash_frozen(self, bundled_corpus):
        assert bundled_corpus.content_hash() == BUNDLED_HASH

    def test_matrix_shape_and_zero_rows(self, bundled_corpus):
        matrix = build_matrix(bundled_corpus)
        assert matrix.shape == (1145, 272)
        assert len(matrix.zero_row_indices()) == 3

    def test_stats_against_independent_scan(self, bundled_corpus):
        # recompute document count and lengths by a single pass over triples
        matrix = build_matrix(bundled_corpus)
        stats = compute_stats(matrix)
        assert stats.n_docs == 1145
        lengths = {}
        for t in bundled_corpus.triples:
            lengths[t.did] = lengths.get(t.did, 0.0) + t.wei
        expected = np.zeros(1145)
        for did, total in lengths.items():
            expected[bundled_corpus.disease_index[did]] = total
        assert np.allclose(stats.doc_lengths, expected, rtol=1e-9)
        assert stats.avg_doc_length == pytest.approx(expected.mean(), rel=1e-12)


class TestModelShapes:
    def test_default_rank_shapes(self, bundled_model):
        f = bundled_model.factorization
        assert f.u.shape == (1145, 50)
        assert f.s.shape == (50,)
        assert f.v.shape == (50, 272)


class TestGoldenQueries:
    def test_abdominal_pair(self, bundled_corpus, bundled_model):
        response = recommend(Query((1, 2)), bundled_model.factorization,
                             bundled_corpus, scheme="bm25",
                             corpus_hash=bundled_model.corpus_hash)
        by_name = {r.disease: r for r in response.results}
        assert "Ventral hernia" in by_name, "golden drift or ranking defect"
        assert "Diverticulosis" in by_name
        hernia = by_name["Ventral hernia"]
        assert any(t.startswith("Eating smaller meals may help prevent bloating")
                   for t in hernia.remedies)

    def test_unrelated_pair(self, bundled_corpus, bundled_model):
        response = recommend(Query((2, 81)), bundled_model.factorization,
                             bundled_corpus, scheme="bm25",
                             corpus_hash=bundled_model.corpus_hash)
        by_name = {r.disease: r for r in response.results}
        assert "Ventral hernia" in by_name
        assert "Vitiligo" in by_name
        assert any("Laparoscopic surgery" in t
                   for t in by_name["Ventral hernia"].remedies)
        assert any("Photodynamic therapy" in t
                   for t in by_name["Vitiligo"].remedies)

    def test_symptom_search(self, bundled_corpus):
        names = {r.syd: r.name for r in search_symptoms(bundled_corpus, "abdominal", 10)}
        assert names.get(1) == "Upper abdominal pain"
        assert names.get(2) == "Lower abdominal pain"


class TestDistanceContrast:
    def test_diagonal_far_below_offdiagonal(self, bundled_corpus, bundled_model):
        # the split-half distance matrices must show a clearly depressed
        # diagonal; absolute magnitudes scale with the number of shared
        # diseases, so the contrast is asserted as a ratio
        from remedyrank.evaluation import SplitSpec, sanity_check
        report = sanity_check(bundled_corpus, SplitSpec(seed=0),
                              full_model=bundled_model)
        for verdict in (report.verdict_full_vs_half, report.verdict_half_vs_half):
            assert verdict.mean_offdiag / verdict.mean_diag >= 4.0
