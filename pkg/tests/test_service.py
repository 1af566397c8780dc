"""HTTP API behavior over a small in-memory model."""

import pytest

pytest.importorskip("fastapi")
from fastapi.testclient import TestClient

from remedyrank.model import ModelConfig, build_model
from remedyrank.service import LoadedModel, ModelHandle, create_app


@pytest.fixture
def abdominal_corpus(dataset_writer):
    from remedyrank.corpus import load_dataset_dir
    path = dataset_writer(
        symptoms=[(1, "Upper abdominal pain"), (2, "Lower abdominal pain"),
                  (3, "Rash"), (4, "Fever")],
        diseases=[(10, "Ventral hernia"), (20, "Diverticulosis"), (30, "Vitiligo")],
        triples=[(1, 10, "9.0"), (2, 10, "8.0"), (1, 20, "6.0"), (2, 20, "7.0"),
                 (3, 30, "9.0"), (4, 30, "2.0")],
        remedies=[(10, "Ventral hernia", "Eating smaller meals may help."),
                  (10, "Ventral hernia", "Laparoscopic surgery."),
                  (30, "Vitiligo", "Photodynamic therapy.")],
    )
    return load_dataset_dir(path)


@pytest.fixture
def client(abdominal_corpus):
    bundle = build_model(abdominal_corpus, ModelConfig(rank=3))
    handle = ModelHandle(LoadedModel(abdominal_corpus, bundle))
    return TestClient(create_app(handle))


@pytest.fixture
def empty_client():
    return TestClient(create_app(ModelHandle()))


class TestHealth:
    def test_ready(self, client):
        body = client.get("/health").json()
        assert body["status"] == "ready"
        assert body["corpus_counts"]["diseases"] == 3
        assert len(body["model_hash"]) == 64

    def test_empty_state(self, empty_client):
        body = empty_client.get("/health").json()
        assert body == {"status": "empty", "model_hash": None, "corpus_counts": None}

    def test_swap_changes_hash(self, abdominal_corpus):
        bundle = build_model(abdominal_corpus, ModelConfig(rank=3))
        handle = ModelHandle(LoadedModel(abdominal_corpus, bundle))
        app_client = TestClient(create_app(handle))
        first = app_client.get("/health").json()["model_hash"]
        smaller = abdominal_corpus.with_triples(abdominal_corpus.triples[:4])
        handle.swap(LoadedModel(smaller, build_model(smaller, ModelConfig(rank=2))))
        second = app_client.get("/health").json()["model_hash"]
        assert first != second


class TestSymptoms:
    def test_substring_search(self, client):
        body = client.get("/symptoms", params={"q": "abdominal"}).json()
        names = [r["name"] for r in body]
        assert "Upper abdominal pain" in names
        assert "Lower abdominal pain" in names
        assert all(set(r) == {"syd", "name"} for r in body)

    def test_no_match(self, client):
        assert client.get("/symptoms", params={"q": "zzzz"}).json() == []

    def test_limit(self, client):
        assert len(client.get("/symptoms", params={"q": "", "limit": 2}).json()) == 2

    def test_before_model_load(self, empty_client):
        response = empty_client.get("/symptoms", params={"q": "a"})
        assert response.status_code == 503
        assert response.json()["error"]["code"] == "model_not_loaded"


class TestRecommend:
    def test_basic_query(self, client):
        response = client.post("/recommend", json={"symptom_ids": [1, 2]})
        assert response.status_code == 200
        body = response.json()
        names = [r["disease"] for r in body["results"]]
        assert "Ventral hernia" in names
        assert "Diverticulosis" in names
        hernia = next(r for r in body["results"] if r["disease"] == "Ventral hernia")
        assert hernia["remedies"] == ["Eating smaller meals may help.",
                                      "Laparoscopic surgery."]
        assert body["model"]["scheme"] == "bm25"

    def test_empty_list_400(self, client):
        response = client.post("/recommend", json={"symptom_ids": []})
        assert response.status_code == 400
        assert response.json()["error"]["code"] == "empty_query"

    def test_unknown_ids_listed(self, client):
        response = client.post("/recommend", json={"symptom_ids": [1, 999, 777]})
        assert response.status_code == 400
        body = response.json()
        assert body["error"]["code"] == "unknown_symptom_ids"
        assert body["error"]["details"]["unknown_ids"] == [777, 999]

    def test_n_one(self, client):
        body = client.post("/recommend", json={"symptom_ids": [1], "n": 1}).json()
        assert len(body["results"]) == 1

    def test_six_decimal_scores(self, client):
        body = client.post("/recommend", json={"symptom_ids": [1, 2]}).json()
        for result in body["results"]:
            assert result["score"] == round(result["score"], 6)

    def test_replay_byte_identical(self, client):
        first = client.post("/recommend", json={"symptom_ids": [1, 2]})
        second = client.post("/recommend", json={"symptom_ids": [1, 2]})
        assert first.content == second.content

    def test_no_treatment_marker(self, client):
        body = client.post("/recommend", json={"symptom_ids": [1, 2], "n": 3}).json()
        flagged = {r["disease"]: r["no_recorded_treatment"] for r in body["results"]}
        assert flagged["Diverticulosis"] is True
        assert flagged["Ventral hernia"] is False
