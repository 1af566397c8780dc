"""Shared fixtures: CSV writers, toy corpora, and the bundled dataset."""

from __future__ import annotations

import csv
from pathlib import Path

import numpy as np
import pytest

from remedyrank.corpus import Corpus, load_dataset_dir
from remedyrank.model import ModelConfig, build_model

DATA_DIR = Path(__file__).resolve().parent.parent / "data"


def write_csv(path: Path, header, rows):
    with open(path, "w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)


def write_dataset(directory: Path, symptoms, diseases, triples, remedies,
                  raw_weight_lines=None):
    """Write the four-file layout; raw_weight_lines appends literal lines
    to diffsydiw.csv (for malformed/dirty-row scenarios)."""
    directory.mkdir(parents=True, exist_ok=True)
    write_csv(directory / "sym_t.csv", ("syd", "symptom"), symptoms)
    write_csv(directory / "dia_t.csv", ("did", "diagnose"), diseases)
    write_csv(directory / "diffsydiw.csv", ("syd", "did", "wei"), triples)
    if raw_weight_lines:
        with open(directory / "diffsydiw.csv", "a", encoding="utf-8", newline="") as handle:
            for line in raw_weight_lines:
                handle.write(line + "\n")
    write_csv(directory / "prec_t.csv", ("did", "diagnose", "pid"), remedies)
    return directory


@pytest.fixture
def dataset_writer(tmp_path):
    def _write(symptoms, diseases, triples, remedies, raw_weight_lines=None, name="data"):
        return write_dataset(tmp_path / name, symptoms, diseases, triples, remedies,
                             raw_weight_lines)
    return _write


@pytest.fixture
def tiny_corpus(dataset_writer) -> Corpus:
    """2 symptoms x 2 diseases, 3 triples, 2 remedies, all valid."""
    path = dataset_writer(
        symptoms=[(1, "Headache"), (2, "Nausea")],
        diseases=[(10, "Migraine"), (20, "Food poisoning")],
        triples=[(1, 10, "5.0"), (2, 10, "2.0"), (2, 20, "4.0")],
        remedies=[(10, "Migraine", "Rest in a dark room"),
                  (20, "Food poisoning", "Oral rehydration")],
    )
    return load_dataset_dir(path)


def random_corpus(rng: np.random.Generator, m: int, n: int,
                  density: float = 0.5, with_remedies: bool = True) -> Corpus:
    """Random in-memory corpus; every disease gets at least one triple."""
    from remedyrank.corpus import (DiseaseRecord, RemedyRecord, SymptomRecord,
                                   WeightTriple)
    symptoms = [SymptomRecord(j + 1, f"symptom {j + 1}") for j in range(n)]
    diseases = [DiseaseRecord((i + 1) * 10, f"disease {(i + 1) * 10}") for i in range(m)]
    triples = []
    for i in range(m):
        cols = np.flatnonzero(rng.random(n) < density)
        if len(cols) == 0:
            cols = np.array([int(rng.integers(n))])
        for j in cols:
            triples.append(WeightTriple(int(j) + 1, (i + 1) * 10,
                                        float(np.round(rng.uniform(0.5, 9.5), 3))))
    remedies = []
    if with_remedies:
        remedies = [RemedyRecord(d.did, d.name, f"treatment for {d.name}") for d in diseases]
    return Corpus(symptoms, diseases, triples, remedies)


def clustered_corpus(rng, diseases_per_cluster, clusters, symptoms_per_cluster,
                     triples_per_disease):
    """Block-structured corpus: disease weights concentrate on the symptoms
    of their own cluster, which keeps split halves mutually consistent."""
    from remedyrank.corpus import DiseaseRecord, SymptomRecord, WeightTriple
    n = clusters * symptoms_per_cluster
    symptoms = [SymptomRecord(j + 1, f"s{j + 1}") for j in range(n)]
    diseases = []
    triples = []
    did = 0
    for c in range(clusters):
        base_cols = list(range(c * symptoms_per_cluster, (c + 1) * symptoms_per_cluster))
        for _ in range(diseases_per_cluster):
            did += 1
            diseases.append(DiseaseRecord(did, f"d{did}"))
            cols = list(rng.choice(base_cols, size=min(triples_per_disease, len(base_cols)),
                                   replace=False))
            for j in cols:
                triples.append(WeightTriple(int(j) + 1, did, float(rng.integers(5, 30))))
    return Corpus(symptoms, diseases, triples, [])


@pytest.fixture
def rng():
    return np.random.default_rng(20250810)


def _require_bundled():
    if not DATA_DIR.is_dir():
        pytest.skip("bundled dataset not present")
    return DATA_DIR


@pytest.fixture(scope="session")
def bundled_corpus() -> Corpus:
    if not DATA_DIR.is_dir():
        pytest.skip("bundled dataset not present")
    return load_dataset_dir(DATA_DIR)


@pytest.fixture(scope="session")
def bundled_model(bundled_corpus):
    return build_model(bundled_corpus, ModelConfig())
