"""Model quality protocols: split-half sanity testing and regression checks.

The sanity test splits each disease's weight triples into two halves,
trains a model per half plus one on the full corpus, and compares the
disease-similarity profiles: entry (i, j) of a comparison matrix is the
Euclidean distance between disease i's similarity row under one model and
disease j's row under the other. Aligned models show a near-zero diagonal
against off-diagonal values several times larger.

The regression check confirms the trained model reproduces the strongest
associations in its own training data: queries sampled from a disease's own
symptoms should rank the diseases that carry the most raw weight for those
symptoms.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .corpus import Corpus, WeightTriple, build_matrix
from .model import ModelBundle, ModelConfig, build_model
from .recommender import Query, recommend

DEFAULT_SANITY_THRESHOLD = 0.25
DEFAULT_REGRESSION_SAMPLE = 100
DEFAULT_MIN_MEAN_HITS_FRACTION = 0.75


class EvaluationError(Exception):
    pass


@dataclass(frozen=True)
class SplitSpec:
    """Seeded per-disease stratified halving of the weight triples."""

    seed: int = 0


@dataclass(frozen=True)
class SplitHalves:
    half_a: Corpus
    half_b: Corpus
    single_sided_dids: tuple[int, ...]   # diseases with one triple (all in half A)


def split_half(corpus: Corpus, spec: SplitSpec = SplitSpec()) -> SplitHalves:
    """Partition the triples so each disease's evidence is balanced.

    Per disease, the triples are shuffled with the seeded RNG and assigned
    alternately to the halves starting with half A. Both halves share the
    full symptom/disease/remedy tables, so row and column indices line up
    across the resulting models. Deterministic for a fixed seed.
    """
    per_disease: dict[int, list[WeightTriple]] = {}
    for t in corpus.triples:
        per_disease.setdefault(t.did, []).append(t)
    if not any(len(ts) >= 2 for ts in per_disease.values()):
        raise EvaluationError("corpus has no disease with two or more triples; cannot split")

    rng = np.random.default_rng(spec.seed)
    a: list[WeightTriple] = []
    b: list[WeightTriple] = []
    single_sided: list[int] = []
    for did in sorted(per_disease):
        triples = per_disease[did]
        order = rng.permutation(len(triples))
        if len(triples) == 1:
            single_sided.append(did)
        for slot, idx in enumerate(order):
            (a if slot % 2 == 0 else b).append(triples[idx])
    return SplitHalves(corpus.with_triples(a), corpus.with_triples(b), tuple(single_sided))


def similarity_matrix(bundle: ModelBundle, row_indices: np.ndarray) -> np.ndarray:
    """Pairwise cosine similarities between the given disease latent rows."""
    latents = bundle.factorization.disease_latents()[row_indices]
    norms = np.linalg.norm(latents, axis=1)
    if np.any(norms == 0.0):
        raise EvaluationError("similarity matrix requested for a zero-latent disease")
    unit = latents / norms[:, None]
    return unit @ unit.T


def distance_matrix(sim_a: np.ndarray, sim_b: np.ndarray) -> np.ndarray:
    """Row-profile distances: D[i, j] = ||sim_a[i, :] - sim_b[j, :]||_2.

    Off-diagonal entries use the Gram identity (matrix multiply speed); the
    diagonal is recomputed from explicit row differences so comparing a
    matrix with itself gives an exactly zero diagonal.
    """
    sim_a = np.asarray(sim_a, dtype=np.float64)
    sim_b = np.asarray(sim_b, dtype=np.float64)
    if sim_a.shape != sim_b.shape or sim_a.ndim != 2 or sim_a.shape[0] != sim_a.shape[1]:
        raise EvaluationError(f"similarity matrices must share a square shape, "
                              f"got {sim_a.shape} and {sim_b.shape}")
    na = np.einsum("ij,ij->i", sim_a, sim_a)
    nb = np.einsum("ij,ij->i", sim_b, sim_b)
    d2 = na[:, None] + nb[None, :] - 2.0 * (sim_a @ sim_b.T)
    np.maximum(d2, 0.0, out=d2)
    dist = np.sqrt(d2)
    diff = sim_a - sim_b
    np.fill_diagonal(dist, np.sqrt(np.einsum("ij,ij->i", diff, diff)))
    return dist


def row_permuted(sim: np.ndarray, seed: int) -> np.ndarray:
    """Shuffled-label control: permute the rows of a similarity matrix."""
    rng = np.random.default_rng(seed)
    return sim[rng.permutation(sim.shape[0])]


@dataclass(frozen=True)
class SanityVerdict:
    mean_diag: float
    mean_offdiag: float
    ratio: float
    threshold: float
    passed: bool

    def to_dict(self) -> dict:
        return {
            "mean_diag": self.mean_diag,
            "mean_offdiag": self.mean_offdiag,
            "ratio": self.ratio,
            "threshold": self.threshold,
            "passed": self.passed,
        }


def verdict_for(distance: np.ndarray, threshold: float = DEFAULT_SANITY_THRESHOLD) -> SanityVerdict:
    p = distance.shape[0]
    if p < 2:
        raise EvaluationError("need at least two shared diseases for a verdict")
    diag = float(np.trace(distance) / p)
    off = float((distance.sum() - np.trace(distance)) / (p * (p - 1)))
    if off == 0.0:
        ratio = 0.0 if diag == 0.0 else float("inf")
    else:
        ratio = diag / off
    return SanityVerdict(mean_diag=diag, mean_offdiag=off, ratio=ratio,
                         threshold=threshold, passed=ratio <= threshold)


@dataclass
class SanityReport:
    seed: int
    threshold: float
    shared_dids: tuple[int, ...]
    full_vs_half: np.ndarray
    half_vs_half: np.ndarray
    verdict_full_vs_half: SanityVerdict
    verdict_half_vs_half: SanityVerdict
    single_sided_dids: tuple[int, ...] = ()

    @property
    def passed(self) -> bool:
        return self.verdict_full_vs_half.passed and self.verdict_half_vs_half.passed

    def to_dict(self) -> dict:
        return {
            "seed": self.seed,
            "threshold": self.threshold,
            "shared_diseases": len(self.shared_dids),
            "single_sided_diseases": len(self.single_sided_dids),
            "full_vs_half": self.verdict_full_vs_half.to_dict(),
            "half_vs_half": self.verdict_half_vs_half.to_dict(),
            "passed": self.passed,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    def dump_csv(self, directory) -> None:
        d = Path(directory)
        d.mkdir(parents=True, exist_ok=True)
        np.savetxt(d / "distance_full_vs_half.csv", self.full_vs_half, delimiter=",")
        np.savetxt(d / "distance_half_vs_half.csv", self.half_vs_half, delimiter=",")


def sanity_check(corpus: Corpus, spec: SplitSpec = SplitSpec(),
                 config: ModelConfig = ModelConfig(),
                 threshold: float = DEFAULT_SANITY_THRESHOLD,
                 full_model: ModelBundle | None = None) -> SanityReport:
    """Train full and half models and compare disease-similarity profiles.

    Emits the full-vs-half-A and half-A-vs-half-B distance matrices with a
    verdict each: mean diagonal over mean off-diagonal must not exceed the
    threshold. ``full_model`` may be passed to reuse a model already built
    on this corpus with this config (seed sweeps).
    """
    halves = split_half(corpus, spec)
    full = full_model if full_model is not None else build_model(corpus, config)
    model_a = build_model(halves.half_a, config)
    model_b = build_model(halves.half_b, config)

    eligible = (full.factorization.eligible_rows()
                & model_a.factorization.eligible_rows()
                & model_b.factorization.eligible_rows())
    rows = np.flatnonzero(eligible)
    if len(rows) < 2:
        raise EvaluationError("fewer than two diseases eligible in all three models")
    shared_dids = tuple(int(corpus.disease_ids[i]) for i in rows)

    sim_full = similarity_matrix(full, rows)
    sim_a = similarity_matrix(model_a, rows)
    sim_b = similarity_matrix(model_b, rows)

    full_vs_half = distance_matrix(sim_full, sim_a)
    half_vs_half = distance_matrix(sim_a, sim_b)
    return SanityReport(
        seed=spec.seed,
        threshold=threshold,
        shared_dids=shared_dids,
        full_vs_half=full_vs_half,
        half_vs_half=half_vs_half,
        verdict_full_vs_half=verdict_for(full_vs_half, threshold),
        verdict_half_vs_half=verdict_for(half_vs_half, threshold),
        single_sided_dids=halves.single_sided_dids,
    )


@dataclass(frozen=True)
class RegressionQuery:
    symptom_ids: tuple[int, ...]
    predicted: tuple[int, ...]
    expected: tuple[int, ...]
    hits: int


@dataclass
class RegressionReport:
    n: int
    sample_size: int
    seed: int
    queries: list[RegressionQuery] = field(default_factory=list)

    @property
    def mean_hits(self) -> float:
        if not self.queries:
            return 0.0
        return float(np.mean([q.hits for q in self.queries]))

    @property
    def hit_rate(self) -> float:
        return self.mean_hits / self.n if self.n else 0.0

    def passed(self, min_fraction: float = DEFAULT_MIN_MEAN_HITS_FRACTION) -> bool:
        return self.hit_rate >= min_fraction

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "sample_size": self.sample_size,
            "seed": self.seed,
            "mean_hits": self.mean_hits,
            "hit_rate": self.hit_rate,
            "queries": [
                {
                    "symptom_ids": list(q.symptom_ids),
                    "predicted": list(q.predicted),
                    "expected": list(q.expected),
                    "hits": q.hits,
                }
                for q in self.queries
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)


def expected_by_raw_weight(corpus: Corpus, symptom_ids, n: int) -> tuple[int, ...]:
    """Top-n diseases by summed raw training weight over the given symptoms."""
    matrix = build_matrix(corpus)
    cols = [corpus.symptom_index[s] for s in symptom_ids]
    totals = matrix.to_dense()[:, cols].sum(axis=1)
    dids = np.asarray(corpus.disease_ids, dtype=np.int64)
    order = np.lexsort((dids, -totals))[:n]
    return tuple(int(dids[i]) for i in order)


def regression_check(corpus: Corpus, config: ModelConfig = ModelConfig(),
                     sample_size: int = DEFAULT_REGRESSION_SAMPLE, n: int = 4,
                     seed: int = 0, model: ModelBundle | None = None) -> RegressionReport:
    """Compare model predictions against max-raw-weight expected sets.

    Samples symptom sets from the training triples (per sampled disease: two
    or three of its own symptoms, drawn uniformly), recommends top-n, and
    counts overlaps with the top-n diseases by summed raw weight for the
    same symptoms.
    """
    if n < 1:
        raise EvaluationError(f"result count must be >= 1, got {n}")
    if sample_size < 1:
        raise EvaluationError("empty sample")
    bundle = model if model is not None else build_model(corpus, config)

    per_disease: dict[int, list[int]] = {}
    for t in corpus.triples:
        per_disease.setdefault(t.did, []).append(t.syd)
    candidates = sorted(did for did, syds in per_disease.items() if len(set(syds)) >= 2)
    if not candidates:
        raise EvaluationError("no disease with two or more distinct symptoms")

    matrix = build_matrix(corpus)
    dense = matrix.to_dense()
    dids = np.asarray(corpus.disease_ids, dtype=np.int64)

    rng = np.random.default_rng(seed)
    report = RegressionReport(n=n, sample_size=sample_size, seed=seed)
    for _ in range(sample_size):
        did = candidates[int(rng.integers(len(candidates)))]
        syds = sorted(set(per_disease[did]))
        size = min(len(syds), int(rng.integers(2, 4)))
        chosen = tuple(sorted(int(syds[i]) for i in rng.choice(len(syds), size=size, replace=False)))

        response = recommend(Query(chosen, n=n), bundle.factorization, corpus,
                             scheme=bundle.config.scheme, corpus_hash=bundle.corpus_hash)
        predicted = tuple(r.did for r in response.results)

        cols = [corpus.symptom_index[s] for s in chosen]
        totals = dense[:, cols].sum(axis=1)
        order = np.lexsort((dids, -totals))[:n]
        expected = tuple(int(dids[i]) for i in order)

        hits = len(set(predicted) & set(expected))
        report.queries.append(RegressionQuery(chosen, predicted, expected, hits))
    return report
