"""Answer symptom-set queries with ranked diseases and their treatments.

A query is folded into the latent space as the sum of the latent columns of
its symptoms; every eligible disease (nonzero latent vector) is scored by
cosine similarity against that folded vector. Results are ordered by score
descending, ties broken by ascending disease id, and carry the treatment
courses recorded for each disease.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .corpus import Corpus
from .factorization import Factorization
from .sparse import SparseWeightMatrix

DEFAULT_TOP_N = 4
RANK_MODES = ("cosine", "raw-sum")


class QueryError(ValueError):
    pass


class UnknownSymptomError(QueryError):
    def __init__(self, unknown_ids):
        self.unknown_ids = tuple(sorted(unknown_ids))
        super().__init__(f"unknown symptom ids: {', '.join(map(str, self.unknown_ids))}")


@dataclass(frozen=True)
class Query:
    symptom_ids: tuple[int, ...]
    n: int = DEFAULT_TOP_N

    def __post_init__(self):
        object.__setattr__(self, "symptom_ids", tuple(dict.fromkeys(self.symptom_ids)))
        if not self.symptom_ids:
            raise QueryError("query needs at least one symptom id")
        if self.n < 1:
            raise QueryError(f"result count must be >= 1, got {self.n}")


@dataclass(frozen=True)
class Recommendation:
    did: int
    disease: str
    score: float
    remedies: tuple[str, ...]

    @property
    def no_recorded_treatment(self) -> bool:
        return not self.remedies


@dataclass(frozen=True)
class RecommendationResponse:
    query: Query
    results: tuple[Recommendation, ...]
    scheme: str
    rank: int
    corpus_hash: str
    excluded_diseases: int     # zero-latent diseases left out of the ranking
    rank_by: str = "cosine"

    def to_dict(self, score_decimals: int = 6) -> dict:
        return {
            "query": {"symptom_ids": list(self.query.symptom_ids), "n": self.query.n},
            "results": [
                {
                    "did": r.did,
                    "disease": r.disease,
                    "score": round(r.score, score_decimals),
                    "remedies": list(r.remedies),
                    "no_recorded_treatment": r.no_recorded_treatment,
                }
                for r in self.results
            ],
            "model": {
                "scheme": self.scheme,
                "rank": self.rank,
                "corpus_hash": self.corpus_hash,
                "excluded_diseases": self.excluded_diseases,
                "rank_by": self.rank_by,
            },
        }


def cosine_similarity(a, b) -> float:
    """Dot product over the product of norms; errors on zero-norm input."""
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.shape != b.shape:
        raise ValueError(f"vector shapes differ: {a.shape} vs {b.shape}")
    na, nb = np.linalg.norm(a), np.linalg.norm(b)
    if na == 0.0 or nb == 0.0:
        raise ValueError("cosine similarity is undefined for a zero-norm vector")
    return float(a @ b / (na * nb))


def _resolve_columns(symptom_ids, corpus: Corpus) -> list[int]:
    unknown = [s for s in symptom_ids if s not in corpus.symptom_index]
    if unknown:
        raise UnknownSymptomError(unknown)
    return [corpus.symptom_index[s] for s in symptom_ids]


def fold_in(query: Query, f: Factorization, corpus: Corpus) -> np.ndarray:
    """Project a symptom-id set into the latent space.

    Returns the sum of the latent columns of V for the queried symptoms
    (the latent image of a binary symptom vector).
    """
    cols = _resolve_columns(query.symptom_ids, corpus)
    return f.v[:, cols].sum(axis=1)


def _order_by_score(dids: np.ndarray, scores: np.ndarray) -> np.ndarray:
    # primary: score descending; tie break: ascending external disease id
    return np.lexsort((dids, -scores))


def recommend(query: Query, f: Factorization, corpus: Corpus, *,
              rank_by: str = "cosine",
              raw_matrix: SparseWeightMatrix | None = None,
              scheme: str = "?", corpus_hash: str = "") -> RecommendationResponse:
    """Rank diseases for a symptom-id query and attach treatment courses.

    rank_by "cosine" scores eligible diseases by cosine similarity in the
    latent space; "raw-sum" is a debug mode ranking all diseases by the sum
    of their raw weights over the queried symptoms (requires raw_matrix).
    """
    dids = np.asarray(corpus.disease_ids, dtype=np.int64)
    if rank_by == "cosine":
        q = fold_in(query, f, corpus)
        qn = float(np.linalg.norm(q))
        if qn == 0.0:
            raise QueryError("query folds to a zero latent vector; cannot rank by cosine")
        latents = f.disease_latents()
        eligible = f.eligible_rows()
        excluded = int((~eligible).sum())
        latents = latents[eligible]
        dids = dids[eligible]
        norms = np.linalg.norm(latents, axis=1)
        scores = latents @ q / (norms * qn)
    elif rank_by == "raw-sum":
        if raw_matrix is None:
            raise ValueError("raw-sum ranking requires the raw matrix")
        cols = _resolve_columns(query.symptom_ids, corpus)
        dense_cols = raw_matrix.to_dense()[:, cols]
        scores = dense_cols.sum(axis=1)
        excluded = 0
    else:
        raise ValueError(f"unknown rank mode {rank_by!r}; expected one of {RANK_MODES}")

    if len(scores) == 0:
        raise QueryError("no eligible diseases to rank")
    order = _order_by_score(dids, scores)[: query.n]
    results = []
    for idx in order:
        did = int(dids[idx])
        results.append(Recommendation(
            did=did,
            disease=corpus.disease_name(did),
            score=float(scores[idx]),
            remedies=tuple(corpus.remedies.get(did, ())),
        ))
    return RecommendationResponse(
        query=query,
        results=tuple(results),
        scheme=scheme,
        rank=f.rank,
        corpus_hash=corpus_hash,
        excluded_diseases=excluded,
        rank_by=rank_by,
    )


def search_symptoms(corpus: Corpus, prefix: str, limit: int = 10):
    """Case-insensitive substring search over symptom names.

    Matches are ordered by (position of the match, name, id) and truncated
    to ``limit``. An empty prefix lists the first ``limit`` symptoms by name.
    """
    if limit < 0:
        raise ValueError("limit must be >= 0")
    needle = prefix.strip().casefold()
    if not needle:
        ranked = sorted(corpus.symptoms, key=lambda r: (r.name, r.syd))
        return ranked[:limit]
    hits = []
    for record in corpus.symptoms:
        pos = record.name.casefold().find(needle)
        if pos >= 0:
            hits.append((pos, record.name, record.syd, record))
    hits.sort(key=lambda h: h[:3])
    return [h[3] for h in hits[:limit]]
