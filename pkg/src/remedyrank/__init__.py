"""Symptom-to-remedy recommendation engine.

Pipeline: load and clean the four-file dataset, aggregate it into a sparse
disease x symptom weight matrix, reweight with BM25 or TF-IDF, factorize
with a truncated SVD, and answer symptom-set queries by cosine similarity
in the latent space. Includes split-half sanity and regression evaluation
protocols, an HTTP JSON service and a CLI.
"""

from ._kernels import BACKEND as KERNEL_BACKEND
from .corpus import Corpus, build_matrix, load_dataset, load_dataset_dir, save_dataset
from .factorization import Factorization, truncated_svd
from .model import ModelBundle, ModelConfig, build_model, load_model, save_model
from .recommender import Query, Recommendation, RecommendationResponse, recommend, search_symptoms
from .weighting import Bm25Params, apply_scheme, bm25_weight, tfidf_weight

__version__ = "0.1.0"

__all__ = [
    "Bm25Params",
    "Corpus",
    "Factorization",
    "KERNEL_BACKEND",
    "ModelBundle",
    "ModelConfig",
    "Query",
    "Recommendation",
    "RecommendationResponse",
    "apply_scheme",
    "bm25_weight",
    "build_matrix",
    "build_model",
    "load_dataset",
    "load_dataset_dir",
    "load_model",
    "recommend",
    "save_dataset",
    "save_model",
    "search_symptoms",
    "tfidf_weight",
    "truncated_svd",
    "__version__",
]
