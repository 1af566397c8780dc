"""Build, save and load trained models.

A model bundles the factorization with the weighting configuration and the
content hash of the corpus it was built from. The on-disk format is a small
deterministic container: a magic line, one sorted-key JSON header line, then
the S, U and V arrays as raw little-endian float64 bytes. Two builds from
identical inputs produce byte-identical files except for the built_at
timestamp, which lives only in the header.
"""

from __future__ import annotations

import json
import struct
from dataclasses import dataclass, replace
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from .corpus import Corpus, build_matrix
from .factorization import DEFAULT_RANK, Factorization, truncated_svd
from .weighting import Bm25Params, apply_scheme

MODEL_MAGIC = b"REMEDYRANK-MODEL\n"
SCHEMA_VERSION = 1


class ModelFormatError(Exception):
    pass


@dataclass(frozen=True)
class ModelConfig:
    """Everything that determines a build, minus the corpus itself."""

    scheme: str = "bm25"
    k1: float = 1.2
    b: float = 0.75
    idf_floor: bool = False
    rank: int = DEFAULT_RANK
    svd_method: str = "dense"
    seed: int = 0

    def bm25_params(self) -> Bm25Params:
        return Bm25Params(k1=self.k1, b=self.b, idf_floor=self.idf_floor)


@dataclass(frozen=True)
class ModelBundle:
    config: ModelConfig
    corpus_hash: str
    factorization: Factorization
    built_at: str = ""

    @property
    def rank(self) -> int:
        return self.factorization.rank


def build_model(corpus: Corpus, config: ModelConfig = ModelConfig()) -> ModelBundle:
    """Full pipeline: raw matrix -> weighting scheme -> truncated SVD."""
    matrix = build_matrix(corpus)
    weighted = apply_scheme(matrix, config.scheme, config.bm25_params())
    factorization = truncated_svd(weighted, config.rank,
                                  method=config.svd_method, seed=config.seed)
    return ModelBundle(
        config=config,
        corpus_hash=corpus.content_hash(),
        factorization=factorization,
        built_at=datetime.now(timezone.utc).isoformat(timespec="seconds"),
    )


def _write_array(handle, arr: np.ndarray) -> None:
    data = np.ascontiguousarray(arr, dtype="<f8").tobytes()
    handle.write(struct.pack("<Q", len(data)))
    handle.write(data)


def _read_array(handle, shape) -> np.ndarray:
    (length,) = struct.unpack("<Q", handle.read(8))
    expected = int(np.prod(shape)) * 8
    if length != expected:
        raise ModelFormatError(f"array block of {length} bytes, expected {expected}")
    arr = np.frombuffer(handle.read(length), dtype="<f8").astype(np.float64)
    return np.ascontiguousarray(arr.reshape(shape))


def save_model(bundle: ModelBundle, path) -> None:
    f = bundle.factorization
    header = {
        "schema": SCHEMA_VERSION,
        "m": f.m,
        "n": f.n,
        "rank": f.rank,
        "scheme": bundle.config.scheme,
        "k1": bundle.config.k1,
        "b": bundle.config.b,
        "idf_floor": bundle.config.idf_floor,
        "svd_method": bundle.config.svd_method,
        "seed": bundle.config.seed,
        "sweeps": f.sweeps,
        "corpus_hash": bundle.corpus_hash,
        "built_at": bundle.built_at,
    }
    with open(path, "wb") as handle:
        handle.write(MODEL_MAGIC)
        handle.write(json.dumps(header, sort_keys=True).encode("utf-8") + b"\n")
        _write_array(handle, f.s)
        _write_array(handle, f.u)
        _write_array(handle, f.v)


def read_model_header(path) -> dict:
    with open(path, "rb") as handle:
        magic = handle.read(len(MODEL_MAGIC))
        if magic != MODEL_MAGIC:
            raise ModelFormatError(f"{path}: not a model file")
        return json.loads(handle.readline().decode("utf-8"))


def load_model(path) -> ModelBundle:
    path = Path(path)
    with open(path, "rb") as handle:
        magic = handle.read(len(MODEL_MAGIC))
        if magic != MODEL_MAGIC:
            raise ModelFormatError(f"{path}: not a model file")
        header = json.loads(handle.readline().decode("utf-8"))
        if header.get("schema") != SCHEMA_VERSION:
            raise ModelFormatError(f"{path}: unsupported schema {header.get('schema')}")
        m, n, rank = header["m"], header["n"], header["rank"]
        s = _read_array(handle, (rank,))
        u = _read_array(handle, (m, rank))
        v = _read_array(handle, (rank, n))
    config = ModelConfig(
        scheme=header["scheme"],
        k1=header["k1"],
        b=header["b"],
        idf_floor=header["idf_floor"],
        rank=rank,
        svd_method=header["svd_method"],
        seed=header["seed"],
    )
    factorization = Factorization(u=u, s=s, v=v, method=header["svd_method"],
                                  seed=header["seed"] if header["svd_method"] == "randomized" else None,
                                  sweeps=header["sweeps"])
    return ModelBundle(config=config, corpus_hash=header["corpus_hash"],
                       factorization=factorization, built_at=header["built_at"])


def strip_timestamp(bundle: ModelBundle) -> ModelBundle:
    """Copy with the built_at field cleared (determinism comparisons)."""
    return replace(bundle, built_at="")
