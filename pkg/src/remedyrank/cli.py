"""Command-line interface: build, recommend, sanity, regress, serve.

Exit codes: 0 success (and passing verdicts), 1 usage or I/O errors,
2 failing evaluation verdicts. Human-readable tables go to stdout; --json
switches to machine output. The dataset directory defaults to ./data or
the REMEDYRANK_DATA environment variable.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from pathlib import Path

from .corpus import DatasetError, load_dataset_dir
from .evaluation import (DEFAULT_MIN_MEAN_HITS_FRACTION, DEFAULT_SANITY_THRESHOLD,
                         EvaluationError, SplitSpec, regression_check, sanity_check)
from .factorization import DEFAULT_RANK, SVD_METHODS, FactorizationError
from .model import (ModelConfig, ModelFormatError, build_model, load_model,
                    save_model)
from .recommender import (DEFAULT_TOP_N, RANK_MODES, Query, QueryError,
                          recommend)
from .weighting import SCHEMES, WeightingError

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VERDICT = 2


def default_data_dir() -> str:
    return os.environ.get("REMEDYRANK_DATA", "data")


def add_data_flag(parser):
    parser.add_argument("--data", default=None,
                        help="dataset directory with the four CSV files "
                             "(default: $REMEDYRANK_DATA or ./data)")


def add_model_config_flags(parser):
    parser.add_argument("--scheme", choices=SCHEMES, default="bm25")
    parser.add_argument("--k1", type=float, default=1.2,
                        help="BM25 term-frequency saturation (default 1.2)")
    parser.add_argument("--b", type=float, default=0.75,
                        help="BM25 length normalization in [0,1] (default 0.75)")
    parser.add_argument("--idf-floor", action="store_true",
                        help="clamp negative IDF values at zero")
    parser.add_argument("--rank", "-r", type=int, default=DEFAULT_RANK,
                        help=f"truncation rank (default {DEFAULT_RANK})")
    parser.add_argument("--svd", choices=SVD_METHODS, default="dense",
                        help="SVD algorithm (dense Jacobi or seeded randomized)")
    parser.add_argument("--seed", type=int, default=0)


def config_from_args(args) -> ModelConfig:
    return ModelConfig(scheme=args.scheme, k1=args.k1, b=args.b,
                       idf_floor=args.idf_floor, rank=args.rank,
                       svd_method=args.svd, seed=args.seed)


def load_corpus(args):
    data_dir = Path(args.data if args.data is not None else default_data_dir())
    return load_dataset_dir(data_dir)


def get_model(args, corpus):
    """Load the model file when given and fresh, otherwise build."""
    model_path = getattr(args, "model", None)
    if model_path and Path(model_path).exists():
        bundle = load_model(model_path)
        if bundle.corpus_hash != corpus.content_hash():
            raise DatasetError(
                f"model {model_path} was built from a different corpus "
                f"(hash {bundle.corpus_hash[:12]} != {corpus.content_hash()[:12]}); rebuild it")
        return bundle
    return build_model(corpus, config_from_args(args))


def cmd_build(args) -> int:
    corpus = load_corpus(args)
    bundle = build_model(corpus, config_from_args(args))
    save_model(bundle, args.model)
    if args.report:
        corpus.report.write(args.report)
    print(f"model written to {args.model} "
          f"(corpus {bundle.corpus_hash[:12]}, scheme {bundle.config.scheme}, "
          f"rank {bundle.rank})")
    if args.report:
        print(f"cleaning report written to {args.report}")
    return EXIT_OK


def parse_symptom_ids(text: str):
    ids = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        ids.append(int(part))
    if not ids:
        raise ValueError("no symptom ids given")
    return tuple(ids)


def cmd_recommend(args) -> int:
    try:
        symptom_ids = parse_symptom_ids(args.symptoms)
    except ValueError as exc:
        print(f"error: --symptoms {args.symptoms!r}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    corpus = load_corpus(args)
    bundle = get_model(args, corpus)
    raw_matrix = None
    if args.rank_by == "raw-sum":
        from .corpus import build_matrix
        raw_matrix = build_matrix(corpus)
    response = recommend(Query(symptom_ids, n=args.n), bundle.factorization, corpus,
                         rank_by=args.rank_by, raw_matrix=raw_matrix,
                         scheme=bundle.config.scheme, corpus_hash=bundle.corpus_hash)
    if args.json:
        print(json.dumps(response.to_dict(), indent=2))
        return EXIT_OK
    names = ", ".join(f"{corpus.symptom_name(s)} ({s})" for s in symptom_ids)
    print(f"symptoms: {names}")
    print(f"{'#':>2} {'did':>5}  {'disease':<42} {'score':>9}  treatment")
    for i, rec in enumerate(response.results, start=1):
        treatment = "; ".join(rec.remedies) if rec.remedies else "(no recorded treatment)"
        print(f"{i:>2} {rec.did:>5}  {rec.disease:<42} {rec.score:>9.6f}  {treatment}")
    return EXIT_OK


def cmd_sanity(args) -> int:
    corpus = load_corpus(args)
    report = sanity_check(corpus, SplitSpec(seed=args.seed),
                          config_from_args(args), threshold=args.threshold)
    if args.json:
        Path(args.json).write_text(report.to_json() + "\n", encoding="utf-8")
        print(f"report written to {args.json}")
    if args.dump_csv:
        report.dump_csv(args.dump_csv)
        print(f"distance matrices written to {args.dump_csv}/")
    for label, verdict in [("full-vs-half", report.verdict_full_vs_half),
                           ("half-vs-half", report.verdict_half_vs_half)]:
        print(f"{label}: mean diag {verdict.mean_diag:.4f}, "
              f"mean offdiag {verdict.mean_offdiag:.4f}, "
              f"ratio {verdict.ratio:.4f} "
              f"({'pass' if verdict.passed else 'FAIL'}, threshold {verdict.threshold})")
    return EXIT_OK if report.passed else EXIT_VERDICT


def cmd_regress(args) -> int:
    corpus = load_corpus(args)
    report = regression_check(corpus, config_from_args(args),
                              sample_size=args.sample, n=args.n, seed=args.seed)
    if args.json:
        Path(args.json).write_text(report.to_json() + "\n", encoding="utf-8")
        print(f"report written to {args.json}")
    passed = report.passed(args.min_hit_rate)
    print(f"regression: mean hits {report.mean_hits:.2f} of {report.n} "
          f"over {report.sample_size} queries, hit rate {report.hit_rate:.3f} "
          f"({'pass' if passed else 'FAIL'}, minimum {args.min_hit_rate})")
    return EXIT_OK if passed else EXIT_VERDICT


def cmd_serve(args) -> int:
    import uvicorn

    from .service import LoadedModel, ModelHandle, create_app

    corpus = load_corpus(args)
    handle = ModelHandle()
    model_path = args.model
    if model_path and Path(model_path).exists():
        bundle = load_model(model_path)
        if bundle.corpus_hash != corpus.content_hash():
            raise DatasetError(f"model {model_path} does not match the dataset; rebuild it")
        handle.swap(LoadedModel(corpus, bundle))
    elif args.build:
        bundle = build_model(corpus, config_from_args(args))
        if model_path:
            save_model(bundle, model_path)
        handle.swap(LoadedModel(corpus, bundle))
    else:
        logger.warning("no model file and --build not given; serving in empty state")
    app = create_app(handle)
    uvicorn.run(app, host=args.host, port=args.port, log_level="info")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="remedyrank",
        description="Symptom-to-remedy recommendation engine")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p_build = sub.add_parser("build", help="build a model file from the dataset")
    add_data_flag(p_build)
    add_model_config_flags(p_build)
    p_build.add_argument("--model", required=True, help="output model path")
    p_build.add_argument("--report", help="write the cleaning report JSON here")
    p_build.set_defaults(func=cmd_build)

    p_rec = sub.add_parser("recommend", help="rank diseases for a symptom set")
    add_data_flag(p_rec)
    add_model_config_flags(p_rec)
    p_rec.add_argument("--model", help="model file (built on the fly if absent)")
    p_rec.add_argument("--symptoms", required=True,
                       help="comma-separated symptom ids, e.g. 1,2")
    p_rec.add_argument("--n", type=int, default=DEFAULT_TOP_N)
    p_rec.add_argument("--rank-by", choices=RANK_MODES, default="cosine",
                       help="debug mode: rank by raw weight sums instead of cosine")
    p_rec.add_argument("--json", action="store_true", help="print JSON instead of a table")
    p_rec.set_defaults(func=cmd_recommend)

    p_san = sub.add_parser("sanity", help="split-half sanity protocol")
    add_data_flag(p_san)
    add_model_config_flags(p_san)
    p_san.add_argument("--threshold", type=float, default=DEFAULT_SANITY_THRESHOLD)
    p_san.add_argument("--json", help="write the JSON report here")
    p_san.add_argument("--dump-csv", help="write the distance matrices as CSV here")
    p_san.set_defaults(func=cmd_sanity)

    p_reg = sub.add_parser("regress", help="regression hit-rate protocol")
    add_data_flag(p_reg)
    add_model_config_flags(p_reg)
    p_reg.add_argument("--sample", type=int, default=100, help="number of sampled queries")
    p_reg.add_argument("--n", type=int, default=DEFAULT_TOP_N)
    p_reg.add_argument("--min-hit-rate", type=float,
                       default=DEFAULT_MIN_MEAN_HITS_FRACTION,
                       help="pass threshold on mean hits / n (default 0.75)")
    p_reg.add_argument("--json", help="write the JSON report here")
    p_reg.set_defaults(func=cmd_regress)

    p_srv = sub.add_parser("serve", help="run the HTTP JSON API")
    add_data_flag(p_srv)
    add_model_config_flags(p_srv)
    p_srv.add_argument("--model", help="model file to load")
    p_srv.add_argument("--build", action="store_true",
                       help="build the model at startup when no file exists")
    p_srv.add_argument("--host", default="127.0.0.1")
    p_srv.add_argument("--port", type=int, default=8080)
    p_srv.set_defaults(func=cmd_serve)

    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.INFO,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (DatasetError, WeightingError, FactorizationError, EvaluationError,
            QueryError, ModelFormatError, FileNotFoundError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
