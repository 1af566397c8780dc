#!/usr/bin/env python3
"""Measure the bundled-corpus acceptance quantities after regeneration:
golden queries, sanity ratios across seeds, regression mean hits."""

import sys
import time

import numpy as np

from remedyrank.corpus import load_dataset_dir
from remedyrank.evaluation import SplitSpec, regression_check, sanity_check
from remedyrank.model import ModelConfig, build_model
from remedyrank.recommender import Query, recommend

import logging
logging.disable(logging.WARNING)


def main(data_dir="data", seeds=3, sample=100):
    corpus = load_dataset_dir(data_dir)
    config = ModelConfig()
    t0 = time.time()
    bundle = build_model(corpus, config)
    print(f"build: {time.time()-t0:.1f}s")

    ok = True
    for ids, want in [((1, 2), {17, 54}), ((2, 81), {17, 338})]:
        resp = recommend(Query(ids), bundle.factorization, corpus)
        got = [r.did for r in resp.results]
        hit = want <= set(got)
        ok &= hit
        print(f"golden {ids}: {got} {'OK' if hit else 'MISS ' + str(want - set(got))}")
        for r in resp.results:
            print(f"    {r.did:5d} {r.disease:38s} {r.score:.4f}")

    ratios = []
    for seed in range(seeds):
        t0 = time.time()
        rep = sanity_check(corpus, SplitSpec(seed=seed), config, full_model=bundle)
        r1, r2 = rep.verdict_full_vs_half, rep.verdict_half_vs_half
        ratios.append((r1.ratio, r2.ratio))
        print(f"sanity seed {seed}: full-vs-half ratio={r1.ratio:.4f} "
              f"(diag {r1.mean_diag:.3f}/off {r1.mean_offdiag:.3f}), "
              f"half-vs-half ratio={r2.ratio:.4f} "
              f"(diag {r2.mean_diag:.3f}/off {r2.mean_offdiag:.3f}) [{time.time()-t0:.0f}s]")
    worst = max(max(r) for r in ratios)
    print(f"worst sanity ratio: {worst:.4f} ({'OK' if worst <= 0.25 else 'FAIL'})")

    t0 = time.time()
    reg = regression_check(corpus, config, sample_size=sample, n=4, seed=1, model=bundle)
    print(f"regression: mean_hits={reg.mean_hits:.2f}/4 hit_rate={reg.hit_rate:.3f} "
          f"({'OK' if reg.mean_hits >= 3.0 else 'FAIL'}) [{time.time()-t0:.0f}s]")
    low = [q for q in reg.queries if q.hits <= 1][:5]
    for q in low:
        print(f"    low-hit query {q.symptom_ids}: pred={q.predicted} exp={q.expected}")
    return ok


if __name__ == "__main__":
    main(*(sys.argv[1:2] or ["data"]),
         seeds=int(sys.argv[2]) if len(sys.argv) > 2 else 3)
