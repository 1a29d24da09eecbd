"""Benchmark the numba kernels against the pure-numpy fallbacks on a
default-corpus-sized workload.

Run: python benchmarks/bench_kernels.py [--dim 256]
"""

import argparse
import time

import numpy as np

from adjcomp import _kernels_numpy as knp
from adjcomp.lexicon import default_lexicon
from adjcomp.phrasegen import (
    generate_pair_quadruples,
    generate_phrases,
    phrase_texts_needed,
)
from adjcomp.providers import ToyEmbedder, embed_into_store

try:
    from adjcomp import _kernels_numba as knb
except ImportError:
    knb = None


def bench(fn, *args, repeat=3, warmup=True):
    if warmup:
        fn(*args)
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--dim", type=int, default=256)
    args = parser.parse_args()

    lex = default_lexicon()
    phrases = generate_phrases(lex, 2)
    quadruples = list(generate_pair_quadruples(lex))
    texts = phrase_texts_needed(phrases, quadruples)
    print(f"corpus: {len(phrases)} phrases, {len(quadruples)} quadruples, dim {args.dim}")

    store = embed_into_store(ToyEmbedder(seed=0, dim=args.dim), texts)
    row = {t: i for i, t in enumerate(store.texts())}
    M = np.stack([store[t] for t in store.texts()])
    U = M / np.linalg.norm(M, axis=1, keepdims=True)

    phrase_rows = np.array([row[p.text] for p in phrases], dtype=np.int64)
    term_rows = np.array(
        [row[t] for p in phrases for t in p.term_surfaces], dtype=np.int64
    )
    offsets = np.zeros(len(phrases) + 1, dtype=np.int64)
    np.cumsum([len(p.term_surfaces) for p in phrases], out=offsets[1:])

    quad_rows = [
        np.array([row[q.phrase_texts[i]] for q in quadruples], dtype=np.int64)
        for i in range(4)
    ]

    workloads = [
        ("intersectivity margins", "intersectivity_margins",
         (U, phrase_rows, term_rows, offsets)),
        ("pair margins", "pair_margins", (U, *quad_rows)),
    ]
    for label, name, wargs in workloads:
        t_np = bench(getattr(knp, name), *wargs)
        line = f"{label:<28s} numpy {t_np * 1e3:8.1f} ms"
        if knb is not None:
            t_nb = bench(getattr(knb, name), *wargs)
            line += f"   numba {t_nb * 1e3:8.1f} ms   ({t_np / t_nb:.1f}x)"
        print(line)


if __name__ == "__main__":
    main()
