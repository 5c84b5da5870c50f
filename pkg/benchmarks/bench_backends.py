#!/usr/bin/env python3
"""Compare the numba kernels against the pure-numpy fallback.

Times three layers: the raw pairwise-product kernel, batch normal forms,
and the full class pipeline (build + dual class + unit check).  Results
must be identical between backends; the script asserts that while timing.

Usage:
    python benchmarks/bench_backends.py [--n 10] [--repeat 3]
"""

import argparse
import random
import time

import numpy as np

from cubetoric import _backend
from cubetoric import manifolds as mf
from cubetoric.gf2poly import Gf2Polynomial, poly_mul
from cubetoric.quotient import normal_form


def _random_poly(rng, m, max_exp, terms):
    rows = np.array(
        [[rng.randrange(max_exp) for _ in range(m)] for _ in range(terms)],
        dtype=np.uint8,
    )
    return Gf2Polynomial(rows)


def time_fn(fn, repeat):
    best = float("inf")
    result = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - t0)
    return best, result


def run_backend(name, n, repeat, rng_seed):
    _backend.select_backend(name)
    mf._cached_family_model.cache_clear()
    rng = random.Random(rng_seed)
    timings = {}

    p = _random_poly(rng, n, 3, 400)
    q = _random_poly(rng, n, 3, 400)
    poly_mul(p, q)  # warm-up (JIT compilation on the numba path)
    timings["poly_mul 400x400 terms"], mul_result = time_fn(lambda: poly_mul(p, q), repeat)

    model = mf.build("mi", n)
    gb = model.u_presentation.gb
    batch = [_random_poly(rng, n, 3, 60) for _ in range(50)]

    def reduce_batch():
        return [normal_form(x, gb) for x in batch]

    reduce_batch()  # warm-up
    timings["normal_form x50 batch"], nf_result = time_fn(reduce_batch, repeat)

    def pipeline():
        mf._cached_family_model.cache_clear()
        model = mf.build("q", n)
        model.dual_sw()
        return model.unit_check(), model.skew_lower_bound()

    timings["full pipeline Q(n)"], pipe_result = time_fn(pipeline, repeat)
    return timings, (mul_result, nf_result, pipe_result)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n", type=int, default=10, help="cube dimension (default 10)")
    parser.add_argument("--repeat", type=int, default=3, help="timing repeats (best-of)")
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    all_timings = {}
    results = {}
    for name in ("numpy", "numba"):
        try:
            all_timings[name], results[name] = run_backend(
                name, args.n, args.repeat, args.seed
            )
        except ImportError:
            print(f"{name}: not available, skipped")

    if len(results) == 2:
        assert results["numpy"] == results["numba"], "backends disagree!"

    labels = next(iter(all_timings.values())).keys()
    width = max(len(label) for label in labels)
    header = f"{'benchmark':<{width}}  " + "".join(f"{b:>12}" for b in all_timings)
    print(header)
    print("-" * len(header))
    for label in labels:
        row = f"{label:<{width}}  "
        for name in all_timings:
            row += f"{all_timings[name][label] * 1000:>10.2f}ms"
        print(row)
    if len(all_timings) == 2:
        print("-" * len(header))
        for label in labels:
            ratio = all_timings["numpy"][label] / all_timings["numba"][label]
            print(f"{label:<{width}}  numpy/numba = {ratio:.2f}x")
        print("results identical across backends: ok")


if __name__ == "__main__":
    main()
