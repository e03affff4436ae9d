#!/usr/bin/env python3
"""Benchmark the compiled enumeration kernels against the pure-Python twins.

Usage:
    python benchmarks/bench_kernels.py [--repeat 3] [--heavy]

Workloads:
  * common-zero counting over F^n for a two-form pencil,
  * the same enumeration with singular-point classification,
  * the minimization witness scan over all low-codimension subspaces,
    batched across a few hundred forms (the shape of the exhaustive sweeps).
"""

import argparse
import random
import time

from padiczeros import QuadraticForm, field
from padiczeros._kernels import HAVE_SPEEDUPS, pure
from padiczeros.pencils import Pencil, _pack_coeffs, _pack_mats, _subspace_probe_cache

try:
    from padiczeros._kernels import _speedups
except ImportError:
    _speedups = None


def _random_pencil(spec, n, r, rng):
    forms = []
    for _ in range(r):
        coeffs = {}
        for i in range(1, n + 1):
            for j in range(i, n + 1):
                if rng.random() < 0.6:
                    coeffs[(i, j)] = rng.randrange(spec.q)
        forms.append(QuadraticForm(spec, n, coeffs))
    return Pencil(forms)


def _time(fn, repeat):
    best = None
    result = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn()
        elapsed = time.perf_counter() - t0
        best = elapsed if best is None else min(best, elapsed)
    return best, result


def bench_count(repeat, heavy):
    spec = field(5)
    n = 7 if heavy else 6
    pencil = _random_pencil(spec, n, 2, random.Random(1))
    add, mul, _, _ = spec.tables()
    cf = _pack_coeffs(pencil)
    return (
        f"count zeros q=5 n={n} r=2 ({spec.q ** n} points)",
        lambda mod: mod.count_common_zeros(spec.q, n, cf, add, mul),
    )


def bench_singular(repeat, heavy):
    spec = field(7 if heavy else 5)
    n = 5
    pencil = _random_pencil(spec, n, 2, random.Random(2))
    add, mul, neg, inv = spec.tables()
    cf, mats = _pack_coeffs(pencil), _pack_mats(pencil)
    return (
        f"zeros + singular split q={spec.q} n={n} r=2 ({spec.q ** n} points)",
        lambda mod: mod.count_zeros_and_singular(spec.q, n, cf, mats, add, mul, neg, inv),
    )


def bench_min_scan(repeat, heavy):
    spec = field(3)
    n = 4
    count = 600 if heavy else 300
    rng = random.Random(3)
    pencils = [_random_pencil(spec, n, 1, rng) for _ in range(count)]
    add, mul, neg, inv = spec.tables()
    _, w_arr, probes, offsets = _subspace_probe_cache(spec.p, spec.e, n)
    packed = [_pack_coeffs(p) for p in pencils]

    def run(mod):
        hits = 0
        for cf in packed:
            k, _ = mod.min_violation_scan(
                spec.q, n, 1, cf, probes, offsets, w_arr, add, mul, neg, inv
            )
            hits += k >= 0
        return hits

    return (f"minimization scan GF(3) n=4 x {count} forms", run)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--heavy", action="store_true", help="larger workloads")
    args = parser.parse_args()

    if _speedups is None:
        print("compiled kernels unavailable: run `pip install -e .` first; "
              "timing the pure fallback only\n")
    print(f"{'workload':<48} {'pure':>10} {'compiled':>10} {'speedup':>8}")
    for setup in (bench_count, bench_singular, bench_min_scan):
        label, run = setup(args.repeat, args.heavy)
        t_pure, r_pure = _time(lambda: run(pure), args.repeat)
        if _speedups is not None:
            t_fast, r_fast = _time(lambda: run(_speedups), args.repeat)
            assert r_pure == r_fast or tuple(r_pure) == tuple(r_fast), "kernel mismatch!"
            print(f"{label:<48} {t_pure:>9.3f}s {t_fast:>9.4f}s {t_pure / t_fast:>7.1f}x")
        else:
            print(f"{label:<48} {t_pure:>9.3f}s {'-':>10} {'-':>8}")
    print(f"\nselected implementation at import: {'compiled' if HAVE_SPEEDUPS else 'pure'}")


if __name__ == "__main__":
    main()
