"""Compiled and pure kernels must agree bit for bit."""

import random

import numpy as np
import pytest

from padiczeros import field
from padiczeros._kernels import HAVE_SPEEDUPS, impl, pure
from padiczeros.pencils import _pack_coeffs, _pack_mats, _subspace_probe_cache
from conftest import random_pencil


requires_speedups = pytest.mark.skipif(
    not HAVE_SPEEDUPS, reason="compiled kernels not built"
)


def _cases(seed, count):
    rng = random.Random(seed)
    for _ in range(count):
        spec = field(*rng.choice([(2, 1), (3, 1), (2, 2), (5, 1), (3, 2)]))
        n = rng.randrange(2, 5)
        r = rng.randrange(1, 4)
        yield spec, random_pencil(spec, n, r, rng)


@requires_speedups
def test_count_common_zeros_agree():
    for spec, pencil in _cases(1, 40):
        add, mul, _, _ = spec.tables()
        cf = _pack_coeffs(pencil)
        a = impl.count_common_zeros(spec.q, pencil.n, cf, add, mul)
        b = pure.count_common_zeros(spec.q, pencil.n, cf, add, mul)
        assert a == b


@requires_speedups
def test_count_windowed_partitions_agree():
    for spec, pencil in _cases(2, 15):
        add, mul, _, _ = spec.tables()
        cf = _pack_coeffs(pencil)
        total = impl.count_common_zeros(spec.q, pencil.n, cf, add, mul)
        split = sum(
            impl.count_common_zeros(spec.q, pencil.n, cf, add, mul, lo, lo + 1)
            for lo in range(spec.q)
        )
        assert total == split


@requires_speedups
def test_singular_counts_agree():
    for spec, pencil in _cases(3, 30):
        add, mul, neg, inv = spec.tables()
        cf, mats = _pack_coeffs(pencil), _pack_mats(pencil)
        a = impl.count_zeros_and_singular(spec.q, pencil.n, cf, mats, add, mul, neg, inv)
        b = pure.count_zeros_and_singular(spec.q, pencil.n, cf, mats, add, mul, neg, inv)
        assert tuple(a) == tuple(b)


@requires_speedups
def test_first_nonsingular_agree():
    for spec, pencil in _cases(4, 30):
        add, mul, neg, inv = spec.tables()
        cf, mats = _pack_coeffs(pencil), _pack_mats(pencil)
        a = impl.first_nonsingular_zero(spec.q, pencil.n, cf, mats, add, mul, neg, inv)
        b = pure.first_nonsingular_zero(spec.q, pencil.n, cf, mats, add, mul, neg, inv)
        assert a == b


@requires_speedups
def test_min_violation_scan_agree():
    for spec, pencil in _cases(5, 25):
        add, mul, neg, inv = spec.tables()
        cf = _pack_coeffs(pencil)
        _, w_arr, probes, offsets = _subspace_probe_cache(spec.p, spec.e, pencil.n)
        a = impl.min_violation_scan(
            spec.q, pencil.n, pencil.r, cf, probes, offsets, w_arr, add, mul, neg, inv
        )
        b = pure.min_violation_scan(
            spec.q, pencil.n, pencil.r, cf, probes, offsets, w_arr, add, mul, neg, inv
        )
        assert tuple(a) == tuple(b)


def test_pure_kernel_against_direct_evaluation():
    """The fallback itself is checked against naive evaluation."""
    rng = random.Random(6)
    for _ in range(15):
        spec = field(*rng.choice([(2, 1), (3, 1), (2, 2)]))
        pencil = random_pencil(spec, rng.randrange(2, 4), rng.randrange(1, 3), rng)
        add, mul, _, _ = spec.tables()
        cf = _pack_coeffs(pencil)
        got = pure.count_common_zeros(spec.q, pencil.n, cf, add, mul)
        expected = 0
        q, n = spec.q, pencil.n
        x = [0] * n
        while True:
            if all(f.evaluate_repr(x) == 0 for f in pencil.forms):
                expected += 1
            for i in range(n - 1, -1, -1):
                x[i] += 1
                if x[i] < q:
                    break
                x[i] = 0
            else:
                break
        assert got == expected


def test_kernel_arrays_are_not_mutated():
    spec = field(3)
    pencil = random_pencil(spec, 3, 2, random.Random(8))
    add, mul, neg, inv = spec.tables()
    cf, mats = _pack_coeffs(pencil), _pack_mats(pencil)
    before = (cf.copy(), mats.copy(), np.array(add).copy())
    impl.count_zeros_and_singular(spec.q, pencil.n, cf, mats, add, mul, neg, inv)
    assert np.array_equal(cf, before[0])
    assert np.array_equal(mats, before[1])
    assert np.array_equal(np.array(add), before[2])
