"""The half-minor engine against an independent permutation-expansion oracle."""

from itertools import permutations

import pytest

from padiczeros import field, half_minor_polynomial
from padiczeros.halfminors import generic_symmetric_det


def oracle_det(k):
    """Determinant of the generic symmetric matrix by full permutation sum."""
    poly = {}
    for perm in permutations(range(k)):
        sign = 1
        seen = [False] * k
        for start in range(k):
            if seen[start]:
                continue
            length = 0
            at = start
            while not seen[at]:
                seen[at] = True
                at = perm[at]
                length += 1
            if length % 2 == 0:
                sign = -sign
        mono = []
        coeff = 1
        for i in range(k):
            j = perm[i]
            mono.append((min(i, j), max(i, j)))
            if i == j:
                coeff *= 2
        key = tuple(sorted(mono))
        poly[key] = poly.get(key, 0) + sign * coeff
    return {m: c for m, c in poly.items() if c}


@pytest.mark.parametrize("k", [1, 2, 3, 4, 5])
def test_symbolic_det_matches_permutation_oracle(k):
    assert generic_symmetric_det(k) == oracle_det(k)


def test_half_minor_k1():
    assert half_minor_polynomial(1).monomials == frozenset({(((0, 0)),)})


def test_half_minor_k3_ground_truth():
    # t11 t23^2 + t22 t13^2 + t33 t12^2 + t12 t13 t23
    expected = frozenset(
        [
            ((0, 0), (1, 2), (1, 2)),
            ((0, 2), (0, 2), (1, 1)),
            ((0, 1), (0, 1), (2, 2)),
            ((0, 1), (0, 2), (1, 2)),
        ]
    )
    assert half_minor_polynomial(3).monomials == expected


def test_half_minor_k5_against_oracle():
    """Every monomial has degree 5 and survives iff half its oracle
    coefficient is odd."""
    full = oracle_det(5)
    survivors = set()
    for mono, coeff in full.items():
        assert coeff % 2 == 0
        if (coeff // 2) % 2:
            survivors.add(mono)
    hm = half_minor_polynomial(5)
    assert hm.monomials == frozenset(survivors)
    for mono in hm.monomials:
        assert len(mono) == 5


def test_half_minor_rejects_bad_order():
    with pytest.raises(ValueError):
        half_minor_polynomial(4)
    with pytest.raises(ValueError):
        half_minor_polynomial(11)


def test_half_minor_evaluation_matches_integer_reduction():
    """Evaluating over GF(2) equals reducing the integer polynomial mod 2."""
    import random

    spec = field(2)
    rng = random.Random(8)
    hm = half_minor_polynomial(3)
    full = oracle_det(3)
    for _ in range(40):
        vals = {(i, j): rng.randrange(2) for i in range(3) for j in range(i, 3)}
        direct = hm.evaluate(spec, lambda i, j: vals[(i, j)])
        integer = 0
        for mono, coeff in full.items():
            term = coeff // 2
            for pair in mono:
                term *= vals[pair]
            integer += term
        assert direct == integer % 2


def test_cache_returns_same_object():
    assert half_minor_polynomial(3) is half_minor_polynomial(3)
