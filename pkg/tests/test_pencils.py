import random
from fractions import Fraction

import pytest

from padiczeros import (
    CapExceededError,
    Pencil,
    QuadraticForm,
    count_common_zeros_bruteforce,
    count_common_zeros_exact,
    count_error_bound,
    count_singular_zeros,
    field,
    find_nonsingular_zero,
    is_minimized,
    linalg,
    rank_spectrum,
    verify_count_lower_bound,
    verify_spectrum_bounds,
)
from padiczeros.pencils import is_nonsingular_zero
from conftest import random_form, random_invertible, random_pencil

g2, g3 = field(2), field(3)


def test_combine_examples():
    p = Pencil([QuadraticForm(g3, 1, {(1, 1): 1}), QuadraticForm(g3, 1, {})])
    assert p.combine([1, 0]) == p.forms[0]
    assert p.combine([0, 0]).is_zero()
    p2 = Pencil([QuadraticForm(g3, 2, {(1, 1): 1}), QuadraticForm(g3, 2, {(2, 2): 1})])
    assert p2.combine([1, 2]) == QuadraticForm(g3, 2, {(1, 1): 1, (2, 2): 2})
    with pytest.raises(ValueError):
        p2.combine([1])


def test_spectrum_examples():
    s = rank_spectrum(Pencil([QuadraticForm(g3, 2, {(1, 2): 1})]))
    assert s.vector_counts == {2: 2} and s.zero_combination_count == 0
    s = rank_spectrum(
        Pencil([QuadraticForm(g2, 2, {(1, 1): 1}), QuadraticForm(g2, 2, {(1, 2): 1})])
    )
    assert s.vector_counts == {1: 1, 2: 2}
    assert s.total() == 2**2 - 1


def test_spectrum_divisibility_and_total(rng):
    for _ in range(30):
        spec = field(*rng.choice([(2, 1), (3, 1), (2, 2), (5, 1)]))
        pencil = random_pencil(spec, rng.randrange(2, 5), rng.randrange(1, 4), rng)
        s = rank_spectrum(pencil)
        assert s.total() == spec.q**pencil.r - 1
        for count in s.vector_counts.values():
            assert count % (spec.q - 1) == 0
        s.projective_counts()


def test_spectrum_cap():
    with pytest.raises(CapExceededError):
        rank_spectrum(random_pencil(field(5), 3, 3, random.Random(0)), cap=10)


def test_bruteforce_examples():
    assert count_common_zeros_bruteforce(Pencil([QuadraticForm(g3, 2, {(1, 2): 1})])) == 5
    p = Pencil([QuadraticForm(g3, 2, {(1, 1): 1}), QuadraticForm(g3, 2, {(2, 2): 1})])
    assert count_common_zeros_bruteforce(p) == 1
    assert count_common_zeros_bruteforce(Pencil([QuadraticForm(g3, 1, {})])) == 3


def test_bruteforce_workers_identical():
    pencil = random_pencil(field(5), 4, 2, random.Random(3))
    base = count_common_zeros_bruteforce(pencil)
    for workers in (2, 3, 5):
        assert count_common_zeros_bruteforce(pencil, workers=workers) == base


def test_exact_count_identity_corpus(rng):
    for _ in range(150):
        spec = field(*rng.choice([(2, 1), (3, 1), (2, 2), (5, 1)]))
        pencil = random_pencil(spec, rng.randrange(2, 5), rng.randrange(1, 4), rng)
        brute = count_common_zeros_bruteforce(pencil)
        assert count_common_zeros_exact(pencil) == brute
        window = count_error_bound(pencil)
        if window.hypothesis_ok:
            assert window.contains(brute)


def test_error_bound_example():
    window = count_error_bound(Pencil([QuadraticForm(g3, 2, {(1, 2): 1})]))
    assert window.bound == 2 and window.center == 3
    assert abs(5 - window.center) <= window.bound


def test_error_bound_odd_spectrum_forces_equality(rng):
    # only odd ranks occupied: B = 0 and N = q^(n-r) exactly
    pencil = Pencil([QuadraticForm(g3, 3, {(1, 2): 1, (3, 3): 1})])
    window = count_error_bound(pencil)
    assert window.bound == 0
    assert count_common_zeros_bruteforce(pencil) == window.center == 9


def test_find_nonsingular_zero_examples():
    p = Pencil([QuadraticForm(g3, 4, {(1, 2): 1, (3, 4): 1})])
    assert find_nonsingular_zero(p) == [0, 0, 0, 1]
    assert is_nonsingular_zero(p, [1, 0, 1, 0])
    assert find_nonsingular_zero(Pencil([QuadraticForm(g2, 1, {(1, 1): 1})])) is None
    p2 = Pencil([QuadraticForm(g3, 4, {(1, 2): 1}), QuadraticForm(g3, 4, {(3, 4): 1})])
    assert is_nonsingular_zero(p2, [1, 0, 0, 1])
    assert not is_nonsingular_zero(p2, [0, 0, 0, 0])


def test_find_nonsingular_zero_random_strategy_deterministic():
    pencil = random_pencil(field(5), 4, 1, random.Random(9))
    a = find_nonsingular_zero(pencil, strategy="random", seed=4, trials=10**4)
    b = find_nonsingular_zero(pencil, strategy="random", seed=4, trials=10**4)
    assert a == b
    if a is not None:
        assert is_nonsingular_zero(pencil, a)


def test_count_singular_zeros_examples():
    rep = count_singular_zeros(Pencil([QuadraticForm(g3, 4, {(1, 2): 1, (3, 4): 1})]))
    assert rep.singular_nonzero == 0
    rep = count_singular_zeros(Pencil([QuadraticForm(g2, 2, {(1, 1): 1})]))
    assert rep.total_zeros == 2 and rep.singular_nonzero == 1
    assert rep.by_form == {(1,): 1}


def test_singular_partition_consistency(rng):
    for _ in range(25):
        spec = field(*rng.choice([(2, 1), (3, 1), (2, 2)]))
        pencil = random_pencil(spec, rng.randrange(2, 4), rng.randrange(1, 3), rng)
        rep = count_singular_zeros(pencil)
        nonsingular = 0
        q, n = spec.q, pencil.n
        x = [0] * n
        while True:
            if any(x) and is_nonsingular_zero(pencil, x):
                nonsingular += 1
            for i in range(n - 1, -1, -1):
                x[i] += 1
                if x[i] < q:
                    break
                x[i] = 0
            else:
                break
        assert rep.nonsingular() == nonsingular
        assert rep.total_zeros == nonsingular + rep.singular_nonzero + 1


def test_is_minimized_examples():
    assert is_minimized(Pencil([QuadraticForm(g3, 3, {(1, 2): 1, (3, 3): 1})])).minimized
    rep = is_minimized(Pencil([QuadraticForm(g3, 3, {(1, 1): 1})]))
    assert not rep.minimized
    assert rep.witness == (1, 1, [[0, 1, 0], [0, 0, 1]])
    rep = is_minimized(Pencil([QuadraticForm(g3, 3, {})]))
    assert not rep.minimized and rep.witness[1] == 0


def test_is_minimized_cap():
    with pytest.raises(CapExceededError):
        is_minimized(random_pencil(field(5), 5, 1, random.Random(0)), subspace_cap=100)


def test_is_minimized_invariance(rng):
    """The boolean is invariant under variable and pencil basis changes."""
    for _ in range(20):
        spec = field(*rng.choice([(2, 1), (3, 1), (2, 2)]))
        n, r = rng.randrange(2, 5), rng.randrange(1, 3)
        pencil = random_pencil(spec, n, r, rng)
        base = is_minimized(pencil).minimized
        t = random_invertible(spec, n, rng)
        moved = Pencil([f.change_of_variables(t) for f in pencil.forms])
        assert is_minimized(moved).minimized == base
        u = random_invertible(spec, r, rng)
        mixed = Pencil(
            [
                pencil.combine([u[i][j] for j in range(r)])
                for i in range(r)
            ]
        )
        assert is_minimized(mixed).minimized == base


def test_spectrum_bounds_requires_minimized():
    with pytest.raises(ValueError):
        verify_spectrum_bounds(Pencil([QuadraticForm(g3, 3, {(1, 1): 1})]))


def test_spectrum_bounds_on_minimized_instances():
    pencil = Pencil([QuadraticForm(g3, 4, {(1, 1): 1, (2, 2): 1})])
    report = verify_spectrum_bounds(pencil)
    assert report.passed and report.rank_floor == 2 and report.min_rank == 2


def test_lower_bound_in_hypothesis():
    g7 = field(7)
    pencil = Pencil([QuadraticForm(g7, 5, {(1, 2): 1, (3, 4): 1, (5, 5): 1})])
    rep = verify_count_lower_bound(pencil)
    assert rep.in_hypothesis and rep.label == "in-hypothesis"
    assert rep.n_zeros == 2401
    assert rep.formula_rhs == 2058
    assert rep.holds_formula and rep.holds_measured
    assert rep.density_ratio == Fraction(2401, 2401)


def test_lower_bound_out_of_hypothesis_label():
    pencil = Pencil([QuadraticForm(g3, 4, {(1, 1): 1, (2, 2): 1})])
    rep = verify_count_lower_bound(pencil)
    assert not rep.in_hypothesis
    assert rep.label == "out-of-hypothesis observation"
    assert rep.holds_measured  # the measured-spectrum side is unconditional


def test_lower_bound_degenerate_even_spectrum():
    pencil = Pencil([QuadraticForm(g3, 3, {(1, 2): 1, (3, 3): 1})])
    rep = verify_count_lower_bound(pencil)
    assert rep.measured_rhs == rep.n_zeros == 9
