import warnings
from fractions import Fraction

import pytest

from padiczeros import bounds
from padiczeros.errors import CapExceededError
from padiczeros.primes import (
    ceil_div,
    integer_nth_root,
    is_prime,
    is_prime_power,
    prime_powers_from,
)


def test_prime_utilities():
    assert is_prime(2) and is_prime(271919) and not is_prime(271917)
    assert is_prime_power(32) and is_prime_power(9) and not is_prime_power(36)
    it = prime_powers_from(32)
    assert [next(it) for _ in range(3)] == [32, 37, 41]
    it = prime_powers_from(8)
    assert [next(it) for _ in range(5)] == [8, 9, 11, 13, 16]
    it = prime_powers_from(271900)
    found = []
    for q in it:
        found.append(q)
        if q >= 271919:
            break
    assert 271919 in found
    assert integer_nth_root(10**12, 3) == 10**4
    assert integer_nth_root(2**64 - 1, 2) == 2**32 - 1
    assert ceil_div(5, 2) == 3 and ceil_div(4, 2) == 2


def test_sigma1_hand_value_r1_n5():
    assert bounds.sigma1(1, 5, 7) == Fraction(1, 7**4) + Fraction(1, 7)


def test_sigma2_hand_value_r1_n5():
    # single term rho=4, t=0: exponent -4 + 1 + 1 = -2, coefficient 1
    for q in (7, 9, 11):
        assert bounds.sigma2(1, 5, q) == Fraction(1, q**2) / (q - 1)


def test_sigma2_empty_sum_guard():
    """An empty rho-range would give sigma2 = 0; for r, n >= 1 the range is
    in fact never empty, so just pin the range arithmetic down."""
    for r in range(1, 9):
        for n in range(1, 41):
            assert 2 * (ceil_div(n, 2 * r) - 1) <= n - 1
            assert len(bounds.sigma2_terms(r, n, 101)) >= 1


def test_sigma1_linear_coefficient_r3():
    assert bounds.sigma1_linear_coefficient(3, 13) == 25 + 7 + 1 + Fraction(1, 11) + Fraction(1, 169)


def test_sigma1_dominant_term():
    # q * sigma1 approaches the linear coefficient for huge q
    linear = bounds.sigma1_linear_coefficient(3, 13)
    q = 10**9
    assert abs(bounds.sigma1(3, 13, q) * q - linear) < Fraction(1, 10**6)


def test_specialization_identity_grid():
    for r in range(1, 11):
        count = 0
        for q in prime_powers_from(4 * r + 2):
            assert bounds.sigma1_special(r, q) == bounds.sigma1(r, 4 * r + 1, q)
            assert bounds.sigma2_special(r, q) == bounds.sigma2(r, 4 * r + 1, q)
            count += 1
            if count == 5:
                break


def test_sigma_profile_matches_direct(rng):
    for _ in range(20):
        r = rng.randrange(1, 6)
        n = rng.randrange(r + 1, 20)
        q = rng.choice([3, 7, 16, 101])
        assert bounds.sigma_total(r, n, q) == bounds.sigma1(r, n, q) + bounds.sigma2(r, n, q)


def test_admissible_examples():
    assert bounds.admissible(3, 13, 37).admissible
    rep = bounds.admissible(3, 13, 32)
    assert not rep.admissible and rep.sigma1 > 1
    rep = bounds.admissible(3, 13, 13)
    assert not rep.admissible and not rep.q_gt_n


def test_minimal_search_r3():
    res = bounds.minimal_admissible_prime_power(3, 13)
    assert res.q0 == 37
    assert res.window_failures == []
    assert not any(is_prime_power(m) for m in range(33, 37))


def test_minimal_search_r4():
    res = bounds.minimal_admissible_prime_power(4, 17)
    assert res.q0 == 191
    assert not bounds.admissible(4, 17, 181).admissible
    assert res.window_failures == []


def test_minimal_search_ceiling():
    with pytest.raises(CapExceededError):
        bounds.minimal_admissible_prime_power(3, 13, ceiling=20)


def test_sigma2_special_constants_r3():
    a, b = bounds.sigma2_special_constants(3)
    ref_a, ref_b = bounds.REFERENCE_SIGMA2_CONSTANTS_R3
    assert abs(a - ref_a) / ref_a < Fraction(15, 1000)
    assert abs(b - ref_b) / ref_b < Fraction(15, 1000)
    # and sigma2 regroups exactly as A/q + B/q^2 over q-1
    for q in (37, 41):
        assert bounds.sigma2_special(3, q) == (a / q + b / q**2) / (q - 1)


def test_sigma1_linear_vs_quoted_decimal_r3():
    """The printed 32.11 differs from the exact 33.096...; flagged, not equal."""
    exact = bounds.sigma1_linear_coefficient(3, 13)
    quoted = bounds.REFERENCE_SIGMA1_LINEAR_R3
    deviation = abs(exact - quoted) / quoted
    assert Fraction(2, 100) < deviation < Fraction(4, 100)


def test_headline_admissibility():
    for r in range(5, 11):
        assert bounds.admissible(r, 4 * r + 1, (2 * r) ** r).admissible


def test_general_inequality():
    for r in range(5, 13):
        assert bounds.general_inequality(r, (2 * r) ** r)
    assert bounds.general_inequality(5, 10**5)
    assert not bounds.general_inequality(5, 10**4)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        bounds.general_inequality(3, 10**6)
        assert caught


def test_general_inequality_monotone_in_q():
    for r in (5, 6, 8):
        state = False
        for q in (10**4, 10**5, 10**6, 10**8, 10**10):
            now = bounds.general_inequality(r, q)
            assert now or not state  # once true, stays true on this grid
            state = now


def test_sigma_decreasing_along_prime_powers():
    for r, n in [(1, 5), (3, 13), (4, 17)]:
        previous = None
        count = 0
        for q in prime_powers_from(n + 1):
            value = bounds.sigma_total(r, n, q)
            if previous is not None:
                assert value < previous
            previous = value
            count += 1
            if count == 25:
                break


def test_majorant_condition_gate():
    cert = bounds.majorant_condition(5, 26, 100)
    assert not cert.gate_ok and not cert.ok


def test_majorant_certificate_soundness_grid():
    """certified-true must imply exact-true."""
    grid = []
    for r in (6, 7, 8):
        n = r * r + 1
        q0 = bounds.least_prime_power_at_least(
            integer_nth_root((4 * r * r) ** r, r - 4) + 1
        )
        grid.extend((r, n, q) for q in [q0, 2 * q0 + 1])
    for r, n, q in grid:
        cert = bounds.majorant_condition(r, n, q)
        if cert.ok:
            assert bounds.admissible(r, n, q).admissible, (r, n, q)


def test_majorant_preconditions():
    with pytest.raises(ValueError):
        bounds.majorant_condition(4, 17, 10**12)
    with pytest.raises(ValueError):
        bounds.majorant_condition(5, 20, 10**12)


def test_decimal_view_truncates():
    assert bounds.decimal_view(Fraction(2, 3), 5) == "0.66666"
    assert bounds.decimal_view(Fraction(1, 4)) == "0.25"
    assert bounds.decimal_view(Fraction(-2, 3), 4) == "-0.6666"
    text = bounds.decimal_view(Fraction(1, 7))
    assert text.startswith("0.142857142857")
    assert len(text) == 32  # "0." + 30 digits


def test_fifty_digit_float_cross_check():
    mpmath = pytest.importorskip("mpmath")
    mp = mpmath.mp
    mp.dps = 60

    def mp_sigma1(r, n, q):
        total = mpmath.mpf(q) ** (r - n)
        for t in range(ceil_div(n, 2 * r) - 1, n // 2 + 1):
            b = (4 * r * t) // n
            total += (
                mpmath.mpf(q) ** (-t)
                * (mpmath.mpf(q) / (2 * t + 1)) ** b
                * mpmath.mpf(2 * t + 1) ** r
            )
        return total

    def mp_sigma2(r, n, q):
        total = mpmath.mpf(0)
        for rho in range(2 * (ceil_div(n, 2 * r) - 1), n):
            b1 = (2 * r * rho) // n
            for t in range(0, (n - rho) // 2 + 1):
                b2 = (2 * r * (rho + 2 * t)) // n
                coeff = mpmath.mpf(rho + 1) ** (r - b1) * mpmath.mpf(2 * t + 1) ** (r - b2)
                total += coeff * mpmath.mpf(q) ** (-rho - t + b1 + b2)
        return total / (q - 1)

    def as_mp(fr):
        return mpmath.mpf(fr.numerator) / mpmath.mpf(fr.denominator)

    grid = [(1, 5), (2, 9), (3, 13), (3, 20), (5, 21), (8, 33), (8, 40)]
    for r, n in grid:
        count = 0
        for q in prime_powers_from(n + 1):
            exact1, exact2 = bounds.sigma1(r, n, q), bounds.sigma2(r, n, q)
            assert abs(as_mp(exact1) - mp_sigma1(r, n, q)) / as_mp(exact1) < mpmath.mpf(10) ** -30
            if exact2:
                assert abs(as_mp(exact2) - mp_sigma2(r, n, q)) / as_mp(exact2) < mpmath.mpf(10) ** -30
            count += 1
            if count == 2:
                break


def test_bound_report_serialization():
    rep = bounds.admissible(3, 13, 37)
    d = rep.to_dict()
    assert d["admissible"] is True
    assert d["sigma1"]["num"] / d["sigma1"]["den"] == pytest.approx(float(rep.sigma1))
    assert d["conditions"]["q_gt_n"] is True
    assert len(d["terms"]["sigma1"]) == len(rep.sigma1_term_list)
    total = sum(Fraction(t["num"], t["den"]) for t in d["terms"]["sigma1"])
    assert total + Fraction(37) ** (3 - 13) == rep.sigma1
