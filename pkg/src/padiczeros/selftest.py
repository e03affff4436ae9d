"""Reduced-size acceptance checks behind `padiczeros selftest`.

Each check exercises one slice of the full test suite at a corpus size that
finishes in seconds; the pytest suite runs the same checks at full scale.
"""

from __future__ import annotations

import random
from fractions import Fraction

from . import bounds, linalg
from .fields import field
from .fields import _find_modulus  # noqa: F401  (modulus integrity check)
from .forms import QuadraticForm, canonicalize, count_zeros_closed, rank_le_via_minors
from .halfminors import half_minor_polynomial
from .hensel import IntegerQuadraticSystem, hensel_lift
from .pencils import (
    Pencil,
    count_common_zeros_bruteforce,
    count_common_zeros_exact,
    count_error_bound,
    is_minimized,
    verify_spectrum_bounds,
)

_FIELDS = [(2, 1), (3, 1), (2, 2), (5, 1), (3, 2)]


def _random_form(spec, n, rng, density=0.6):
    coeffs = {}
    for i in range(1, n + 1):
        for j in range(i, n + 1):
            if rng.random() < density:
                coeffs[(i, j)] = rng.randrange(spec.q)
    return QuadraticForm(spec, n, coeffs)


def _check_field_axioms() -> str | None:
    for p, e in _FIELDS + [(2, 3), (7, 1)]:
        spec = field(p, e)
        if spec.modulus != _find_modulus(p, e):
            return f"modulus table corrupted for GF({p}^{e})"
        rng = random.Random(spec.q)
        for _ in range(60):
            a, b, c = (rng.randrange(spec.q) for _ in range(3))
            if spec.mul(a, spec.add(b, c)) != spec.add(spec.mul(a, b), spec.mul(a, c)):
                return f"distributivity fails in GF({spec.q})"
            if spec.mul(spec.mul(a, b), c) != spec.mul(a, spec.mul(b, c)):
                return f"associativity fails in GF({spec.q})"
        squares = {spec.mul(a, a) for a in range(spec.q)}
        expected = spec.q if p == 2 else (spec.q - 1) // 2 + 1
        if len(squares) != expected:
            return f"square count wrong in GF({spec.q})"
    return None


def _check_half_minor() -> str | None:
    hm = half_minor_polynomial(3)
    expected = frozenset(
        [
            ((0, 0), (1, 2), (1, 2)),
            ((0, 2), (0, 2), (1, 1)),
            ((0, 1), (0, 1), (2, 2)),
            ((0, 1), (0, 2), (1, 2)),
        ]
    )
    if hm.monomials != expected:
        return "order-3 half-minor polynomial mismatch"
    return None


def _check_rank_oracles() -> str | None:
    rng = random.Random(11)
    for p, e in _FIELDS:
        spec = field(p, e)
        for _ in range(40):
            form = _random_form(spec, rng.randrange(1, 5), rng)
            canon = canonicalize(form)
            if not canon.verify(form):
                return f"canonical transform broken over GF({spec.q})"
            r = canon.rank
            if not rank_le_via_minors(form, r):
                return f"minor test rejects the canonical rank over GF({spec.q})"
            if r and rank_le_via_minors(form, r - 1):
                return f"minor test accepts one below the rank over GF({spec.q})"
    return None


def _check_zero_counts() -> str | None:
    rng = random.Random(13)
    for p, e in _FIELDS:
        spec = field(p, e)
        for _ in range(25):
            n = rng.randrange(1, 4)
            form = _random_form(spec, n, rng)
            brute = count_common_zeros_bruteforce(Pencil([form]))
            if brute != count_zeros_closed(form):
                return f"closed count disagrees with brute force over GF({spec.q})"
    return None


def _check_system_counts() -> str | None:
    rng = random.Random(17)
    for _ in range(40):
        spec = field(*rng.choice(_FIELDS))
        n, r = rng.randrange(2, 4), rng.randrange(1, 3)
        pencil = Pencil([_random_form(spec, n, rng) for _ in range(r)])
        brute = count_common_zeros_bruteforce(pencil)
        if brute != count_common_zeros_exact(pencil):
            return f"identity count failed at q={spec.q} n={n} r={r}"
        window = count_error_bound(pencil)
        if window.hypothesis_ok and not window.contains(brute):
            return f"spectrum window violated at q={spec.q} n={n} r={r}"
    return None


def _check_minimization() -> str | None:
    g3 = field(3)
    if not is_minimized(Pencil([QuadraticForm(g3, 3, {(1, 2): 1, (3, 3): 1})])).minimized:
        return "rank-3 form misclassified as non-minimized"
    report = is_minimized(Pencil([QuadraticForm(g3, 3, {(1, 1): 1})]))
    if report.minimized or report.witness[:2] != (1, 1):
        return "x1^2 witness not found"
    g2 = field(2)
    for idx in range(2 ** 6):
        coeffs = {}
        bits = idx
        for k, (i, j) in enumerate([(i, j) for i in range(1, 4) for j in range(i, 4)]):
            if (bits >> k) & 1:
                coeffs[(i, j)] = 1
        pencil = Pencil([QuadraticForm(g2, 3, coeffs)])
        if is_minimized(pencil).minimized:
            if not verify_spectrum_bounds(pencil).passed:
                return f"spectrum bound failed on minimized form #{idx}"
    return None


def _check_bounds() -> str | None:
    if sigma_mismatch := _sigma_spot():
        return sigma_mismatch
    res = bounds.minimal_admissible_prime_power(3, 13)
    if res.q0 != 37 or res.window_failures:
        return f"minimal q for (3,13) came out {res.q0}"
    res = bounds.minimal_admissible_prime_power(4, 17)
    if res.q0 != 191 or res.window_failures:
        return f"minimal q for (4,17) came out {res.q0}"
    if not bounds.admissible(5, 21, 10 ** 5).admissible:
        return "headline admissibility fails at r=5"
    if not bounds.general_inequality(5, 10 ** 5) or bounds.general_inequality(5, 10 ** 4):
        return "closed inequality misbehaves at r=5"
    return None


def _sigma_spot() -> str | None:
    if bounds.sigma1(1, 5, 7) != Fraction(1, 7 ** 4) + Fraction(1, 7):
        return "sigma1(1,5,7) off"
    if bounds.sigma2(1, 5, 7) != Fraction(1, 294):
        return "sigma2(1,5,7) off"
    for r in (2, 3, 5):
        for q in (4 * r + 3, 4 * r + 9):
            if bounds.sigma1_special(r, q) != bounds.sigma1(r, 4 * r + 1, q):
                return f"sigma1 specialization broken at r={r}"
            if bounds.sigma2_special(r, q) != bounds.sigma2(r, 4 * r + 1, q):
                return f"sigma2 specialization broken at r={r}"
    return None


def _check_hensel() -> str | None:
    system = IntegerQuadraticSystem(7, 2, [{(1, 1): 1, (2, 2): -2}])
    lifted = hensel_lift(system, [3, 1], 10)
    if (lifted.coords[0] ** 2 - 2 * lifted.coords[1] ** 2) % 7 ** 10 != 0:
        return "x^2 - 2 lift misses precision 10"
    if hensel_lift(system, [3, 1], 2).coords != [10, 1]:
        return "first Newton digit wrong"
    return None


def _check_kernels() -> str | None:
    from ._kernels import impl, pure

    rng = random.Random(23)
    for _ in range(10):
        spec = field(*rng.choice([(2, 1), (3, 1), (2, 2)]))
        n, r = rng.randrange(2, 4), rng.randrange(1, 3)
        pencil = Pencil([_random_form(spec, n, rng) for _ in range(r)])
        add, mul, neg, inv = spec.tables()
        from .pencils import _pack_coeffs, _pack_mats

        cf, mats = _pack_coeffs(pencil), _pack_mats(pencil)
        a = impl.count_common_zeros(spec.q, n, cf, add, mul)
        b = pure.count_common_zeros(spec.q, n, cf, add, mul)
        if a != b:
            return f"kernel mismatch (count) at q={spec.q}"
        if impl.count_zeros_and_singular(
            spec.q, n, cf, mats, add, mul, neg, inv
        ) != pure.count_zeros_and_singular(spec.q, n, cf, mats, add, mul, neg, inv):
            return f"kernel mismatch (singular) at q={spec.q}"
    return None


def _check_subspaces() -> str | None:
    for p, n, d in [(2, 3, 1), (2, 3, 2), (2, 4, 2), (3, 3, 2)]:
        spec = field(p)
        seen = set()
        for basis in linalg.enumerate_subspace_bases(spec, n, d):
            if linalg.rank(spec, basis) != d:
                return f"degenerate subspace basis at p={p} n={n} d={d}"
            seen.add(tuple(tuple(row) for row in basis))
        if len(seen) != linalg.gaussian_binomial(n, d, p):
            return f"subspace enumeration count off at p={p} n={n} d={d}"
    return None


CHECKS = [
    ("field arithmetic and modulus tables", _check_field_axioms),
    ("half-minor ground truth", _check_half_minor),
    ("canonical rank vs minor rank", _check_rank_oracles),
    ("closed zero counts vs brute force", _check_zero_counts),
    ("system counts, identity and window", _check_system_counts),
    ("minimization condition and spectrum bounds", _check_minimization),
    ("admissibility bound engine", _check_bounds),
    ("Hensel lifting", _check_hensel),
    ("compiled vs pure kernels", _check_kernels),
    ("subspace enumeration", _check_subspaces),
]


def run_selftest(quick: bool = True) -> list[tuple[str, bool, str]]:
    results = []
    for name, check in CHECKS:
        try:
            detail = check()
        except Exception as exc:  # a crashed check is a failed check
            detail = f"{type(exc).__name__}: {exc}"
        results.append((name, detail is None, detail or ""))
    if not quick:
        try:
            res = bounds.minimal_admissible_prime_power(8, 33)
            ok = abs(res.deviation()) <= Fraction(1, 200) and not res.window_failures
            results.append(("r=8 threshold search", ok, f"q0={res.q0}"))
        except Exception as exc:
            results.append(("r=8 threshold search", False, str(exc)))
    return results
