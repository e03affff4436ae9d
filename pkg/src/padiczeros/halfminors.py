"""Half-minor forms: the degree-(R+1) rank conditions in characteristic 2.

The generic symmetric matrix U of odd order k (entries t_ij off-diagonal,
2*t_ii on the diagonal) has a determinant that is divisible by 2 as an
integer polynomial: reduced mod 2 it is the determinant of an odd-order
skew-symmetric matrix.  Half of det(U), reduced mod 2, is the principal
"half-minor" form used by the even-rank test for dyadic fields.

The expansion is exact symbolic arithmetic over the integers; halving happens
before the mod-2 reduction, so no information is lost.  Polynomials are
sparse dicts keyed by monomials, a monomial being a sorted tuple of (i, j)
variable indices (i <= j, 0-based, repeats allowed).
"""

from __future__ import annotations

import threading

from .fields import FieldSpec

HALF_MINOR_CAP = 9

Poly = dict  # monomial tuple -> int coefficient


def _poly_acc(acc: Poly, other: Poly, sign: int) -> None:
    for mono, c in other.items():
        v = acc.get(mono, 0) + sign * c
        if v:
            acc[mono] = v
        else:
            acc.pop(mono, None)


def _poly_mul_var(poly: Poly, pair: tuple[int, int], coeff: int) -> Poly:
    out = {}
    for mono, c in poly.items():
        out[tuple(sorted(mono + (pair,)))] = c * coeff
    return out


def generic_symmetric_det(k: int) -> Poly:
    """Exact determinant of the k x k generic matrix U (U_ii = 2 t_ii).

    Cofactor expansion along the first remaining column, memoized on the set
    of remaining rows.
    """
    memo: dict[frozenset, Poly] = {frozenset(): {(): 1}}

    def minor(rows: frozenset) -> Poly:
        if rows in memo:
            return memo[rows]
        col = k - len(rows)
        acc: Poly = {}
        for idx, row in enumerate(sorted(rows)):
            pair = (min(row, col), max(row, col))
            coeff = 2 if row == col else 1
            sub = minor(rows - {row})
            _poly_acc(acc, _poly_mul_var(sub, pair, coeff), 1 if idx % 2 == 0 else -1)
        memo[rows] = acc
        return acc

    return minor(frozenset(range(k)))


class HalfMinorForm:
    """Mod-2 reduction of det(U_k)/2 for odd k: a set of coefficient monomials.

    Every surviving monomial has coefficient 1 over GF(2); evaluation at the
    coefficients of a quadratic form over any characteristic-2 field is the
    field sum of the monomial products.
    """

    def __init__(self, k: int, monomials: frozenset):
        self.k = k
        self.monomials = monomials

    def degree(self) -> int:
        return self.k

    def evaluate(self, spec: FieldSpec, coeff) -> int:
        """Sum over monomials of prod coeff(i, j); coeff returns an int repr."""
        total = 0
        for mono in self.monomials:
            term = 1
            for i, j in mono:
                c = coeff(i, j)
                if c == 0:
                    term = 0
                    break
                term = spec.mul(term, c)
            if term:
                total = spec.add(total, term)
        return total

    def __eq__(self, other):
        return isinstance(other, HalfMinorForm) and self.monomials == other.monomials

    def __repr__(self):
        return f"HalfMinorForm(k={self.k}, {len(self.monomials)} monomials)"


_cache: dict[int, HalfMinorForm] = {}
_cache_lock = threading.Lock()


def half_minor_polynomial(k: int) -> HalfMinorForm:
    """The principal half-minor form of odd order k (k <= 9), memoized.

    The cache fill is idempotent, so concurrent construction is harmless.
    """
    if k % 2 == 0:
        raise ValueError(f"half-minors exist for odd order only, got {k}")
    if not 1 <= k <= HALF_MINOR_CAP:
        raise ValueError(f"half-minor order must be in [1, {HALF_MINOR_CAP}], got {k}")
    got = _cache.get(k)
    if got is not None:
        return got
    full = generic_symmetric_det(k)
    kept = []
    for mono, c in full.items():
        if c % 2 != 0:
            raise AssertionError("odd coefficient in an odd-order symmetric determinant")
        if (c // 2) % 2 != 0:
            kept.append(mono)
    result = HalfMinorForm(k, frozenset(kept))
    with _cache_lock:
        _cache.setdefault(k, result)
    return _cache[k]
