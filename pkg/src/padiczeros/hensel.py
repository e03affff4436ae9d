"""Hensel lifting of nonsingular zeros to p-adic precision.

A system of quadratic forms with integer coefficients is reduced mod p; a
common zero there with full-rank Jacobian lifts to a zero mod p^k for any k,
one digit per Newton step.  The update always solves against the same r x r
Jacobian submatrix, chosen at the first step: its reduction mod p never
changes along the lift (x stays congruent to x0), so it stays invertible.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from . import linalg
from .fields import field
from .forms import QuadraticForm
from .pencils import Pencil
from .pencils import is_nonsingular_zero as _pencil_nonsingular
from .primes import is_prime


@dataclass
class IntegerQuadraticSystem:
    """r quadratic forms in n variables with arbitrary-precision integer
    coefficients, keyed (i, j) with 1 <= i <= j <= n."""

    p: int
    n: int
    forms: list  # list of dict[(i, j)] -> int

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"p must be prime, got {self.p}")
        if not self.forms:
            raise ValueError("a system needs at least one form")
        for coeffs in self.forms:
            for (i, j) in coeffs:
                if not (1 <= i <= j <= self.n):
                    raise ValueError(f"coefficient index ({i},{j}) out of range")

    @property
    def r(self) -> int:
        return len(self.forms)

    def evaluate(self, index: int, x: list[int], modulus: int | None = None) -> int:
        acc = 0
        for (i, j), a in self.forms[index].items():
            acc += a * x[i - 1] * x[j - 1]
        return acc % modulus if modulus is not None else acc


def reduce_mod_p(system: IntegerQuadraticSystem) -> Pencil:
    """Coefficient-wise reduction to a pencil over GF(p)."""
    spec = field(system.p)
    forms = [
        QuadraticForm(spec, system.n, {k: v % system.p for k, v in coeffs.items()})
        for coeffs in system.forms
    ]
    return Pencil(forms)


def is_nonsingular_zero(system: IntegerQuadraticSystem, x: list[int]) -> bool:
    """All forms vanish mod p at x and the r x n Jacobian has rank r mod p."""
    reduced = [c % system.p for c in x]
    return _pencil_nonsingular(reduce_mod_p(system), reduced)


@dataclass
class PadicVector:
    """n p-adic integer coordinates truncated at precision k."""

    p: int
    precision: int
    coords: list

    def __post_init__(self):
        mod = self.p**self.precision
        self.coords = [c % mod for c in self.coords]

    def reduce(self, precision: int) -> "PadicVector":
        if not 1 <= precision <= self.precision:
            raise ValueError("can only reduce to a lower positive precision")
        return PadicVector(self.p, precision, self.coords)

    def __iter__(self):
        return iter(self.coords)


def _mod_p_jacobian(pencil: Pencil, x: list[int]) -> list[list[int]]:
    return [f.gradient_repr(x) for f in pencil.forms]


def _newton_columns(pencil: Pencil, x0: list[int]) -> tuple[int, ...]:
    """First r-column subset (lexicographic) with invertible Jacobian block."""
    spec = pencil.field
    jac = _mod_p_jacobian(pencil, x0)
    r = pencil.r
    for cols in combinations(range(pencil.n), r):
        block = [[row[c] for c in cols] for row in jac]
        if linalg.det(spec, block) != 0:
            return cols
    raise ValueError("Jacobian has no invertible r x r block at the base zero")


def hensel_lift(system: IntegerQuadraticSystem, x0: list[int], precision: int) -> PadicVector:
    """Lift a nonsingular zero mod p to a common zero mod p^precision.

    Newton steps gain one digit each: with F(x) = 0 mod p^m, solve
    J y = -F(x)/p^m mod p over the fixed column block and set
    x += p^m y.  The block's reduction mod p is checked every step.
    """
    p, n = system.p, system.n
    if precision < 1:
        raise ValueError("precision must be >= 1")
    if not is_nonsingular_zero(system, x0):
        raise ValueError("the base point is not a nonsingular zero mod p")
    pencil = reduce_mod_p(system)
    spec = pencil.field
    cols = _newton_columns(pencil, [c % p for c in x0])
    x = [c % p for c in x0]
    for m in range(1, precision):
        mod_next = p ** (m + 1)
        residual = []
        for i in range(pencil.r):
            v = system.evaluate(i, x, mod_next)
            assert v % p**m == 0, "residual valuation must reach the current step"
            residual.append((v // p**m) % p)
        jac = _mod_p_jacobian(pencil, [c % p for c in x])
        block = [[row[c] for c in cols] for row in jac]
        assert linalg.det(spec, block) != 0, "fixed Jacobian block left the unit group"
        rhs = [spec.neg(c) for c in residual]
        y = linalg.solve_square(spec, block, rhs)
        for c, yc in zip(cols, y):
            x[c] = (x[c] + p**m * yc) % (p**precision)
    lifted = PadicVector(p, precision, x)
    for i in range(pencil.r):
        assert system.evaluate(i, lifted.coords, p**precision) == 0
    return lifted
