"""Finite field arithmetic for GF(p^e), including characteristic 2.

Elements are encoded as integers in [0, q): the base-p digits of the repr,
read little-endian, are the coordinates in the power basis of a root of the
field modulus.  The modulus is chosen deterministically as the
lexicographically least monic irreducible polynomial of degree e, the
coefficient vector being read from the constant term upward.  Two
independently constructed fields with the same (p, e) are therefore
interchangeable.

Supported sizes are capped at q <= 2^20; the admissibility bound engine works
on plain integers and does not go through this module, so the cap only
concerns desk-scale enumeration work.

Lookup tables (q x q numpy arrays) are built lazily for q <= 1024 and feed the
enumeration kernels.
"""

from __future__ import annotations

from functools import lru_cache

from .primes import is_prime

Q_CAP = 2**20
TABLE_CAP = 1024


def _poly_trim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _poly_mod(num: list[int], den: list[int], p: int) -> list[int]:
    """Remainder of num by monic den over GF(p)."""
    num = num[:]
    dn = len(den) - 1
    for i in range(len(num) - 1, dn - 1, -1):
        c = num[i] % p
        if c:
            for j in range(dn + 1):
                num[i - dn + j] = (num[i - dn + j] - c * den[j]) % p
    del num[dn:]
    return num


def _poly_is_irreducible(c: list[int], p: int) -> bool:
    """Trial division of the monic polynomial c by every lower-degree monic."""
    deg = len(c) - 1
    if deg == 1:
        return True
    for d in range(1, deg // 2 + 1):
        for idx in range(p**d):
            div, t = [], idx
            for _ in range(d):
                div.append(t % p)
                t //= p
            div.append(1)
            if not _poly_trim(_poly_mod(c, div, p)[:]):
                return False
    return True


def _find_modulus(p: int, e: int) -> tuple[int, ...]:
    """Lexicographically least monic irreducible of degree e over GF(p)."""
    if e == 1:
        return (0, 1)
    # Lex order on (c_0, .., c_{e-1}) with the constant term most significant.
    def candidates():
        for idx in range(p**e):
            digits, t = [], idx
            for _ in range(e):
                digits.append(t % p)
                t //= p
            yield list(reversed(digits))

    for low in candidates():
        cand = low + [1]
        if _poly_is_irreducible(cand, p):
            return tuple(cand)
    raise RuntimeError(f"no irreducible polynomial of degree {e} over GF({p})")


class FieldSpec:
    """The finite field GF(p^e) with its deterministic modulus.

    Immutable after construction; all methods are pure.  Arithmetic is
    exposed both at the repr (plain int) level, used by the hot paths, and
    through :class:`FieldElement` wrappers.
    """

    __slots__ = ("p", "e", "q", "modulus", "_tables", "_nonsquare")

    def __init__(self, p: int, e: int = 1):
        if e < 1:
            raise ValueError(f"extension degree must be >= 1, got {e}")
        if not is_prime(p):
            raise ValueError(f"characteristic must be prime, got {p}")
        if p**e > Q_CAP:
            raise ValueError(f"field size {p}^{e} exceeds the supported cap {Q_CAP}")
        self.p = p
        self.e = e
        self.q = p**e
        self.modulus = _find_modulus(p, e)
        self._tables = None
        self._nonsquare = None

    def __repr__(self):
        return f"GF({self.q})" if self.e > 1 else f"GF({self.p})"

    def __eq__(self, other):
        return isinstance(other, FieldSpec) and (self.p, self.e) == (other.p, other.e)

    def __hash__(self):
        return hash((self.p, self.e))

    # repr-level arithmetic ------------------------------------------------

    def digits(self, a: int) -> list[int]:
        out = []
        for _ in range(self.e):
            out.append(a % self.p)
            a //= self.p
        return out

    def from_digits(self, d: list[int]) -> int:
        a = 0
        for c in reversed(d):
            a = a * self.p + c % self.p
        return a

    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        if self.e == 1:
            return (a + b) % self.p
        return self.from_digits([x + y for x, y in zip(self.digits(a), self.digits(b))])

    def neg(self, a: int) -> int:
        if self.p == 2:
            return a
        if self.e == 1:
            return (-a) % self.p
        return self.from_digits([-x for x in self.digits(a)])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self.e == 1:
            return (a * b) % self.p
        da, db = self.digits(a), self.digits(b)
        prod = [0] * (2 * self.e - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] += x * y
        return self.from_digits(_poly_mod(prod, list(self.modulus), self.p))

    def pow(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self.inv(a), -k
        out, base = 1, a
        while k:
            if k & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            k >>= 1
        return out

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero field element")
        if self.e == 1:
            return pow(a, self.p - 2, self.p)
        return self.pow(a, self.q - 2)

    def frobenius(self, a: int) -> int:
        return self.pow(a, self.p)

    def is_square(self, a: int) -> bool:
        if a == 0 or self.p == 2:
            return True
        return self.pow(a, (self.q - 1) // 2) == 1

    def sqrt(self, a: int) -> int:
        """A square root of a; in odd characteristic the one with smaller repr."""
        if a == 0:
            return 0
        if self.p == 2:
            return self.pow(a, self.q // 2)
        if not self.is_square(a):
            raise ValueError(f"{a} is not a square in {self!r}")
        r = self._tonelli_shanks(a)
        return min(r, self.neg(r))

    def _tonelli_shanks(self, a: int) -> int:
        q1 = self.q - 1
        t, s = q1, 0
        while t % 2 == 0:
            t //= 2
            s += 1
        z = self.least_nonsquare()
        c = self.pow(z, t)
        x = self.pow(a, (t + 1) // 2)
        b = self.pow(a, t)
        m = s
        while b != 1:
            i, b2 = 0, b
            while b2 != 1:
                b2 = self.mul(b2, b2)
                i += 1
            g = self.pow(c, 1 << (m - i - 1))
            x = self.mul(x, g)
            c = self.mul(g, g)
            b = self.mul(b, c)
            m = i
        return x

    def least_nonsquare(self) -> int:
        """Least-repr non-square; odd characteristic only."""
        if self.p == 2:
            raise ValueError("every element is a square in characteristic 2")
        if self._nonsquare is None:
            for a in range(2, self.q):
                if not self.is_square(a):
                    self._nonsquare = a
                    break
        return self._nonsquare

    def absolute_trace(self, a: int) -> int:
        """Tr(a) = a + a^p + ... + a^(p^(e-1)), landing in the prime subfield."""
        t, frob = 0, a
        for _ in range(self.e):
            t = self.add(t, frob)
            frob = self.frobenius(frob)
        assert t < self.p, "trace must land in the prime subfield"
        return t

    def _trace_one_element(self) -> int:
        for a in range(1, self.q):
            if self.absolute_trace(a) == 1:
                return a
        raise RuntimeError("no trace-one element found")  # unreachable

    def solve_artin_schreier(self, w: int) -> int | None:
        """Least-repr u with u^2 + u = w in characteristic 2, or None.

        Solvable exactly when the absolute trace of w vanishes; the returned
        root and root+1 are the two solutions.
        """
        if self.p != 2:
            raise ValueError("Artin-Schreier equations are characteristic-2 only")
        if self.absolute_trace(w) != 0:
            return None
        theta = 1 if self.e == 1 else self._trace_one_element()
        u, s, wpow, thpow = 0, 0, w, theta
        for _ in range(self.e):
            u = self.add(u, self.mul(s, thpow))
            s = self.add(s, wpow)
            wpow = self.mul(wpow, wpow)
            thpow = self.mul(thpow, thpow)
        assert self.add(self.mul(u, u), u) == w
        return min(u, self.add(u, 1))

    def solve_quadratic(self, a: int, b: int, c: int) -> int | None:
        """Least-repr root of a x^2 + b x + c = 0, or None when there is none."""
        if a == 0:
            if b == 0:
                return 0 if c == 0 else None
            return self.mul(self.neg(c), self.inv(b))
        if self.p != 2:
            disc = self.sub(self.mul(b, b), self.mul(4 % self.p, self.mul(a, c)))
            if not self.is_square(disc):
                return None
            root = self.sqrt(disc)
            inv2a = self.inv(self.mul(2 % self.p, a))
            r1 = self.mul(self.add(self.neg(b), root), inv2a)
            r2 = self.mul(self.sub(self.neg(b), root), inv2a)
            return min(r1, r2)
        if b == 0:
            return self.sqrt(self.mul(c, self.inv(a)))
        # x = (b/a) y turns the equation into y^2 + y = ca/b^2.
        w = self.mul(self.mul(c, a), self.inv(self.mul(b, b)))
        y = self.solve_artin_schreier(w)
        if y is None:
            return None
        scale = self.mul(b, self.inv(a))
        return min(self.mul(scale, y), self.mul(scale, self.add(y, 1)))

    # element-level API ----------------------------------------------------

    def element(self, r: int) -> "FieldElement":
        return FieldElement(self, r % self.q if r >= 0 else self.neg((-r) % self.q))

    def zero(self) -> "FieldElement":
        return FieldElement(self, 0)

    def one(self) -> "FieldElement":
        return FieldElement(self, 1)

    def elements(self):
        """All q elements in repr order 0, 1, ..., q-1."""
        for r in range(self.q):
            yield FieldElement(self, r)

    # lookup tables ---------------------------------------------------------

    def tables(self):
        """(add, mul, neg, inv) lookup tables as numpy arrays; q <= TABLE_CAP.

        add and mul are flattened q*q uint16 arrays indexed by a*q+b; neg and
        inv have length q with inv[0] = 0 as a sentinel.
        """
        if self.q > TABLE_CAP:
            raise ValueError(f"lookup tables are limited to q <= {TABLE_CAP}")
        if self._tables is None:
            import numpy as np

            q = self.q
            if self.p == 2:
                r = np.arange(q, dtype=np.uint16)
                add = np.bitwise_xor.outer(r, r).astype(np.uint16)
            else:
                digs = np.zeros((q, self.e), dtype=np.int32)
                t = np.arange(q)
                for i in range(self.e):
                    digs[:, i] = t % self.p
                    t = t // self.p
                summed = (digs[:, None, :] + digs[None, :, :]) % self.p
                weights = self.p ** np.arange(self.e)
                add = (summed * weights).sum(axis=2).astype(np.uint16)
            # exp/log over a primitive element gives the full mul table.
            g = self._primitive_element()
            exp = np.zeros(q - 1, dtype=np.uint16)
            log = np.zeros(q, dtype=np.int64)
            acc = 1
            for k in range(q - 1):
                exp[k] = acc
                log[acc] = k
                acc = self.mul(acc, g)
            assert acc == 1, "primitive element order mismatch"
            la = log[1:]
            mul = np.zeros((q, q), dtype=np.uint16)
            mul[1:, 1:] = exp[(la[:, None] + la[None, :]) % (q - 1)]
            neg = np.array([self.neg(a) for a in range(q)], dtype=np.uint16)
            inv = np.zeros(q, dtype=np.uint16)
            inv[1:] = exp[(-la) % (q - 1)]
            self._tables = (add.reshape(-1), mul.reshape(-1), neg, inv)
        return self._tables

    def _primitive_element(self) -> int:
        n = self.q - 1
        fac = []
        m, d = n, 2
        while d * d <= m:
            if m % d == 0:
                fac.append(d)
                while m % d == 0:
                    m //= d
            d += 1
        if m > 1:
            fac.append(m)
        for g in range(2, self.q):
            if all(self.pow(g, n // f) != 1 for f in fac):
                return g
        if self.q == 2:
            return 1
        raise RuntimeError("no primitive element found")  # unreachable


@lru_cache(maxsize=None)
def field(p: int, e: int = 1) -> FieldSpec:
    """Shared FieldSpec instances; field(p, e) is field(p, e) everywhere."""
    return FieldSpec(p, e)


class FieldElement:
    """An element of a FieldSpec, wrapping its integer repr."""

    __slots__ = ("spec", "repr")

    def __init__(self, spec: FieldSpec, r: int):
        self.spec = spec
        self.repr = r

    def _check(self, other: "FieldElement"):
        if self.spec != other.spec:
            raise ValueError(f"field mismatch: {self.spec!r} vs {other.spec!r}")

    def __add__(self, other):
        self._check(other)
        return FieldElement(self.spec, self.spec.add(self.repr, other.repr))

    def __sub__(self, other):
        self._check(other)
        return FieldElement(self.spec, self.spec.sub(self.repr, other.repr))

    def __neg__(self):
        return FieldElement(self.spec, self.spec.neg(self.repr))

    def __mul__(self, other):
        self._check(other)
        return FieldElement(self.spec, self.spec.mul(self.repr, other.repr))

    def __truediv__(self, other):
        self._check(other)
        return FieldElement(self.spec, self.spec.mul(self.repr, self.spec.inv(other.repr)))

    def __pow__(self, k: int):
        return FieldElement(self.spec, self.spec.pow(self.repr, k))

    def inverse(self) -> "FieldElement":
        return FieldElement(self.spec, self.spec.inv(self.repr))

    def is_square(self) -> bool:
        return self.spec.is_square(self.repr)

    def sqrt(self) -> "FieldElement":
        return FieldElement(self.spec, self.spec.sqrt(self.repr))

    def absolute_trace(self) -> "FieldElement":
        return FieldElement(self.spec, self.spec.absolute_trace(self.repr))

    def __eq__(self, other):
        if isinstance(other, int):
            return self.repr == other
        return isinstance(other, FieldElement) and self.spec == other.spec and self.repr == other.repr

    def __hash__(self):
        return hash((self.spec.p, self.spec.e, self.repr))

    def __bool__(self):
        return self.repr != 0

    def __repr__(self):
        return f"{self.repr}@{self.spec!r}"
