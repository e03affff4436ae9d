"""Quadratic forms over a finite field.

A form Q = sum a_ij x_i x_j (1 <= i <= j <= n) is stored as a sparse dict of
nonzero coefficient reprs.  The module provides:

  * evaluation, the associated symmetric matrix (skew-symmetric with zero
    diagonal in characteristic 2), gradients, changes of variables and
    restriction to subspaces;
  * canonical reduction to  x1 x2 + x3 x4 + ... + tail  with tail one of
    0, d*x^2, x^2 + x y + mu y^2 (mu making the binary tail anisotropic),
    together with the explicit change of variables realising it;
  * rank, both from the canonical form and independently from minor /
    half-minor vanishing conditions, in every characteristic;
  * the exact closed-form zero count of a single form.

In odd characteristic an odd-rank form is only equivalent to a square tail
d*x^2 up to the square class of d, so the canonical tail carries a scale that
is either 1 or the least non-square.  In characteristic 2 the scale is
always 1.
"""

from __future__ import annotations

from itertools import combinations

from . import linalg
from .fields import FieldElement, FieldSpec
from .halfminors import half_minor_polynomial


class QuadraticForm:
    """A quadratic form in n variables over a finite field."""

    __slots__ = ("field", "n", "coeffs")

    def __init__(self, field: FieldSpec, n: int, coeffs=None):
        if n < 0:
            raise ValueError("variable count must be non-negative")
        self.field = field
        self.n = n
        store: dict[tuple[int, int], int] = {}
        for (i, j), v in (coeffs or {}).items():
            if not (1 <= i <= j <= n):
                raise ValueError(f"coefficient index ({i},{j}) out of range for n={n}")
            r = v.repr if isinstance(v, FieldElement) else v % field.q
            if isinstance(v, FieldElement) and v.spec != field:
                raise ValueError("coefficient from a different field")
            if r:
                store[(i, j)] = r
        self.coeffs = store

    @classmethod
    def from_terms(cls, field: FieldSpec, n: int, terms) -> "QuadraticForm":
        """terms is an iterable of (i, j, repr)."""
        return cls(field, n, {(i, j): v for i, j, v in terms})

    def is_zero(self) -> bool:
        return not self.coeffs

    def coefficient(self, i: int, j: int) -> FieldElement:
        return FieldElement(self.field, self.coeffs.get((min(i, j), max(i, j)), 0))

    def __eq__(self, other):
        return (
            isinstance(other, QuadraticForm)
            and self.field == other.field
            and self.n == other.n
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.field, self.n, tuple(sorted(self.coeffs.items()))))

    def __repr__(self):
        if not self.coeffs:
            return f"QuadraticForm(0; n={self.n}, {self.field!r})"
        parts = []
        for (i, j), v in sorted(self.coeffs.items()):
            mono = f"x{i}^2" if i == j else f"x{i}x{j}"
            parts.append(f"{v}*{mono}" if v != 1 else mono)
        return f"QuadraticForm({' + '.join(parts)}; n={self.n}, {self.field!r})"

    # evaluation ------------------------------------------------------------

    def evaluate_repr(self, x: list[int]) -> int:
        if len(x) != self.n:
            raise ValueError(f"expected {self.n} coordinates, got {len(x)}")
        spec = self.field
        acc = 0
        for (i, j), a in self.coeffs.items():
            xi, xj = x[i - 1], x[j - 1]
            if xi and xj:
                acc = spec.add(acc, spec.mul(a, spec.mul(xi, xj)))
        return acc

    def evaluate(self, x) -> FieldElement:
        reprs = [v.repr if isinstance(v, FieldElement) else v for v in x]
        return FieldElement(self.field, self.evaluate_repr(reprs))

    def associated_matrix(self) -> "AssociatedMatrix":
        """The symmetric matrix M with M_ij = a_ij (i<j) and M_ii = 2 a_ii."""
        spec = self.field
        two = 2 % spec.p
        rows = [[0] * self.n for _ in range(self.n)]
        for (i, j), a in self.coeffs.items():
            if i == j:
                rows[i - 1][i - 1] = spec.mul(two, a)
            else:
                rows[i - 1][j - 1] = a
                rows[j - 1][i - 1] = a
        return AssociatedMatrix(spec, rows)

    def gradient_repr(self, x: list[int]) -> list[int]:
        """M.x, which is the formal gradient in every characteristic."""
        return linalg.mat_vec(self.field, self.associated_matrix().rows, x)

    def gradient(self, x) -> list[FieldElement]:
        reprs = [v.repr if isinstance(v, FieldElement) else v for v in x]
        return [FieldElement(self.field, r) for r in self.gradient_repr(reprs)]

    def polar(self, u: list[int], v: list[int], matrix_rows=None) -> int:
        """The bilinear form Q(u+v) - Q(u) - Q(v) = u^T M v, at repr level."""
        rows = matrix_rows if matrix_rows is not None else self.associated_matrix().rows
        spec = self.field
        acc = 0
        mv = linalg.mat_vec(spec, rows, v)
        for a, b in zip(u, mv):
            if a and b:
                acc = spec.add(acc, spec.mul(a, b))
        return acc

    # transformations --------------------------------------------------------

    def change_of_variables(self, t_rows: list[list[int]]) -> "QuadraticForm":
        """The form x -> Q(T x), with coefficients recollected into i <= j."""
        spec = self.field
        n = self.n
        if not linalg.is_invertible(spec, t_rows):
            raise ValueError("change of variables must be invertible")
        acc: dict[tuple[int, int], int] = {}
        for (i, j), a in self.coeffs.items():
            ri, rj = t_rows[i - 1], t_rows[j - 1]
            for k in range(n):
                tik = ri[k]
                if not tik:
                    continue
                for l in range(n):
                    tjl = rj[l]
                    if not tjl:
                        continue
                    key = (k + 1, l + 1) if k <= l else (l + 1, k + 1)
                    term = spec.mul(a, spec.mul(tik, tjl))
                    prev = acc.get(key, 0)
                    new = spec.add(prev, term)
                    if new:
                        acc[key] = new
                    else:
                        acc.pop(key, None)
        return QuadraticForm(spec, n, acc)

    def restrict(self, basis: list[list[int]]) -> "QuadraticForm":
        """The form y -> Q(sum y_i b_i) in len(basis) variables."""
        spec = self.field
        d = len(basis)
        for b in basis:
            if len(b) != self.n:
                raise ValueError("basis vectors must have n coordinates")
        if linalg.rank(spec, basis) != d:
            raise ValueError("restriction basis must be linearly independent")
        rows = self.associated_matrix().rows
        acc: dict[tuple[int, int], int] = {}
        for i in range(d):
            v = self.evaluate_repr(basis[i])
            if v:
                acc[(i + 1, i + 1)] = v
            for j in range(i + 1, d):
                b = self.polar(basis[i], basis[j], rows)
                if b:
                    acc[(i + 1, j + 1)] = b
        return QuadraticForm(spec, d, acc)

    def scale(self, c: int) -> "QuadraticForm":
        spec = self.field
        return QuadraticForm(
            spec, self.n, {k: spec.mul(c, v) for k, v in self.coeffs.items()}
        )

    def add(self, other: "QuadraticForm") -> "QuadraticForm":
        if self.field != other.field or self.n != other.n:
            raise ValueError("forms must share field and variable count")
        spec = self.field
        acc = dict(self.coeffs)
        for k, v in other.coeffs.items():
            new = spec.add(acc.get(k, 0), v)
            if new:
                acc[k] = new
            else:
                acc.pop(k, None)
        return QuadraticForm(spec, self.n, acc)


class AssociatedMatrix:
    """Symmetric matrix attached to a quadratic form (zero diagonal if p=2)."""

    __slots__ = ("spec", "rows")

    def __init__(self, spec: FieldSpec, rows: list[list[int]]):
        self.spec = spec
        self.rows = rows

    @property
    def n(self) -> int:
        return len(self.rows)

    def rank(self) -> int:
        return linalg.rank(self.spec, self.rows)

    def nullspace_basis(self) -> list[list[int]]:
        return linalg.nullspace_basis(self.spec, self.rows)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        return isinstance(other, AssociatedMatrix) and self.spec == other.spec and self.rows == other.rows

    def __repr__(self):
        return f"AssociatedMatrix({self.rows})"


class CanonicalForm:
    """Result of canonical reduction.

    m hyperbolic planes followed by a tail: kind "empty", "square" (with a
    scale repr: always 1 in characteristic 2, 1 or the least non-square in odd
    characteristic) or "irreducible" (with the normalised mu repr).  The
    transform satisfies Q(T y) = shape(y) exactly.
    """

    __slots__ = ("field", "n", "m", "tail_kind", "tail_param", "transform", "rank", "type_tag")

    def __init__(self, field, n, m, tail_kind, tail_param, transform, rank, type_tag):
        self.field = field
        self.n = n
        self.m = m
        self.tail_kind = tail_kind
        self.tail_param = tail_param
        self.transform = transform
        self.rank = rank
        self.type_tag = type_tag

    def shape(self) -> QuadraticForm:
        """The canonical shape as a quadratic form in n variables."""
        coeffs = {}
        for i in range(self.m):
            coeffs[(2 * i + 1, 2 * i + 2)] = 1
        c = 2 * self.m + 1
        if self.tail_kind == "square":
            coeffs[(c, c)] = self.tail_param
        elif self.tail_kind == "irreducible":
            coeffs[(c, c)] = 1
            coeffs[(c, c + 1)] = 1
            coeffs[(c + 1, c + 1)] = self.tail_param
        return QuadraticForm(self.field, self.n, coeffs)

    def verify(self, original: QuadraticForm) -> bool:
        return original.change_of_variables(self.transform) == self.shape()

    def __repr__(self):
        return (
            f"CanonicalForm(m={self.m}, tail={self.tail_kind}"
            + (f"({self.tail_param})" if self.tail_kind != "empty" else "")
            + f", rank={self.rank}, {self.type_tag})"
        )


def _least_trace_one(spec: FieldSpec) -> int:
    for a in range(1, spec.q):
        if spec.absolute_trace(a) == 1:
            return a
    raise RuntimeError("no trace-one element")  # unreachable


def _least_anisotropic_mu(spec: FieldSpec) -> int:
    """Least mu making x^2 + x y + mu y^2 irreducible over the field."""
    if spec.p == 2:
        return _least_trace_one(spec)
    four = 4 % spec.p
    for mu in range(spec.q):
        if not spec.is_square(spec.sub(1, spec.mul(four, mu))):
            return mu
    raise RuntimeError("no anisotropic binary form")  # unreachable


def _scale_vec(spec, c, v):
    return [spec.mul(c, x) for x in v]


def _add_vec(spec, u, v):
    return [spec.add(a, b) for a, b in zip(u, v)]


class _Reducer:
    """Workspace for one canonicalization; operates on repr vectors."""

    def __init__(self, form: QuadraticForm):
        self.form = form
        self.spec = form.field
        self.n = form.n
        self.mrows = form.associated_matrix().rows

    def value(self, v):
        return self.form.evaluate_repr(v)

    def pair(self, u, v):
        return self.form.polar(u, v, self.mrows)

    def combo(self, basis, coords):
        spec = self.spec
        out = [0] * self.n
        for c, b in zip(coords, basis):
            if c:
                out = _add_vec(spec, out, _scale_vec(spec, c, b))
        return out

    def find_isotropic(self, basis):
        """Nonzero isotropic vector in span(basis), or None (anisotropic dim<=2).

        Deterministic: single vectors, then pairs, then a scan over the span
        of the first three basis vectors.
        """
        spec = self.spec
        vals = [self.value(b) for b in basis]
        for b, q in zip(basis, vals):
            if q == 0:
                return b
        for i, j in combinations(range(len(basis)), 2):
            alpha = spec.solve_quadratic(vals[i], self.pair(basis[i], basis[j]), vals[j])
            if alpha is not None:
                return _add_vec(spec, _scale_vec(spec, alpha, basis[i]), basis[j])
        if len(basis) < 3:
            return None
        b1, b2, b3 = basis[0], basis[1], basis[2]
        b12, b13, b23 = self.pair(b1, b2), self.pair(b1, b3), self.pair(b2, b3)
        for beta in range(spec.q):
            bb = spec.mul(beta, beta)
            cc = spec.add(vals[0], spec.add(spec.mul(bb, vals[2]), spec.mul(beta, b13)))
            alpha = spec.solve_quadratic(vals[1], spec.add(b12, spec.mul(beta, b23)), cc)
            if alpha is not None:
                v = _add_vec(spec, b1, _scale_vec(spec, alpha, b2))
                return _add_vec(spec, v, _scale_vec(spec, beta, b3))
        raise AssertionError("regular form of dimension >= 3 must be isotropic")

    def split_plane(self, basis, v):
        """Given isotropic v in span(basis), return ((v, w), complement basis)."""
        spec = self.spec
        w = None
        for b in basis:
            if self.pair(v, b):
                w = b
                break
        assert w is not None, "polar form degenerate on the working block"
        w = _scale_vec(spec, spec.inv(self.pair(v, w)), w)
        qw = self.value(w)
        if qw:
            w = _add_vec(spec, w, _scale_vec(spec, spec.neg(qw), v))
        rows = [[self.pair(v, b) for b in basis], [self.pair(w, b) for b in basis]]
        comp = [self.combo(basis, coords) for coords in linalg.nullspace_basis(spec, rows)]
        assert len(comp) == len(basis) - 2
        return (v, w), comp

    def represent_one(self, b1, b2):
        """Vector v in span(b1, b2) with Q(v) = 1; odd characteristic, Q anisotropic."""
        spec = self.spec
        q1, q2 = self.value(b1), self.value(b2)
        if spec.is_square(spec.inv(q1)):
            return _scale_vec(spec, spec.sqrt(spec.inv(q1)), b1)
        if spec.is_square(spec.inv(q2)):
            return _scale_vec(spec, spec.sqrt(spec.inv(q2)), b2)
        b12 = self.pair(b1, b2)
        for gamma in range(1, spec.q):
            gg = spec.mul(gamma, gamma)
            alpha = spec.solve_quadratic(
                q1, spec.mul(gamma, b12), spec.sub(spec.mul(gg, q2), 1)
            )
            if alpha is not None:
                return _add_vec(spec, _scale_vec(spec, alpha, b1), _scale_vec(spec, gamma, b2))
        raise AssertionError("anisotropic binary form represents every nonzero value")


def canonicalize(form: QuadraticForm) -> CanonicalForm:
    """Reduce to hyperbolic planes plus a 0/1/2-variable anisotropic tail."""
    red = _Reducer(form)
    spec, n = form.field, form.n

    null0 = linalg.nullspace_basis(spec, red.mrows)
    square_vec = None
    radical = []
    if spec.p == 2:
        # On the polar radical, sqrt(Q(.)) is linear; split off its kernel.
        pivot = None
        for b in null0:
            if red.value(b):
                pivot = b
                break
        if pivot is None:
            radical = null0
        else:
            qp = red.value(pivot)
            square_vec = _scale_vec(spec, spec.inv(spec.sqrt(qp)), pivot)
            sp = spec.sqrt(qp)
            for b in null0:
                if b is pivot:
                    continue
                c = spec.mul(spec.sqrt(red.value(b)), spec.inv(sp))
                radical.append(_add_vec(spec, b, _scale_vec(spec, spec.neg(c), pivot)))
    else:
        for b in null0:
            assert red.value(b) == 0
        radical = null0

    _, pivots = linalg.rref(spec, red.mrows)
    working = []
    for c in pivots:
        e = [0] * n
        e[c] = 1
        working.append(e)

    planes = []
    anis = None  # up to two vectors spanning the anisotropic leftover
    while working:
        if len(working) == 1:
            anis = [working[0]]
            break
        v = red.find_isotropic(working)
        if v is None:
            anis = list(working)
            break
        plane, working = red.split_plane(working, v)
        planes.append(plane)

    # Tail assembly.
    tail_kind, tail_param, tail_vecs = "empty", None, []
    if spec.p == 2:
        if anis is not None and square_vec is not None:
            # rank-3 block: anisotropic binary + an orthogonal square is isotropic.
            b1, b2 = anis
            alpha = spec.sqrt(spec.inv(red.value(b1)))
            v = _add_vec(spec, _scale_vec(spec, alpha, b1), square_vec)
            assert red.value(v) == 0
            plane, comp = red.split_plane([b1, b2, square_vec], v)
            planes.append(plane)
            (u,) = comp
            qu = red.value(u)
            assert qu != 0
            square_vec, anis = _scale_vec(spec, spec.inv(spec.sqrt(qu)), u), None
        if anis is not None:
            b1, b2 = anis
            b1 = _scale_vec(spec, spec.inv(spec.sqrt(red.value(b1))), b1)
            b2 = _scale_vec(spec, spec.inv(red.pair(b1, b2)), b2)
            mu = red.value(b2)
            assert spec.absolute_trace(mu) == 1
            mu0 = _least_anisotropic_mu(spec)
            eps = spec.solve_artin_schreier(spec.sub(mu, mu0))
            b2 = _add_vec(spec, b2, _scale_vec(spec, eps, b1))
            tail_kind, tail_param, tail_vecs = "irreducible", mu0, [b1, b2]
        elif square_vec is not None:
            tail_kind, tail_param, tail_vecs = "square", 1, [square_vec]
    else:
        if anis is not None and len(anis) == 1:
            u = anis[0]
            d = red.value(u)
            if spec.is_square(d):
                u = _scale_vec(spec, spec.inv(spec.sqrt(d)), u)
                tail_param = 1
            else:
                nu = spec.least_nonsquare()
                u = _scale_vec(spec, spec.inv(spec.sqrt(spec.mul(d, spec.inv(nu)))), u)
                tail_param = nu
            tail_kind, tail_vecs = "square", [u]
        elif anis is not None:
            v1 = red.represent_one(anis[0], anis[1])
            rows = [[red.pair(v1, b) for b in anis]]
            (coords,) = linalg.nullspace_basis(spec, rows)
            w0 = red.combo(anis, coords)
            e = red.value(w0)
            mu0 = _least_anisotropic_mu(spec)
            inv4 = spec.inv(4 % spec.p)
            e_target = spec.sub(mu0, inv4)
            delta = spec.sqrt(spec.mul(e_target, spec.inv(e)))
            c2 = _add_vec(
                spec, _scale_vec(spec, spec.inv(2 % spec.p), v1), _scale_vec(spec, delta, w0)
            )
            tail_kind, tail_param, tail_vecs = "irreducible", mu0, [v1, c2]

    columns = []
    for v, w in planes:
        columns.append(v)
        columns.append(w)
    columns.extend(tail_vecs)
    columns.extend(radical)
    assert len(columns) == n, "basis bookkeeping lost a dimension"
    t_rows = [[columns[j][i] for j in range(n)] for i in range(n)]

    m = len(planes)
    rk = 2 * m + {"empty": 0, "square": 1, "irreducible": 2}[tail_kind]
    if rk == 0:
        tag = "zero"
    elif rk % 2 == 1:
        tag = "odd"
    else:
        tag = "even_nonsplit" if tail_kind == "irreducible" else "even_split"
    return CanonicalForm(spec, n, m, tail_kind, tail_param, t_rows, rk, tag)


def rank(form: QuadraticForm) -> int:
    """Rank: the minimal number of variables after an invertible substitution."""
    return canonicalize(form).rank


def rank_le_via_minors(form: QuadraticForm, bound: int) -> bool:
    """Decide rank(Q) <= R via vanishing minors of the associated matrix.

    Odd characteristic: all (R+1)x(R+1) minors vanish.  Characteristic 2 and
    R odd: all RxR minors vanish.  Characteristic 2 and R even: all (R+1)
    sized minors with distinct row/column sets, plus the principal
    half-minor forms, vanish at the coefficients of Q.  Subset pairs are
    scanned in lexicographic order with early exit on the first witness.
    """
    n, spec = form.n, form.field
    if not 0 <= bound <= n:
        raise ValueError(f"rank bound must be in [0, {n}], got {bound}")
    if bound == n:
        return True
    mrows = form.associated_matrix().rows

    def minor_det(rows_idx, cols_idx):
        sub = [[mrows[i][j] for j in cols_idx] for i in rows_idx]
        return linalg.det(spec, sub)

    if spec.p != 2:
        size = bound + 1
        for rows_idx in combinations(range(n), size):
            for cols_idx in combinations(range(n), size):
                if minor_det(rows_idx, cols_idx):
                    return False
        return True
    if bound % 2 == 1:
        size = bound
        for rows_idx in combinations(range(n), size):
            for cols_idx in combinations(range(n), size):
                if minor_det(rows_idx, cols_idx):
                    return False
        return True
    size = bound + 1
    half = half_minor_polynomial(size)
    for rows_idx in combinations(range(n), size):
        for cols_idx in combinations(range(n), size):
            if rows_idx == cols_idx:
                idx = rows_idx

                def coeff(a, b, idx=idx):
                    return form.coeffs.get((idx[a] + 1, idx[b] + 1), 0)

                if half.evaluate(spec, coeff):
                    return False
            elif minor_det(rows_idx, cols_idx):
                return False
    return True


def count_zeros_closed(form: QuadraticForm) -> int:
    """Exact number of zeros of Q in F^n, from rank and split type alone."""
    q, k = form.field.q, form.n
    canon = canonicalize(form)
    if canon.rank == 0:
        return q**k
    if canon.rank % 2 == 1:
        return q ** (k - 1)
    half_rank = canon.rank // 2
    deviation = (q - 1) * q ** (k - 1 - half_rank)
    if canon.type_tag == "even_split":
        return q ** (k - 1) + deviation
    return q ** (k - 1) - deviation
