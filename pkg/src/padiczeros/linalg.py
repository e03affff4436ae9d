"""Dense linear algebra over a FieldSpec, plus subspace enumeration.

Matrices are lists of rows of integer reprs; all routines take the FieldSpec
explicitly.  Sizes here are desk scale (n up to a few dozen), so everything
is straightforward Gaussian elimination.
"""

from __future__ import annotations

from itertools import combinations, product

from .fields import FieldSpec


def identity_rows(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_vec(spec: FieldSpec, rows: list[list[int]], x: list[int]) -> list[int]:
    out = []
    for row in rows:
        acc = 0
        for a, b in zip(row, x):
            if a and b:
                acc = spec.add(acc, spec.mul(a, b))
        out.append(acc)
    return out


def mat_mul(spec: FieldSpec, a: list[list[int]], b: list[list[int]]) -> list[list[int]]:
    n, k, m = len(a), len(b), len(b[0])
    out = [[0] * m for _ in range(n)]
    for i in range(n):
        for t in range(k):
            c = a[i][t]
            if c:
                brow = b[t]
                row = out[i]
                for j in range(m):
                    if brow[j]:
                        row[j] = spec.add(row[j], spec.mul(c, brow[j]))
    return out


def rref(spec: FieldSpec, rows: list[list[int]]) -> tuple[list[list[int]], list[int]]:
    """Reduced row echelon form; returns (rows, pivot column indices)."""
    m = [row[:] for row in rows]
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, nrows) if m[i][c]), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = spec.inv(m[r][c])
        m[r] = [spec.mul(inv, v) for v in m[r]]
        for i in range(nrows):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [spec.sub(v, spec.mul(f, w)) for v, w in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return m, pivots


def rank(spec: FieldSpec, rows: list[list[int]]) -> int:
    if not rows:
        return 0
    return len(rref(spec, rows)[1])


def det(spec: FieldSpec, rows: list[list[int]]) -> int:
    n = len(rows)
    m = [row[:] for row in rows]
    d = 1
    for c in range(n):
        pivot = next((i for i in range(c, n) if m[i][c]), None)
        if pivot is None:
            return 0
        if pivot != c:
            m[c], m[pivot] = m[pivot], m[c]
            d = spec.neg(d)
        d = spec.mul(d, m[c][c])
        inv = spec.inv(m[c][c])
        for i in range(c + 1, n):
            if m[i][c]:
                f = spec.mul(inv, m[i][c])
                m[i] = [spec.sub(v, spec.mul(f, w)) for v, w in zip(m[i], m[c])]
    return d


def nullspace_basis(spec: FieldSpec, rows: list[list[int]]) -> list[list[int]]:
    """Basis of {x : rows.x = 0}, one vector per free column, deterministic."""
    ncols = len(rows[0]) if rows else 0
    red, pivots = rref(spec, rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [0] * ncols
        v[fc] = 1
        for r, pc in enumerate(pivots):
            v[pc] = spec.neg(red[r][fc])
        basis.append(v)
    return basis


def inverse(spec: FieldSpec, rows: list[list[int]]) -> list[list[int]]:
    n = len(rows)
    aug = [rows[i][:] + identity_rows(n)[i] for i in range(n)]
    red, pivots = rref(spec, aug)
    if pivots[:n] != list(range(n)):
        raise ValueError("matrix is singular")
    return [row[n:] for row in red[:n]]


def solve_square(spec: FieldSpec, rows: list[list[int]], rhs: list[int]) -> list[int]:
    """Solution of rows.x = rhs for an invertible square matrix."""
    n = len(rows)
    aug = [rows[i][:] + [rhs[i]] for i in range(n)]
    red, pivots = rref(spec, aug)
    if pivots[:n] != list(range(n)):
        raise ValueError("matrix is singular")
    return [red[i][n] for i in range(n)]


def is_invertible(spec: FieldSpec, rows: list[list[int]]) -> bool:
    return len(rows) == len(rows[0]) and rank(spec, rows) == len(rows)


def gaussian_binomial(n: int, k: int, q: int) -> int:
    """Number of k-dimensional subspaces of GF(q)^n."""
    if k < 0 or k > n:
        return 0
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    assert num % den == 0
    return num // den


def subspace_count(n: int, q: int) -> int:
    return sum(gaussian_binomial(n, d, q) for d in range(n + 1))


def enumerate_subspace_bases(spec: FieldSpec, n: int, d: int):
    """All d-dimensional subspaces of GF(q)^n, one RREF basis each.

    Deterministic order: pivot column sets ascending lexicographically, then
    the free entries as an ascending repr odometer (row-major).  Yields lists
    of d basis rows.
    """
    if d == 0:
        yield []
        return
    for pivots in combinations(range(n), d):
        free_cells = [
            (i, c)
            for i in range(d)
            for c in range(pivots[i] + 1, n)
            if c not in pivots
        ]
        base = [[0] * n for _ in range(d)]
        for i, pc in enumerate(pivots):
            base[i][pc] = 1
        if not free_cells:
            yield [row[:] for row in base]
            continue
        for assignment in product(range(spec.q), repeat=len(free_cells)):
            rows = [row[:] for row in base]
            for (i, c), v in zip(free_cells, assignment):
                rows[i][c] = v
            yield rows
