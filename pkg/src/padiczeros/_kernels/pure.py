"""Pure-Python enumeration kernels.

Same call signatures and results as the compiled module `_speedups`; selected
at import time when the extension is unavailable (or PADICZEROS_PURE is set).
All field arithmetic is table-driven: `add` and `mul` are flattened q*q
arrays indexed by a*q + b, `neg` and `inv` have length q.

Point enumeration is repr-lexicographic on (x_1, ..., x_n), i.e. x_n varies
fastest; the x1 window [x1_lo, x1_hi) lets callers partition work.
"""

from __future__ import annotations

HAVE_SPEEDUPS = False


def _as_lists(arr):
    return arr.tolist() if hasattr(arr, "tolist") else list(arr)


def _row_rank(rows, q, add, mul, neg, inv):
    """Rank of a small matrix of reprs; destroys rows."""
    nrows = len(rows)
    ncols = len(rows[0]) if nrows else 0
    rk = 0
    col = 0
    while rk < nrows and col < ncols:
        piv = -1
        for i in range(rk, nrows):
            if rows[i][col]:
                piv = i
                break
        if piv < 0:
            col += 1
            continue
        rows[rk], rows[piv] = rows[piv], rows[rk]
        pr = rows[rk]
        pinv = inv[pr[col]]
        for i in range(rk + 1, nrows):
            c = rows[i][col]
            if c:
                f = mul[c * q + pinv]
                ri = rows[i]
                for j in range(col, ncols):
                    if pr[j]:
                        ri[j] = add[ri[j] * q + neg[mul[f * q + pr[j]]]]
        rk += 1
        col += 1
    return rk


def _eval_monomials(x, n, q, mul):
    mono = []
    for i in range(n):
        xi = x[i]
        row = xi * q
        for j in range(i, n):
            mono.append(mul[row + x[j]] if xi else 0)
    return mono


def _eval_form(cvec, mono, q, add, mul):
    acc = 0
    for c, m in zip(cvec, mono):
        if c and m:
            acc = add[acc * q + mul[c * q + m]]
    return acc


def _advance(x, n, q):
    """Lexicographic successor: last coordinate fastest."""
    for i in range(n - 1, -1, -1):
        x[i] += 1
        if x[i] < q:
            return True
        x[i] = 0
    return False


def count_common_zeros(q, n, coeffs, add, mul, x1_lo=0, x1_hi=None):
    """Number of x in F^n (with x1 in the window) where all forms vanish."""
    add, mul = _as_lists(add), _as_lists(mul)
    forms = [_as_lists(row) for row in coeffs]
    if x1_hi is None:
        x1_hi = q
    count = 0
    x = [0] * n
    x[0] = x1_lo
    if x1_lo >= x1_hi:
        return 0
    while True:
        mono = _eval_monomials(x, n, q, mul)
        for cvec in forms:
            if _eval_form(cvec, mono, q, add, mul):
                break
        else:
            count += 1
        if not _advance(x, n, q) or x[0] >= x1_hi:
            return count


def _gradient_rows(mats, x, n, q, add, mul):
    rows = []
    for mat in mats:
        g = []
        for i in range(n):
            acc = 0
            base = i * n
            for j in range(n):
                xj = x[j]
                mij = mat[base + j]
                if xj and mij:
                    acc = add[acc * q + mul[mij * q + xj]]
            g.append(acc)
        rows.append(g)
    return rows


def count_zeros_and_singular(q, n, coeffs, mats, add, mul, neg, inv, x1_lo=0, x1_hi=None):
    """(common zero count, count of nonzero common zeros with deficient Jacobian)."""
    add, mul = _as_lists(add), _as_lists(mul)
    neg, inv = _as_lists(neg), _as_lists(inv)
    forms = [_as_lists(row) for row in coeffs]
    flat_mats = [_as_lists(m) for m in (mats.reshape(len(forms), -1) if hasattr(mats, "reshape") else mats)]
    r = len(forms)
    if x1_hi is None:
        x1_hi = q
    zeros = singular = 0
    x = [0] * n
    x[0] = x1_lo
    if x1_lo >= x1_hi:
        return 0, 0
    while True:
        mono = _eval_monomials(x, n, q, mul)
        for cvec in forms:
            if _eval_form(cvec, mono, q, add, mul):
                break
        else:
            zeros += 1
            if any(x):
                rows = _gradient_rows(flat_mats, x, n, q, add, mul)
                if _row_rank(rows, q, add, mul, neg, inv) < r:
                    singular += 1
        if not _advance(x, n, q) or x[0] >= x1_hi:
            return zeros, singular


def first_nonsingular_zero(q, n, coeffs, mats, add, mul, neg, inv):
    """Lexicographic index of the first nonsingular common zero, or -1."""
    add, mul = _as_lists(add), _as_lists(mul)
    neg, inv = _as_lists(neg), _as_lists(inv)
    forms = [_as_lists(row) for row in coeffs]
    flat_mats = [_as_lists(m) for m in (mats.reshape(len(forms), -1) if hasattr(mats, "reshape") else mats)]
    r = len(forms)
    x = [0] * n
    idx = 0
    while True:
        mono = _eval_monomials(x, n, q, mul)
        for cvec in forms:
            if _eval_form(cvec, mono, q, add, mul):
                break
        else:
            if any(x):
                rows = _gradient_rows(flat_mats, x, n, q, add, mul)
                if _row_rank(rows, q, add, mul, neg, inv) == r:
                    return idx
        if not _advance(x, n, q):
            return -1
        idx += 1


def min_violation_scan(q, n, r, coeffs, probes, sub_off, sub_w, add, mul, neg, inv):
    """First subspace whose vanishing defect s violates 2 r w < s n.

    probes holds the evaluation points of all subspaces back to back;
    sub_off[k]:sub_off[k+1] indexes subspace k, whose codimension is
    sub_w[k].  Returns (subspace index, defect) or (-1, 0).
    """
    add, mul = _as_lists(add), _as_lists(mul)
    neg, inv = _as_lists(neg), _as_lists(inv)
    forms = [_as_lists(row) for row in coeffs]
    pts = [_as_lists(row) for row in probes]
    off = _as_lists(sub_off)
    ws = _as_lists(sub_w)
    for k in range(len(ws)):
        lo, hi = off[k], off[k + 1]
        rows = []
        for cvec in forms:
            row = []
            for t in range(lo, hi):
                mono = _eval_monomials(pts[t], n, q, mul)
                row.append(_eval_form(cvec, mono, q, add, mul))
            rows.append(row)
        defect = r - (_row_rank(rows, q, add, mul, neg, inv) if hi > lo else 0)
        if defect >= 1 and 2 * r * ws[k] < defect * n:
            return k, defect
    return -1, 0
