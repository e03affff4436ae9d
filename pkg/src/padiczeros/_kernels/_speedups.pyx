# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled enumeration kernels; see `pure` for the reference semantics.

Field arithmetic is table-driven (flattened q*q add/mul tables, length-q
neg/inv tables); enumeration is repr-lexicographic with x_n fastest.
"""

import numpy as np

cimport cython
from libc.stdlib cimport free, malloc

HAVE_SPEEDUPS = True


cdef inline int _rank_small(int *rows, int nrows, int ncols, int q,
                            const unsigned short *add, const unsigned short *mul,
                            const unsigned short *neg, const unsigned short *inv) nogil:
    cdef int rk = 0, col = 0, piv, i, j, c, f, t
    while rk < nrows and col < ncols:
        piv = -1
        for i in range(rk, nrows):
            if rows[i * ncols + col]:
                piv = i
                break
        if piv < 0:
            col += 1
            continue
        if piv != rk:
            for j in range(ncols):
                t = rows[rk * ncols + j]
                rows[rk * ncols + j] = rows[piv * ncols + j]
                rows[piv * ncols + j] = t
        for i in range(rk + 1, nrows):
            c = rows[i * ncols + col]
            if c:
                f = mul[c * q + inv[rows[rk * ncols + col]]]
                for j in range(col, ncols):
                    if rows[rk * ncols + j]:
                        rows[i * ncols + j] = add[rows[i * ncols + j] * q +
                                                  neg[mul[f * q + rows[rk * ncols + j]]]]
        rk += 1
        col += 1
    return rk


cdef inline void _monomials(int *x, int n, int q, const unsigned short *mul, int *mono) nogil:
    cdef int i, j, k = 0, xi
    for i in range(n):
        xi = x[i]
        for j in range(i, n):
            mono[k] = mul[xi * q + x[j]] if xi else 0
            k += 1


cdef inline int _eval_form(const int *cvec, const int *mono, int m, int q,
                           const unsigned short *add, const unsigned short *mul) nogil:
    cdef int acc = 0, t
    for t in range(m):
        if cvec[t] and mono[t]:
            acc = add[acc * q + mul[cvec[t] * q + mono[t]]]
    return acc


cdef inline bint _advance(int *x, int n, int q) nogil:
    cdef int i
    for i in range(n - 1, -1, -1):
        x[i] += 1
        if x[i] < q:
            return True
        x[i] = 0
    return False


def count_common_zeros(int q, int n, coeffs, add, mul, int x1_lo=0, x1_hi=None):
    cdef int[:, ::1] cf = np.ascontiguousarray(coeffs, dtype=np.int32)
    cdef unsigned short[::1] addv = np.ascontiguousarray(add, dtype=np.uint16).reshape(-1)
    cdef unsigned short[::1] mulv = np.ascontiguousarray(mul, dtype=np.uint16).reshape(-1)
    cdef int r = cf.shape[0], m = cf.shape[1]
    cdef int hi = q if x1_hi is None else <int> x1_hi
    cdef long long count = 0
    cdef int f, ok
    cdef int *x
    cdef int *mono
    if x1_lo >= hi:
        return 0
    with nogil:
        x = <int *> malloc(n * sizeof(int))
        mono = <int *> malloc(m * sizeof(int))
        for f in range(n):
            x[f] = 0
        x[0] = x1_lo
        while True:
            _monomials(x, n, q, &mulv[0], mono)
            ok = 1
            for f in range(r):
                if _eval_form(&cf[f, 0], mono, m, q, &addv[0], &mulv[0]):
                    ok = 0
                    break
            if ok:
                count += 1
            if not _advance(x, n, q) or x[0] >= hi:
                break
        free(x)
        free(mono)
    return count


def count_zeros_and_singular(int q, int n, coeffs, mats, add, mul, neg, inv,
                             int x1_lo=0, x1_hi=None):
    cdef int[:, ::1] cf = np.ascontiguousarray(coeffs, dtype=np.int32)
    cdef int[:, ::1] mt = np.ascontiguousarray(mats, dtype=np.int32).reshape(cf.shape[0], -1)
    cdef unsigned short[::1] addv = np.ascontiguousarray(add, dtype=np.uint16).reshape(-1)
    cdef unsigned short[::1] mulv = np.ascontiguousarray(mul, dtype=np.uint16).reshape(-1)
    cdef unsigned short[::1] negv = np.ascontiguousarray(neg, dtype=np.uint16)
    cdef unsigned short[::1] invv = np.ascontiguousarray(inv, dtype=np.uint16)
    cdef int r = cf.shape[0], m = cf.shape[1]
    cdef int hi = q if x1_hi is None else <int> x1_hi
    cdef long long zeros = 0, singular = 0
    cdef int f, i, j, ok, nz, acc, xj, mij
    cdef int *x
    cdef int *mono
    cdef int *rows
    if x1_lo >= hi:
        return 0, 0
    with nogil:
        x = <int *> malloc(n * sizeof(int))
        mono = <int *> malloc(m * sizeof(int))
        rows = <int *> malloc(r * n * sizeof(int))
        for f in range(n):
            x[f] = 0
        x[0] = x1_lo
        while True:
            _monomials(x, n, q, &mulv[0], mono)
            ok = 1
            for f in range(r):
                if _eval_form(&cf[f, 0], mono, m, q, &addv[0], &mulv[0]):
                    ok = 0
                    break
            if ok:
                zeros += 1
                nz = 0
                for i in range(n):
                    if x[i]:
                        nz = 1
                        break
                if nz:
                    for f in range(r):
                        for i in range(n):
                            acc = 0
                            for j in range(n):
                                xj = x[j]
                                mij = mt[f, i * n + j]
                                if xj and mij:
                                    acc = addv[acc * q + mulv[mij * q + xj]]
                            rows[f * n + i] = acc
                    if _rank_small(rows, r, n, q, &addv[0], &mulv[0], &negv[0], &invv[0]) < r:
                        singular += 1
            if not _advance(x, n, q) or x[0] >= hi:
                break
        free(x)
        free(mono)
        free(rows)
    return zeros, singular


def first_nonsingular_zero(int q, int n, coeffs, mats, add, mul, neg, inv):
    cdef int[:, ::1] cf = np.ascontiguousarray(coeffs, dtype=np.int32)
    cdef int[:, ::1] mt = np.ascontiguousarray(mats, dtype=np.int32).reshape(cf.shape[0], -1)
    cdef unsigned short[::1] addv = np.ascontiguousarray(add, dtype=np.uint16).reshape(-1)
    cdef unsigned short[::1] mulv = np.ascontiguousarray(mul, dtype=np.uint16).reshape(-1)
    cdef unsigned short[::1] negv = np.ascontiguousarray(neg, dtype=np.uint16)
    cdef unsigned short[::1] invv = np.ascontiguousarray(inv, dtype=np.uint16)
    cdef int r = cf.shape[0], m = cf.shape[1]
    cdef long long idx = 0, found = -1
    cdef int f, i, j, ok, nz, acc, xj, mij
    cdef int *x
    cdef int *mono
    cdef int *rows
    with nogil:
        x = <int *> malloc(n * sizeof(int))
        mono = <int *> malloc(m * sizeof(int))
        rows = <int *> malloc(r * n * sizeof(int))
        for f in range(n):
            x[f] = 0
        while True:
            _monomials(x, n, q, &mulv[0], mono)
            ok = 1
            for f in range(r):
                if _eval_form(&cf[f, 0], mono, m, q, &addv[0], &mulv[0]):
                    ok = 0
                    break
            if ok:
                nz = 0
                for i in range(n):
                    if x[i]:
                        nz = 1
                        break
                if nz:
                    for f in range(r):
                        for i in range(n):
                            acc = 0
                            for j in range(n):
                                xj = x[j]
                                mij = mt[f, i * n + j]
                                if xj and mij:
                                    acc = addv[acc * q + mulv[mij * q + xj]]
                            rows[f * n + i] = acc
                    if _rank_small(rows, r, n, q, &addv[0], &mulv[0], &negv[0], &invv[0]) == r:
                        found = idx
                        break
            if not _advance(x, n, q):
                break
            idx += 1
        free(x)
        free(mono)
        free(rows)
    return found


def min_violation_scan(int q, int n, int r, coeffs, probes, sub_off, sub_w,
                       add, mul, neg, inv):
    cdef int[:, ::1] cf = np.ascontiguousarray(coeffs, dtype=np.int32)
    cdef int[:, ::1] pts = np.ascontiguousarray(probes, dtype=np.int32).reshape(-1, n)
    cdef long long[::1] off = np.ascontiguousarray(sub_off, dtype=np.int64)
    cdef int[::1] ws = np.ascontiguousarray(sub_w, dtype=np.int32)
    cdef unsigned short[::1] addv = np.ascontiguousarray(add, dtype=np.uint16).reshape(-1)
    cdef unsigned short[::1] mulv = np.ascontiguousarray(mul, dtype=np.uint16).reshape(-1)
    cdef unsigned short[::1] negv = np.ascontiguousarray(neg, dtype=np.uint16)
    cdef unsigned short[::1] invv = np.ascontiguousarray(inv, dtype=np.uint16)
    cdef int m = cf.shape[1], nsubs = ws.shape[0]
    cdef int k, f, t, npts, defect, ptrow
    cdef long long lo, hi
    cdef int max_pts = 0
    cdef int *mono
    cdef int *rows
    cdef int *xpt
    cdef long long hit = -1
    cdef int hit_defect = 0
    for k in range(nsubs):
        if off[k + 1] - off[k] > max_pts:
            max_pts = <int> (off[k + 1] - off[k])
    if max_pts == 0:
        max_pts = 1
    with nogil:
        mono = <int *> malloc(m * sizeof(int))
        rows = <int *> malloc(r * max_pts * sizeof(int))
        xpt = <int *> malloc(n * sizeof(int))
        for k in range(nsubs):
            lo, hi = off[k], off[k + 1]
            npts = <int> (hi - lo)
            for t in range(npts):
                ptrow = <int> (lo + t)
                for f in range(n):
                    xpt[f] = pts[ptrow, f]
                _monomials(xpt, n, q, &mulv[0], mono)
                for f in range(r):
                    rows[f * npts + t] = _eval_form(&cf[f, 0], mono, m, q, &addv[0], &mulv[0])
            if npts:
                defect = r - _rank_small(rows, r, npts, q, &addv[0], &mulv[0], &negv[0], &invv[0])
            else:
                defect = r
            if defect >= 1 and 2 * r * ws[k] < defect * n:
                hit = k
                hit_defect = defect
                break
        free(mono)
        free(rows)
        free(xpt)
    if hit < 0:
        return -1, 0
    return <int> hit, hit_defect
