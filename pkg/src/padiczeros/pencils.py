"""Systems of quadratic forms over one finite field.

Covers linear combinations of the system's forms, exact rank spectra over all
nonzero coefficient vectors, exact and brute-force common zero counts, the
error window tying the two to the spectrum, nonsingular zero search, the
minimization condition (for every subspace X of codimension w, the number s
of independent pencil forms vanishing on X must satisfy w >= s*n/2r), and
empirical verification of the spectrum bounds and the zero-count lower bound
that the admissibility engine consumes.

Enumeration-heavy paths go through the kernels in `_kernels` (table-driven,
compiled when available); fields too large for lookup tables fall back to
direct arithmetic.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from . import linalg
from ._kernels import impl as kernels
from .errors import CapExceededError
from .fields import TABLE_CAP, FieldElement, FieldSpec
from .forms import QuadraticForm, canonicalize, count_zeros_closed
from .primes import ceil_div

DEFAULT_POINT_CAP = 10**7
DEFAULT_COMBO_CAP = 10**7
DEFAULT_SUBSPACE_CAP = 10**6
DEFAULT_TRIALS = 10**6


class Pencil:
    """r quadratic forms in n variables over one field."""

    __slots__ = ("field", "n", "r", "forms")

    def __init__(self, forms: list[QuadraticForm]):
        if not forms:
            raise ValueError("a pencil needs at least one form")
        f0 = forms[0]
        for f in forms:
            if f.field != f0.field or f.n != f0.n:
                raise ValueError("all forms must share the field and variable count")
        self.field = f0.field
        self.n = f0.n
        self.r = len(forms)
        self.forms = list(forms)

    def combine(self, u) -> QuadraticForm:
        """The linear combination sum u_i * Q_i."""
        reprs = [v.repr if isinstance(v, FieldElement) else v for v in u]
        if len(reprs) != self.r:
            raise ValueError(f"expected {self.r} coefficients, got {len(reprs)}")
        out = QuadraticForm(self.field, self.n)
        for c, f in zip(reprs, self.forms):
            if c:
                out = out.add(f.scale(c))
        return out

    def __repr__(self):
        return f"Pencil(r={self.r}, n={self.n}, {self.field!r})"


# -- packing for the kernels -------------------------------------------------


def _monomial_index(n: int):
    return [(i, j) for i in range(n) for j in range(i, n)]


def _pack_coeffs(pencil: Pencil) -> np.ndarray:
    idx = _monomial_index(pencil.n)
    out = np.zeros((pencil.r, len(idx)), dtype=np.int32)
    for f, form in enumerate(pencil.forms):
        for k, (i, j) in enumerate(idx):
            out[f, k] = form.coeffs.get((i + 1, j + 1), 0)
    return out

def _pack_mats(pencil: Pencil) -> np.ndarray:
    n = pencil.n
    out = np.zeros((pencil.r, n, n), dtype=np.int32)
    for f, form in enumerate(pencil.forms):
        out[f] = np.array(form.associated_matrix().rows, dtype=np.int32)
    return out


def _point_from_index(idx: int, q: int, n: int) -> list[int]:
    digits = []
    for _ in range(n):
        digits.append(idx % q)
        idx //= q
    return digits[::-1]


def _check_point_cap(pencil: Pencil, cap: int):
    if pencil.field.q**pencil.n > cap:
        raise CapExceededError(
            f"q^n = {pencil.field.q}^{pencil.n} exceeds the enumeration cap {cap}"
        )


def _iter_points(q: int, n: int):
    x = [0] * n
    while True:
        yield x
        for i in range(n - 1, -1, -1):
            x[i] += 1
            if x[i] < q:
                break
            x[i] = 0
        else:
            return


# -- zero counting ------------------------------------------------------------


def count_common_zeros_bruteforce(pencil: Pencil, cap: int = DEFAULT_POINT_CAP,
                                  workers: int = 1) -> int:
    """#{x in F^n : all forms vanish}, origin included, by enumeration."""
    _check_point_cap(pencil, cap)
    spec = pencil.field
    if spec.q <= TABLE_CAP:
        add, mul, _, _ = spec.tables()
        cf = _pack_coeffs(pencil)
        if workers > 1:
            from concurrent.futures import ThreadPoolExecutor

            bounds = [
                (lo, min(lo + ceil_div(spec.q, workers), spec.q))
                for lo in range(0, spec.q, ceil_div(spec.q, workers))
            ]
            with ThreadPoolExecutor(max_workers=workers) as pool:
                parts = pool.map(
                    lambda b: kernels.count_common_zeros(
                        spec.q, pencil.n, cf, add, mul, b[0], b[1]
                    ),
                    bounds,
                )
            return int(sum(parts))
        return int(kernels.count_common_zeros(spec.q, pencil.n, cf, add, mul))
    count = 0
    for x in _iter_points(spec.q, pencil.n):
        if all(f.evaluate_repr(x) == 0 for f in pencil.forms):
            count += 1
    return count


def _projective_representatives(q: int, r: int):
    """All u != 0 up to scaling, first nonzero coordinate normalised to 1."""
    for lead in range(r):
        for idx in range(q ** (r - lead - 1)):
            tail = []
            t = idx
            for _ in range(r - lead - 1):
                tail.append(t % q)
                t //= q
            yield [0] * lead + [1] + tail


@dataclass
class RankSpectrum:
    """Counts of coefficient vectors u != 0 by the rank of the combination."""

    q: int
    r: int
    vector_counts: dict  # rank R >= 1 -> number of vectors u
    zero_combination_count: int

    def projective_counts(self) -> dict:
        assert all(v % (self.q - 1) == 0 for v in self.vector_counts.values())
        return {k: v // (self.q - 1) for k, v in self.vector_counts.items()}

    def total(self) -> int:
        return sum(self.vector_counts.values()) + self.zero_combination_count

    def even_rank_counts(self) -> dict:
        return {R: c for R, c in self.vector_counts.items() if R % 2 == 0}

    def min_rank(self) -> int | None:
        return min(self.vector_counts) if self.vector_counts else None


def rank_spectrum(pencil: Pencil, cap: int = DEFAULT_COMBO_CAP) -> RankSpectrum:
    """Exact rank counts over all q^r - 1 nonzero combinations.

    Ranks are computed once per projective class and multiplied by q-1.
    """
    q, r = pencil.field.q, pencil.r
    if q**r > cap:
        raise CapExceededError(f"q^r = {q}^{r} exceeds the combination cap {cap}")
    counts: dict[int, int] = {}
    zero_combos = 0
    for u in _projective_representatives(q, r):
        form = pencil.combine(u)
        if form.is_zero():
            zero_combos += q - 1
            continue
        rk = canonicalize(form).rank
        counts[rk] = counts.get(rk, 0) + (q - 1)
    spectrum = RankSpectrum(q, r, dict(sorted(counts.items())), zero_combos)
    assert spectrum.total() == q**r - 1
    return spectrum


def count_common_zeros_exact(pencil: Pencil, cap: int = DEFAULT_COMBO_CAP,
                             point_cap: int = DEFAULT_POINT_CAP) -> int:
    """Exact N from the closed zero counts of the q^r - 1 combinations.

    N = q^(n-r) + (q^(r-1) (q-1))^-1 * sum_{u != 0} (N(u) - q^(n-1)), which
    needs no nonzero combination to vanish identically; if one does, fall
    back to brute force.
    """
    spec, n, r = pencil.field, pencil.n, pencil.r
    q = spec.q
    if q**r > cap:
        raise CapExceededError(f"q^r = {q}^{r} exceeds the combination cap {cap}")
    total = 0
    for u in _projective_representatives(q, r):
        form = pencil.combine(u)
        if form.is_zero():
            return count_common_zeros_bruteforce(pencil, cap=point_cap)
        total += (count_zeros_closed(form) - q ** (n - 1)) * (q - 1)
    numerator = q ** (n - 1) * (q - 1) + total
    denominator = q ** (r - 1) * (q - 1)
    assert numerator % denominator == 0, "zero-count identity must be integral"
    return numerator // denominator


@dataclass
class CountWindow:
    """Exact error window |N - center| <= bound from the even rank spectrum.

    The window is only guaranteed when no nonzero combination vanishes
    identically (hypothesis_ok).
    """

    center: Fraction
    bound: Fraction
    even_counts: dict
    hypothesis_ok: bool

    def contains(self, n_zeros: int) -> bool:
        return abs(Fraction(n_zeros) - self.center) <= self.bound


def count_error_bound(pencil: Pencil, cap: int = DEFAULT_COMBO_CAP) -> CountWindow:
    """bound = sum_{1<=t<=n/2} q^(n-r-t) N_{2t}, with N from the spectrum."""
    q, n, r = pencil.field.q, pencil.n, pencil.r
    spectrum = rank_spectrum(pencil, cap=cap)
    bound = Fraction(0)
    for t in range(1, n // 2 + 1):
        count = spectrum.vector_counts.get(2 * t, 0)
        if count:
            bound += Fraction(q) ** (n - r - t) * count
    return CountWindow(
        Fraction(q) ** (n - r),
        bound,
        spectrum.even_rank_counts(),
        spectrum.zero_combination_count == 0,
    )


# -- nonsingular and singular zeros -------------------------------------------


def is_nonsingular_zero(pencil: Pencil, x) -> bool:
    """x != 0, every form vanishes, and the r gradient rows are independent."""
    reprs = [v.repr if isinstance(v, FieldElement) else v for v in x]
    if len(reprs) != pencil.n or not any(reprs):
        return False
    if any(f.evaluate_repr(reprs) != 0 for f in pencil.forms):
        return False
    rows = [f.gradient_repr(reprs) for f in pencil.forms]
    return linalg.rank(pencil.field, rows) == pencil.r


def find_nonsingular_zero(pencil: Pencil, strategy: str = "auto",
                          cap: int = DEFAULT_POINT_CAP, seed: int = 0,
                          trials: int = DEFAULT_TRIALS):
    """First nonsingular common zero in repr-lexicographic order, or None.

    strategy "exhaustive" scans all of F^n (subject to the point cap);
    "random" draws seeded uniform points up to the trial limit; "auto" picks
    exhaustive when q^n fits the cap.
    """
    spec, n = pencil.field, pencil.n
    q = spec.q
    if strategy == "auto":
        strategy = "exhaustive" if q**n <= cap else "random"
    if strategy == "exhaustive":
        _check_point_cap(pencil, cap)
        if q <= TABLE_CAP:
            add, mul, neg, inv = spec.tables()
            idx = kernels.first_nonsingular_zero(
                q, n, _pack_coeffs(pencil), _pack_mats(pencil), add, mul, neg, inv
            )
            return None if idx < 0 else _point_from_index(int(idx), q, n)
        for x in _iter_points(q, n):
            if is_nonsingular_zero(pencil, x):
                return list(x)
        return None
    if strategy == "random":
        rng = random.Random(seed)
        for _ in range(trials):
            x = [rng.randrange(q) for _ in range(n)]
            if is_nonsingular_zero(pencil, x):
                return x
        return None
    raise ValueError(f"unknown strategy {strategy!r}")


@dataclass
class SingularZeroReport:
    total_zeros: int
    singular_nonzero: int
    by_form: dict  # projective u tuple -> zeros of the system singular for S_u

    def nonsingular(self) -> int:
        return self.total_zeros - self.singular_nonzero - 1


def count_singular_zeros(pencil: Pencil, cap: int = DEFAULT_POINT_CAP,
                         split_by_form: bool = True) -> SingularZeroReport:
    """Nonzero common zeros where the gradient matrix has rank < r.

    The per-form split counts, for each projective pencil form S, the nonzero
    system zeros lying in the polar radical of S (those singular for S); one
    zero can appear under several forms.
    """
    spec, n = pencil.field, pencil.n
    q = spec.q
    _check_point_cap(pencil, cap)
    if q <= TABLE_CAP:
        add, mul, neg, inv = spec.tables()
        total, singular = kernels.count_zeros_and_singular(
            q, n, _pack_coeffs(pencil), _pack_mats(pencil), add, mul, neg, inv
        )
        total, singular = int(total), int(singular)
    else:
        total = singular = 0
        for x in _iter_points(q, n):
            if all(f.evaluate_repr(x) == 0 for f in pencil.forms):
                total += 1
                if any(x):
                    rows = [f.gradient_repr(x) for f in pencil.forms]
                    if linalg.rank(spec, rows) < pencil.r:
                        singular += 1
    by_form: dict[tuple, int] = {}
    if split_by_form:
        for u in _projective_representatives(q, pencil.r):
            form = pencil.combine(u)
            if form.is_zero():
                continue
            radical = form.associated_matrix().nullspace_basis()
            if not radical:
                continue
            restricted = Pencil([f.restrict(radical) for f in pencil.forms])
            inside = count_common_zeros_bruteforce(restricted, cap=cap)
            if inside > 1:
                by_form[tuple(u)] = inside - 1
    return SingularZeroReport(total, singular, by_form)


# -- minimization condition ----------------------------------------------------


@dataclass
class MinimizationReport:
    minimized: bool
    witness: tuple | None = None  # (s, w, basis rows)

    def __bool__(self):
        return self.minimized


@lru_cache(maxsize=32)
def _subspace_probe_cache(p: int, e: int, n: int):
    """Per-(field, n) probe data for every subspace of codimension w < n/2.

    A subspace with basis b_1..b_d is probed at the b_i and the pairwise sums
    b_i + b_j; a combination vanishes on the subspace iff it vanishes at all
    probes, and the vanishing defect is r - rank of the probe value matrix.
    Returns (bases, codims, probe array, offsets).
    """
    from .fields import field as get_field

    spec = get_field(p, e)
    bases: list[list[list[int]]] = []
    codims: list[int] = []
    probes: list[list[int]] = []
    offsets = [0]
    w_max = ceil_div(n, 2) - 1
    for w in range(0, w_max + 1):
        d = n - w
        for basis in linalg.enumerate_subspace_bases(spec, n, d):
            pts = [row[:] for row in basis]
            for i in range(d):
                for j in range(i + 1, d):
                    pts.append([spec.add(a, b) for a, b in zip(basis[i], basis[j])])
            bases.append(basis)
            codims.append(w)
            probes.extend(pts)
            offsets.append(len(probes))
    probe_arr = np.array(probes, dtype=np.int32) if probes else np.zeros((0, n), np.int32)
    off_arr = np.array(offsets, dtype=np.int64)
    w_arr = np.array(codims, dtype=np.int32)
    return bases, w_arr, probe_arr, off_arr


def _vanishing_defect(pencil: Pencil, basis: list[list[int]]) -> int:
    """dim of {u : combine(u) vanishes identically on span(basis)}."""
    spec = pencil.field
    d = len(basis)
    pts = [row[:] for row in basis]
    for i in range(d):
        for j in range(i + 1, d):
            pts.append([spec.add(a, b) for a, b in zip(basis[i], basis[j])])
    rows = [[f.evaluate_repr(x) for x in pts] for f in pencil.forms]
    if not pts:
        return pencil.r
    return pencil.r - linalg.rank(spec, rows)


def is_minimized(pencil: Pencil, subspace_cap: int = DEFAULT_SUBSPACE_CAP) -> MinimizationReport:
    """Exhaustive check of the minimization condition w >= s*n/(2r).

    Scans subspaces by ascending codimension w; only w < n/2 can violate
    (the defect s never exceeds r).  The first violation in enumeration
    order is returned as the witness.
    """
    spec, n, r = pencil.field, pencil.n, pencil.r
    q = spec.q
    if linalg.subspace_count(n, q) > subspace_cap:
        raise CapExceededError(
            f"subspace total for GF({q})^{n} exceeds the cap {subspace_cap}"
        )
    if q <= TABLE_CAP:
        bases, w_arr, probe_arr, off_arr = _subspace_probe_cache(spec.p, spec.e, n)
        add, mul, neg, inv = spec.tables()
        hit, defect = kernels.min_violation_scan(
            q, n, r, _pack_coeffs(pencil), probe_arr, off_arr, w_arr, add, mul, neg, inv
        )
        if hit < 0:
            return MinimizationReport(True)
        return MinimizationReport(False, (int(defect), int(w_arr[hit]), bases[hit]))
    w_max = ceil_div(n, 2) - 1
    for w in range(0, w_max + 1):
        for basis in linalg.enumerate_subspace_bases(spec, n, n - w):
            s = _vanishing_defect(pencil, basis)
            if s >= 1 and 2 * r * w < s * n:
                return MinimizationReport(False, (s, w, basis))
    return MinimizationReport(True)


# -- spectrum bound and lower bound verification -------------------------------


@dataclass
class SpectrumBoundCheck:
    rank: int
    count: int
    bound: Fraction | None  # None when q < R+1 (bound hypothesis fails)
    holds: bool | None


@dataclass
class SpectrumBoundReport:
    passed: bool
    rank_floor: int
    min_rank: int | None
    checks: list = dc_field(default_factory=list)
    failures: list = dc_field(default_factory=list)


def verify_spectrum_bounds(pencil: Pencil, cap: int = DEFAULT_COMBO_CAP) -> SpectrumBoundReport:
    """Check the per-rank spectrum bound and the minimum-rank floor.

    Requires a minimized pencil.  For each rank R with q >= R + 1 the vector
    count must satisfy N(R) <= (q/(R+1))^[2rR/n] * (R+1)^r, exactly; every
    occupied rank must be at least 2*(ceil(n/2r) - 1).
    """
    if not is_minimized(pencil).minimized:
        raise ValueError("spectrum bounds apply to minimized pencils only")
    q, n, r = pencil.field.q, pencil.n, pencil.r
    spectrum = rank_spectrum(pencil, cap=cap)
    assert spectrum.zero_combination_count == 0, "minimized pencils have no zero combination"
    floor = 2 * (ceil_div(n, 2 * r) - 1)
    report = SpectrumBoundReport(True, floor, spectrum.min_rank())
    for R in range(1, n + 1):
        count = spectrum.vector_counts.get(R, 0)
        if q >= R + 1:
            bound = Fraction(q, R + 1) ** ((2 * r * R) // n) * (R + 1) ** r
            holds = Fraction(count) <= bound
            report.checks.append(SpectrumBoundCheck(R, count, bound, holds))
            if not holds:
                report.failures.append(("bound", R, count, bound))
        elif count:
            report.checks.append(SpectrumBoundCheck(R, count, None, None))
    if spectrum.min_rank() is not None and spectrum.min_rank() < floor:
        report.failures.append(("rank_floor", spectrum.min_rank(), floor))
    report.passed = not report.failures
    return report


@dataclass
class LowerBoundReport:
    n_zeros: int
    formula_rhs: Fraction
    measured_rhs: Fraction
    holds_formula: bool
    holds_measured: bool
    in_hypothesis: bool
    label: str
    density_ratio: Fraction  # N / q^(n-r), recorded without interpretation


def verify_count_lower_bound(pencil: Pencil, cap: int = DEFAULT_COMBO_CAP,
                             point_cap: int = DEFAULT_POINT_CAP) -> LowerBoundReport:
    """Compare brute-force N against the lower bound q^(n-r) (1 - sum ...).

    The formula side uses the bound terms q^-t (q/(2t+1))^[4rt/n] (2t+1)^r
    over ceil(n/2r)-1 <= t <= n/2; the measured side substitutes the observed
    even-rank counts N_{2t}.  Outside q > n >= 4r+1 the result is labelled an
    out-of-hypothesis observation.
    """
    if not is_minimized(pencil).minimized:
        raise ValueError("the lower bound applies to minimized pencils only")
    q, n, r = pencil.field.q, pencil.n, pencil.r
    n_zeros = count_common_zeros_bruteforce(pencil, cap=point_cap)
    spectrum = rank_spectrum(pencil, cap=cap)
    center = Fraction(q) ** (n - r)
    formula_sum = Fraction(0)
    for t in range(ceil_div(n, 2 * r) - 1, n // 2 + 1):
        formula_sum += (
            Fraction(1, q**t) * Fraction(q, 2 * t + 1) ** ((4 * r * t) // n) * (2 * t + 1) ** r
        )
    measured_sum = Fraction(0)
    for t in range(1, n // 2 + 1):
        count = spectrum.vector_counts.get(2 * t, 0)
        if count:
            measured_sum += Fraction(count, q**t)
    formula_rhs = center * (1 - formula_sum)
    measured_rhs = center * (1 - measured_sum)
    in_hyp = q > n >= 4 * r + 1
    return LowerBoundReport(
        n_zeros=n_zeros,
        formula_rhs=formula_rhs,
        measured_rhs=measured_rhs,
        holds_formula=Fraction(n_zeros) >= formula_rhs,
        holds_measured=Fraction(n_zeros) >= measured_rhs,
        in_hypothesis=in_hyp,
        label="in-hypothesis" if in_hyp else "out-of-hypothesis observation",
        density_ratio=Fraction(n_zeros) / center,
    )
