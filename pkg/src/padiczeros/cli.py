"""Batch command-line surface.

Subcommands: bound, min-q, corollary1, corollary2, rank, spectrum, zeros,
minimized, lift, selftest.  Exit codes: 0 success / predicate true,
2 well-formed predicate false, 1 usage or input error, 3 resource cap
exceeded.  Everything is deterministic given the inputs and --seed.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import bounds, pencils, serialize
from .errors import CapExceededError
from .forms import canonicalize, rank_le_via_minors
from .hensel import hensel_lift

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_FALSE = 2
EXIT_CAP = 3


def _emit(args, payload: dict, text_lines: list[str]):
    if args.format == "json":
        print(json.dumps(payload, indent=2))
    else:
        for line in text_lines:
            print(line)


def _aligned(rows: list[tuple]) -> list[str]:
    if not rows:
        return []
    widths = [max(len(str(r[c])) for r in rows) for c in range(len(rows[0]))]
    return ["  ".join(str(v).ljust(w) for v, w in zip(row, widths)).rstrip() for row in rows]


def _cmd_bound(args) -> int:
    if args.r < 1 or args.n < 1 or args.q < 2:
        raise ValueError("need r >= 1, n >= 1 and q >= 2")
    report = bounds.admissible(args.r, args.n, args.q)
    lines = _aligned(
        [
            ("r", report.r),
            ("n", report.n),
            ("q", report.q),
            ("sigma1", bounds.decimal_view(report.sigma1)),
            ("sigma2", bounds.decimal_view(report.sigma2)),
            ("sigma total", bounds.decimal_view(report.total)),
            ("q > n", report.q_gt_n),
            ("n >= 4r+1", report.n_ge_4r1),
            ("sum < 1", report.sum_lt_1),
            ("admissible", report.admissible),
        ]
    )
    _emit(args, report.to_dict(), lines)
    return EXIT_OK if report.admissible else EXIT_FALSE


def _search_payload(res: bounds.MinimalSearchReport) -> dict:
    dev = res.deviation()
    return {
        "r": res.r,
        "n": res.n,
        "q0": res.q0,
        "start": res.start,
        "sigma1_linear": bounds.decimal_view(res.sigma1_linear),
        "candidates_checked": res.candidates_checked,
        "window_upper": res.window_upper,
        "window_checked": res.window_checked,
        "window_failures": res.window_failures,
        "reference": res.reference,
        "deviation": None if dev is None else bounds.decimal_view(dev),
    }


def _cmd_min_q(args) -> int:
    res = bounds.minimal_admissible_prime_power(
        args.r, args.n, ceiling=args.ceiling, window_factor=args.window_factor
    )
    lines = _aligned(
        [
            ("minimal admissible q", res.q0),
            ("scan start", res.start),
            ("sigma1 linear coefficient", bounds.decimal_view(res.sigma1_linear)),
            ("window verified up to", res.window_upper),
            ("window failures", res.window_failures or "none"),
        ]
    )
    _emit(args, _search_payload(res), lines)
    return EXIT_OK


def _cmd_corollary1(args) -> int:
    rows = [("r", "n", "computed q0", "reference", "deviation")]
    payload = []
    for r in (3, 4, 8):
        n = 4 * r + 1
        res = bounds.minimal_admissible_prime_power(
            r, n, ceiling=args.ceiling, window_factor=args.window_factor
        )
        dev = res.deviation()
        rows.append(
            (r, n, res.q0, res.reference, f"{float(dev) * 100:+.4f}%")
        )
        payload.append(_search_payload(res))
    _emit(args, {"rows": payload}, _aligned(rows))
    return EXIT_OK


def _cmd_corollary2(args) -> int:
    r = args.r
    n = args.n if args.n is not None else r * r + 1
    q = args.q if args.q is not None else bounds.least_prime_power_at_least(4 * 10**8 * r * r)
    cert = bounds.majorant_condition(r, n, q)
    exact = bounds.admissible(r, n, q) if args.exact_check else None
    lines = [f"r={r} n={n} q={q}", f"gate q^(1-4/r) >= 4r^2: {cert.gate_ok}"]
    for name, value in cert.steps.items():
        lines.append(f"  {name}: {bounds.decimal_view(value)}")
    lines.append(f"certified sigma1+sigma2 < 1: {cert.ok}")
    payload = cert.to_dict()
    if exact is not None:
        lines.append(f"exact admissible cross-check: {exact.admissible}")
        payload["exact_admissible"] = exact.admissible
    _emit(args, payload, lines)
    return EXIT_OK if cert.ok else EXIT_FALSE


def _cmd_rank(args) -> int:
    form = serialize.form_file_from_dict(serialize.load_json(args.file))
    canon = canonicalize(form)
    matrix_rank = form.associated_matrix().rank()
    assert rank_le_via_minors(form, canon.rank)
    payload = {
        "rank": canon.rank,
        "matrix_rank": matrix_rank,
        "hyperbolic_planes": canon.m,
        "tail": canon.tail_kind,
        "tail_param": canon.tail_param,
        "type": canon.type_tag,
        "transform": canon.transform,
    }
    lines = _aligned(
        [
            ("rank", canon.rank),
            ("matrix rank", matrix_rank),
            ("hyperbolic planes", canon.m),
            ("tail", canon.tail_kind),
            ("type", canon.type_tag),
        ]
    )
    _emit(args, payload, lines)
    return EXIT_OK


def _cmd_spectrum(args) -> int:
    pencil = serialize.pencil_from_dict(serialize.load_json(args.file))
    spectrum = pencils.rank_spectrum(pencil, cap=args.combo_cap)
    projective = spectrum.projective_counts()
    rows = [("rank", "vectors", "projective")]
    for rk in sorted(spectrum.vector_counts):
        rows.append((rk, spectrum.vector_counts[rk], projective[rk]))
    lines = _aligned(rows)
    lines.append(f"zero combinations: {spectrum.zero_combination_count}")
    payload = {
        "vector_counts": {str(k): v for k, v in spectrum.vector_counts.items()},
        "projective_counts": {str(k): v for k, v in projective.items()},
        "zero_combination_count": spectrum.zero_combination_count,
    }
    _emit(args, payload, lines)
    return EXIT_OK


def _cmd_zeros(args) -> int:
    pencil = serialize.pencil_from_dict(serialize.load_json(args.file))
    report = pencils.count_singular_zeros(pencil, cap=args.point_cap)
    if args.workers > 1:
        parallel = pencils.count_common_zeros_bruteforce(
            pencil, cap=args.point_cap, workers=args.workers
        )
        assert parallel == report.total_zeros
    exact = None
    if pencil.field.q ** pencil.r <= args.combo_cap:
        exact = pencils.count_common_zeros_exact(
            pencil, cap=args.combo_cap, point_cap=args.point_cap
        )
        assert exact == report.total_zeros
    witness = pencils.find_nonsingular_zero(
        pencil, cap=args.point_cap, seed=args.seed, trials=args.trials
    )
    lines = _aligned(
        [
            ("common zeros N", report.total_zeros),
            ("nonsingular", report.nonsingular()),
            ("singular (nonzero)", report.singular_nonzero),
            ("nonsingular witness", witness if witness is not None else "none"),
        ]
    )
    payload = {
        "zeros": report.total_zeros,
        "nonsingular": report.nonsingular(),
        "singular_nonzero": report.singular_nonzero,
        "singular_by_form": {str(list(k)): v for k, v in report.by_form.items()},
        "nonsingular_witness": witness,
        "exact_identity_count": exact,
    }
    _emit(args, payload, lines)
    return EXIT_OK


def _cmd_minimized(args) -> int:
    pencil = serialize.pencil_from_dict(serialize.load_json(args.file))
    report = pencils.is_minimized(pencil, subspace_cap=args.subspace_cap)
    if report.minimized:
        _emit(args, {"minimized": True, "witness": None}, ["minimized: true"])
        return EXIT_OK
    s, w, basis = report.witness
    payload = {"minimized": False, "witness": {"s": s, "w": w, "basis": basis}}
    lines = [
        "minimized: false",
        f"witness: s={s} independent combinations vanish on a subspace of codimension w={w}",
        f"basis rows: {basis}",
    ]
    _emit(args, payload, lines)
    return EXIT_FALSE


def _cmd_lift(args) -> int:
    system, zero, precision = serialize.system_from_dict(serialize.load_json(args.file))
    lifted = hensel_lift(system, zero, precision)
    payload = {
        "p": system.p,
        "precision": precision,
        "coords": [str(c) for c in lifted.coords],
    }
    lines = [f"lift mod {system.p}^{precision}:"] + [
        f"  x{i + 1} = {c}" for i, c in enumerate(lifted.coords)
    ]
    _emit(args, payload, lines)
    return EXIT_OK


def _cmd_selftest(args) -> int:
    from .selftest import run_selftest

    results = run_selftest(quick=not args.full)
    for name, ok, detail in results:
        print(f"{'PASS' if ok else 'FAIL'}  {name}" + (f"  ({detail})" if detail else ""))
    failed = [name for name, ok, _ in results if not ok]
    print(f"{len(results) - len(failed)}/{len(results)} checks passed")
    return EXIT_OK if not failed else EXIT_FALSE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="padiczeros",
        description="Quadratic form systems over finite fields: exact "
        "admissibility bounds, rank spectra, zero counts, Hensel lifting.",
    )
    parser.add_argument("--format", choices=("text", "json"), default="text")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_caps(p):
        p.add_argument("--point-cap", type=int, default=pencils.DEFAULT_POINT_CAP,
                       help="max q^n for exhaustive point enumeration")
        p.add_argument("--combo-cap", type=int, default=pencils.DEFAULT_COMBO_CAP,
                       help="max q^r for combination enumeration")

    p = sub.add_parser("bound", help="evaluate the exact admissibility predicate")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.set_defaults(func=_cmd_bound)

    p = sub.add_parser("min-q", help="least admissible prime power for (r, n)")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--ceiling", type=int, default=bounds.DEFAULT_SEARCH_CEILING)
    p.add_argument("--window-factor", type=int, default=2)
    p.set_defaults(func=_cmd_min_q)

    p = sub.add_parser("corollary1", help="threshold table for r = 3, 4, 8 at n = 4r+1")
    p.add_argument("--ceiling", type=int, default=bounds.DEFAULT_SEARCH_CEILING)
    p.add_argument("--window-factor", type=int, default=2)
    p.set_defaults(func=_cmd_corollary1)

    p = sub.add_parser("corollary2", help="certified large-q condition at n >= r^2+1")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--q", type=int, default=None,
                   help="default: least prime power >= 4e8 * r^2")
    p.add_argument("--no-exact-check", dest="exact_check", action="store_false")
    p.set_defaults(func=_cmd_corollary2)

    p = sub.add_parser("rank", help="rank and canonical data of a form file")
    p.add_argument("file")
    p.set_defaults(func=_cmd_rank)

    p = sub.add_parser("spectrum", help="rank spectrum of a pencil file")
    p.add_argument("file")
    add_caps(p)
    p.set_defaults(func=_cmd_spectrum)

    p = sub.add_parser("zeros", help="zero counts of a pencil file")
    p.add_argument("file")
    add_caps(p)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=pencils.DEFAULT_TRIALS)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=_cmd_zeros)

    p = sub.add_parser("minimized", help="check the minimization condition")
    p.add_argument("file")
    p.add_argument("--subspace-cap", type=int, default=pencils.DEFAULT_SUBSPACE_CAP)
    p.set_defaults(func=_cmd_minimized)

    p = sub.add_parser("lift", help="Hensel-lift a planted nonsingular zero")
    p.add_argument("file")
    p.set_defaults(func=_cmd_lift)

    p = sub.add_parser("selftest", help="run the reduced acceptance checks")
    p.add_argument("--full", action="store_true")
    p.set_defaults(func=_cmd_selftest)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_ERROR if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except CapExceededError as exc:
        print(f"cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
