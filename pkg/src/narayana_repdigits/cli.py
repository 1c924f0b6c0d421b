"""Command line entry point.

Exit codes: 0 success/closed, 1 usage error, 2 proof inconclusive,
3 certificate verification failure, 4 precision/certification failure.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys

from .baker import PAPER_VALUES, initial_bounds
from .numeric import DEFAULT_BUDGET, NumericError, PrecisionBudget
from .pipeline import (
    CF_EXTRA_TERMS,
    PAPER_M,
    OracleMismatch,
    ProofConfig,
    StageFailure,
    _power_of_ten_at_least,
    _discrepancies,
    low_range_search,
    oracle_cross_check,
    prove,
    run_stage1,
    run_stage2,
    verify_certificate,
    write_certificate,
)
from .reduction import expand_cf
from .sequence import tau

EXIT_OK, EXIT_USAGE, EXIT_INCONCLUSIVE, EXIT_VERIFY, EXIT_PRECISION = 0, 1, 2, 3, 4


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _budget(args) -> PrecisionBudget:
    bits = args.precision_bits
    return PrecisionBudget(bits, max(args.max_bits, bits))


def _add_precision(p):
    p.add_argument("--precision-bits", type=int, default=DEFAULT_BUDGET.working_bits)
    p.add_argument("--max-bits", type=int, default=DEFAULT_BUDGET.max_bits)


def cmd_search(args) -> int:
    for n, N, p in low_range_search(args.max_n):
        print(f"n={n:<4d} N={N:<6d} d1={p.d1} m1={p.m1} d2={p.d2} m2={p.m2}")
    return EXIT_OK


def cmd_oracle(args) -> int:
    try:
        oracle_cross_check(args.max_digits)
    except OracleMismatch as exc:
        print(f"oracle mismatch: {exc}")
        return EXIT_VERIFY
    print(f"oracle agrees below 10^{args.max_digits}")
    return EXIT_OK


def cmd_bounds(args) -> int:
    budget = _budget(args)
    ib = initial_bounds(budget)
    print(f"m1 log 10 < {float(ib.m1_bound_coeff.hi):.6e} (1 + log n)")
    print(f"log|Lambda_1| > -{float(ib.matveev_step1.hi):.6e} (1 + log n)")
    print(f"log|Lambda_2| > -{float(ib.matveev_step2.hi):.6e} (1 + log n)^2")
    print(f"H = {float(ib.H.hi):.6e}  n < {ib.n_bound:.6e}  m1 + m2 < {ib.m_sum_bound:.6e}")
    if args.paper_constants:
        print(f"printed values used in paper-constants mode: n < {PAPER_VALUES['n_bound']}, "
              f"m1 + m2 < {PAPER_VALUES['m_sum_bound']}, M = 1e29")
    print("artifact vs printed values:")
    for row in _discrepancies(ib, budget):
        flag = "reproduced" if row["reproduced"] else "NOT reproduced"
        print(f"  {row['quantity']:<15s} {row['artifact']:>22s} vs {row['paper']:<8s} ratio {row['ratio']:<10s} {flag}")
    return EXIT_OK


def cmd_reduce(args) -> int:
    budget = _budget(args)
    if args.big_m is not None:
        M = args.big_m
    elif args.paper_constants:
        M = PAPER_M
    else:
        M = _power_of_ten_at_least(initial_bounds(budget).m_sum_bound)
    cf = expand_cf(tau, 6 * M, budget, extra=CF_EXTRA_TERMS)
    s1 = run_stage1(cf, M, budget)
    if args.stage == 1:
        for r in s1["rows"]:
            print(f"d1={r['key'][0]} q={r['q']} eps={float(r['eps']):.9g}")
        print(f"M={M} eps_min={float(s1['eps_min']):.9g} m1 <= {s1['m1_bound']}")
        return EXIT_OK
    s2 = run_stage2(cf, M, s1["m1_bound"], args.cutoff, budget, args.paper_constants, args.jobs)
    print(f"M={M} m1 <= {s1['m1_bound']} members={len(s2['rows'])} retried={s2['retried']}")
    print(f"eps_min={float(s2['eps_min']):.9g} (d2 < d1 only: {float(s2['eps_min_paper_family']):.9g})")
    print(f"n <= {s2['n_bound']}")
    return EXIT_OK


def cmd_prove(args) -> int:
    config = ProofConfig(
        low_range_cutoff=args.cutoff,
        precision=_budget(args),
        M_override=args.big_m,
        certificate_path=args.emit,
        parallelism=args.jobs,
        paper_constants=args.paper_constants,
    )
    cert = prove(config)
    if args.emit:
        write_certificate(cert, args.emit)
    verdict = cert["verdict"]
    print(json.dumps({"verdict": verdict, "solutions": [s["value"] for s in cert["low_range"]["solutions"]]}, indent=2))
    if verdict["closed"]:
        return EXIT_OK
    return EXIT_PRECISION if "(precision)" in verdict["reason"] else EXIT_INCONCLUSIVE


def cmd_verify(args) -> int:
    try:
        ok = verify_certificate(args.path)
    except (OSError, json.JSONDecodeError) as exc:
        print(f"cannot read certificate: {exc}")
        return EXIT_VERIFY
    print("certificate verified" if ok else "certificate REJECTED")
    return EXIT_OK if ok else EXIT_VERIFY


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="narayana-repdigits", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("search", help="exhaustive low-range search")
    p.add_argument("--max-n", type=int, required=True)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("bounds", help="initial bounds from linear forms in logarithms")
    p.add_argument("--paper-constants", action="store_true")
    _add_precision(p)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("reduce", help="run one reduction stage")
    p.add_argument("--stage", type=int, choices=(1, 2), required=True)
    p.add_argument("--big-m", type=int, default=None)
    p.add_argument("--paper-constants", action="store_true")
    p.add_argument("--cutoff", type=int, default=250)
    p.add_argument("--jobs", type=int, default=1)
    _add_precision(p)
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("prove", help="full proof run")
    p.add_argument("--cutoff", type=int, default=250)
    p.add_argument("--paper-constants", action="store_true")
    p.add_argument("--emit", default=None, help="write the certificate to this path")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--big-m", type=int, default=None)
    _add_precision(p)
    p.set_defaults(func=cmd_prove)

    p = sub.add_parser("verify", help="check a certificate")
    p.add_argument("path")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("oracle", help="independent enumerate-and-intersect cross-check")
    p.add_argument("--max-digits", type=int, required=True)
    p.set_defaults(func=cmd_oracle)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (NumericError, StageFailure) as exc:
        print(f"certification failure: {exc}", file=sys.stderr)
        return EXIT_PRECISION


if __name__ == "__main__":
    sys.exit(main())
