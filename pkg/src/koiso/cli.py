"""Command-line interface: constant tables, verification suites, rigidity verdicts.

Exit codes: 0 all checks passed, 1 some deviation breached tolerance,
2 usage error, 3 the resource guard refused the requested range.
KOISO_THREADS sets how many (family, n) jobs run concurrently.
"""

import argparse
import os
import sys

from .algebras import Family
from .report import (
    FAMILY_BY_NAME,
    build_constants_report,
    render_constants,
    render_table,
    render_verification,
    run_verification,
)

__all__ = ["main"]


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("KOISO_THREADS", "1")))
    except ValueError:
        return 1


def _add_common(parser):
    parser.add_argument("--seed", type=int, default=0, help="probe RNG seed")
    parser.add_argument("--probes", type=int, default=10, help="random probes per ratio/identity (>= 3)")
    parser.add_argument("--format", choices=("table", "json", "csv"), default="table")
    parser.add_argument("--tolerance", type=float, default=1e-8, help="absolute deviation gate")
    parser.add_argument("--max-terms", type=int, default=10**9, help="contraction term ceiling for the resource guard")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="koiso",
        description="Constant tables and second-order rigidity verdicts for the "
        "symmetric pairs so(n) in su(n) and sp(n) in su(2n).",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    constants = sub.add_parser("constants", help="full constants report for one family and n")
    constants.add_argument("--family", choices=("so", "sp"), required=True)
    constants.add_argument("--n", type=int, required=True)
    _add_common(constants)

    verify = sub.add_parser("verify", help="run every identity suite over a range of n")
    verify.add_argument("--n-min", type=int, default=3)
    verify.add_argument("--n-max", type=int, default=5)
    _add_common(verify)

    table = sub.add_parser("table", help="one constants row per n")
    table.add_argument("--family", choices=("so", "sp"), required=True)
    table.add_argument("--n-min", type=int, default=3)
    table.add_argument("--n-max", type=int, default=6)
    _add_common(table)
    return parser


def _usage_error(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return 2


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.probes < 3:
        return _usage_error("--probes must be at least 3")
    if args.tolerance <= 0:
        return _usage_error("--tolerance must be positive")

    if args.command == "constants":
        if args.n < 3:
            return _usage_error("--n must be at least 3")
        family = Family(FAMILY_BY_NAME[args.family], args.n)
        report = build_constants_report(family, seed=args.seed, probes=args.probes, tolerance=args.tolerance)
        sys.stdout.write(render_constants(report, args.format))
        return 0 if report.status == "PASS" else 1

    if args.command == "verify":
        if not 3 <= args.n_min <= args.n_max:
            return _usage_error("need 3 <= --n-min <= --n-max")
        try:
            report = run_verification(
                args.n_min,
                args.n_max,
                seed=args.seed,
                probes=args.probes,
                tolerance=args.tolerance,
                max_terms=args.max_terms,
                threads=_threads(),
            )
        except ResourceWarning as guard:
            print(f"refused: {guard}", file=sys.stderr)
            return 3
        sys.stdout.write(render_verification(report, args.format))
        return 0 if report.status == "PASS" else 1

    # table
    if not 3 <= args.n_min <= args.n_max:
        return _usage_error("need 3 <= --n-min <= --n-max")
    tag = FAMILY_BY_NAME[args.family]
    ns = list(range(args.n_min, args.n_max + 1))
    threads = _threads()
    if threads > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=threads) as pool:
            reports = list(
                pool.map(
                    lambda n: build_constants_report(
                        Family(tag, n), seed=args.seed, probes=args.probes, tolerance=args.tolerance
                    ),
                    ns,
                )
            )
    else:
        reports = [
            build_constants_report(Family(tag, n), seed=args.seed, probes=args.probes, tolerance=args.tolerance)
            for n in ns
        ]
    sys.stdout.write(render_table(reports, args.format))
    return 0 if all(r.status == "PASS" for r in reports) else 1


if __name__ == "__main__":
    sys.exit(main())
