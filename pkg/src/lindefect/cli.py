"""Command-line front end.

Exit codes: 0 success, 1 computation or input error, 2 property-suite failure.
"""

from __future__ import annotations

import argparse
import sys
from typing import List, Optional

from .errors import LindefectError
from .jobs import parse_job, run_job, run_suite_report
from .suites import SUITES

EXIT_OK, EXIT_ERROR, EXIT_SUITE_FAILED = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    # keep exit code 2 for suite failures
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="lindefect",
                description="Betti tables, linearity defects and Koszul tests for graded modules.")
    p.add_argument("job", nargs="?", help="JSON job file ('-' reads stdin)")
    p.add_argument("--cutoff", type=int, help="homological cutoff (overrides options.cutoff)")
    p.add_argument("--seed", type=int, help="random seed (overrides options.seed)")
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("--suite", choices=sorted(SUITES), help="run a property suite")
    p.add_argument("--count", type=int, help="number of suite instances")
    p.add_argument("--no-timing", action="store_true", help="omit the timing field from JSON output")
    return p


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if args.cutoff is not None and args.cutoff < 1:
        print("lindefect: error: --cutoff must be >= 1", file=sys.stderr)
        return EXIT_ERROR
    try:
        if args.job is None:
            if args.suite is None:
                print("lindefect: error: give a job file or --suite", file=sys.stderr)
                return EXIT_ERROR
            report = run_suite_report(args.suite, args.seed or 0, args.count, args.cutoff)
        else:
            text = sys.stdin.read() if args.job == "-" else open(args.job, encoding="utf-8").read()
            spec = parse_job(text)
            if args.cutoff is not None:
                spec.options["cutoff"] = args.cutoff
            if args.seed is not None:
                spec.options["seed"] = args.seed
            if args.suite is not None:
                spec.options["suite"] = args.suite
            if args.count is not None:
                spec.options["count"] = args.count
            report = run_job(spec)
    except OSError as exc:
        print(f"lindefect: error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except LindefectError as exc:
        print(f"lindefect: error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    if args.format == "json":
        print(report.to_json(timing=not args.no_timing))
    else:
        print(report.text.rstrip("\n"))
    return EXIT_OK if report.ok else EXIT_SUITE_FAILED


if __name__ == "__main__":
    sys.exit(main())
