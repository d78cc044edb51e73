"""papercheck: every anchored scenario against its tolerances"""

import argparse
import sys

from pulseloop.cli.deps import emit_reports
from pulseloop.models.trajectory import GridSpec
from pulseloop.services.acceptance_service import run_papercheck


def register(subparsers) -> None:
    parser = subparsers.add_parser("papercheck", help="run all anchored scenarios and print pass/fail")
    parser.add_argument("--steps", type=int, default=None, help="force one grid for every scenario")
    parser.add_argument("--json", action="store_true", help="machine-readable report")
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace) -> int:
    grid = GridSpec(args.steps) if args.steps is not None else None
    reports = run_papercheck(grid)
    all_ok = all(r.ok for r in reports)

    if args.json:
        emit_reports("papercheck", reports, "All checks passed" if all_ok else "Some checks failed")
        return 0 if all_ok else 1

    sys.stdout.write(f"{'scenario':<24}{'status':<10}{'checks':>8}  failing\n")
    for r in reports:
        failing = [c.name for c in r.checks if c.blocking and not c.passed]
        mark = "" if r.ok else "  <-- "
        sys.stdout.write(f"{r.scenario:<24}{r.status.value:<10}{len(r.checks):>8}  {', '.join(failing) or r.message}{mark}\n")
    sys.stdout.write("PASS\n" if all_ok else "FAIL\n")
    return 0 if all_ok else 1
