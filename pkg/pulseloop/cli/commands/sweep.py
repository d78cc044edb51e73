"""sweep: one scenario over a (f0, g0, xi, eta) grid, written as CSV"""

import argparse
import sys

from pulseloop.cli.deps import emit_reports, parse_float_list, parse_int_list, read_json, validated
from pulseloop.core.errors import ConfigError
from pulseloop.models.enums import ScenarioKind
from pulseloop.models.trajectory import GridSpec
from pulseloop.schemas.config import SweepConfig
from pulseloop.services.sweep_service import sweep
from pulseloop.utils.export import write_sweep_csv


def register(subparsers) -> None:
    parser = subparsers.add_parser("sweep", help="sweep a scenario over a parameter grid")
    parser.add_argument("--config", default=None, help="sweep config JSON file")
    parser.add_argument("--scenario", choices=[s.value for s in ScenarioKind], default=None)
    parser.add_argument("--f0", default=None, help="comma-separated values")
    parser.add_argument("--g0", default=None, help="comma-separated values")
    parser.add_argument("--xi", default=None, help="comma-separated integers")
    parser.add_argument("--eta", default=None, help="comma-separated integers")
    parser.add_argument("--steps", type=int, default=None)
    parser.add_argument("--workers", type=int, default=None)
    parser.add_argument("--out", default=None, help="CSV path (default: stdout)")
    parser.add_argument("--json", action="store_true", help="print reports as JSON instead of CSV")
    parser.set_defaults(handler=run)


def _config(args: argparse.Namespace) -> SweepConfig:
    payload = read_json(args.config) if args.config else {}
    try:
        for key, parse in (("f0", parse_float_list), ("g0", parse_float_list), ("xi", parse_int_list), ("eta", parse_int_list)):
            value = getattr(args, key)
            if value is not None:
                payload[key] = parse(value)
    except ValueError as e:
        raise ConfigError(f"invalid grid values: {e}") from e
    for key in ("scenario", "steps", "workers", "out"):
        value = getattr(args, key)
        if value is not None:
            payload[key] = value
    return validated(SweepConfig, payload)


def run(args: argparse.Namespace) -> int:
    config = _config(args)
    if config.points == 0:
        raise ConfigError("sweep grid is empty")
    grid = GridSpec(config.steps) if config.steps is not None else None
    reports = sweep(config, grid, config.workers)
    all_ok = all(r.ok for r in reports)

    if args.json:
        emit_reports("sweep", reports, f"{len(reports)} points")
    elif config.out is None:
        write_sweep_csv(reports, sys.stdout)
    else:
        write_sweep_csv(reports, config.out)
        sys.stdout.write(f"wrote {len(reports)} rows to {config.out}\n")
    return 0 if all_ok else 1
