"""pulseloop command-line entry point"""

import argparse
import sys
import uuid
from typing import List, Optional

from pulseloop.cli.commands import papercheck, phases, simulate, sweep
from pulseloop.cli.deps import emit_error
from pulseloop.config import settings
from pulseloop.core.errors import ConfigError, PulseLoopError
from pulseloop.core.logging import get_logger, setup_logging

logger = get_logger(__name__)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pulseloop",
        description="Geometric phases of single-qubit composite pulses under regular fluctuations",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {settings.APP_VERSION}")
    parser.add_argument("--log-level", default=None, help="DEBUG, INFO, WARNING (default: PULSELOOP_LOG_LEVEL)")
    subparsers = parser.add_subparsers(dest="command", required=True)
    for command in (simulate, phases, papercheck, sweep):
        command.register(subparsers)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    setup_logging(args.log_level, run_id=uuid.uuid4().hex[:12])
    as_json = getattr(args, "json", False)

    try:
        return args.handler(args)
    except PulseLoopError as e:
        logger.debug("command failed", extra={"command": args.command, "code": e.code})
        emit_error(e, as_json)
        return e.exit_code
    except OSError as e:
        error = ConfigError(str(e))
        emit_error(error, as_json)
        return error.exit_code


if __name__ == "__main__":
    sys.exit(main())
