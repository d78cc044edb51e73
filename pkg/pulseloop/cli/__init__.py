"""Command-line interface"""

import sys
from typing import List, Optional

from pulseloop.core.errors import ConfigError


def run(argv: Optional[List[str]] = None) -> int:
    """Console entry point; settings are loaded on first import, so environment errors exit with code 2"""
    try:
        from pulseloop.cli.main import main
    except ConfigError as e:
        sys.stderr.write(f"error: {e}\n")
        return e.exit_code
    return main(argv)
