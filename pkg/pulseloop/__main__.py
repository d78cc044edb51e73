import sys

from pulseloop.cli import run

sys.exit(run())
