"""phases: dynamical / geometric decomposition for both basis states"""

import argparse
import sys

import numpy as np

from pulseloop.cli.deps import add_run_options, assemble, emit_success, run_config
from pulseloop.config import settings
from pulseloop.core.errors import DriveAlignmentError
from pulseloop.schemas.reports import GateReportOut
from pulseloop.services.phase_service import gate_from_simulation


def register(subparsers) -> None:
    parser = subparsers.add_parser("phases", help="decompose the phases of n+ and n- and rebuild the gate")
    add_run_options(parser)
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace) -> int:
    config = run_config(args)
    _, _, h, basis, grid = assemble(config)

    start = h(0.0)
    alignment = abs(start.axis.dot(basis)) if start.omega != 0.0 else 0.0
    if alignment > settings.ORTHOGONALITY_TOL:
        raise DriveAlignmentError(
            f"basis {basis.as_tuple()} is not orthogonal to the drive axis {start.axis.as_tuple()} "
            f"(|m.n| = {alignment:.6g}); a geometric gate needs m(t).n(t) = 0"
        )

    report = gate_from_simulation(h, None, basis, grid)
    out = GateReportOut.from_domain(report)
    if args.json:
        emit_success("phases", out.model_dump(mode="json"), "Phases decomposed")
        return 0

    rows = [("n+", out.plus), ("n-", out.minus)]
    sys.stdout.write(f"{'basis':<6}{'gamma_total':>18}{'gamma_dynamical':>18}{'gamma_geometric':>18}{'fidelity':>18}\n")
    for label, d in rows:
        sys.stdout.write(
            f"{label:<6}{d.gamma_total:>18.12f}{d.gamma_dynamical:>18.12f}{d.gamma_geometric:>18.12f}{d.fidelity:>18.12f}\n"
        )
    omega = out.solid_angle_plus
    sys.stdout.write(f"solid angle (n+): {omega:.9f}\n" if omega is not None else "solid angle (n+): n/a\n")
    sys.stdout.write(f"gate deviation from propagated unitary: {out.reference_deviation:.3e}\n")
    if not np.isclose(out.max_drive_alignment, 0.0, atol=settings.ORTHOGONALITY_TOL):
        sys.stdout.write(f"warning: max |m.n| along the path = {out.max_drive_alignment:.3e}\n")
    return 0
