"""Shared CLI helpers: option groups, run assembly, output envelopes"""

import argparse
import json
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

from pydantic import ValidationError

from pulseloop.config import settings
from pulseloop.core.errors import ConfigError, PulseLoopError
from pulseloop.models.bloch import BlochVector
from pulseloop.models.hamiltonian import Hamiltonian
from pulseloop.models.profile import FluctuationProfile
from pulseloop.models.pulse import PulseSequence
from pulseloop.models.trajectory import GridSpec
from pulseloop.schemas.config import ProfileConfig, RunConfig
from pulseloop.schemas.reports import ScenarioReport
from pulseloop.schemas.responses import command_response, error_response, report_list_response
from pulseloop.services.fluctuation_service import FluctuatedHamiltonian, load_profile
from pulseloop.services.pulse_service import COMPOSITE_90X180Y90X, ideal_hamiltonian, parse_sequence

PROFILE_FIELDS = ("kind", "f0", "g0", "xi", "eta")


def add_grid_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--steps", type=int, default=None, help="steps per unit time (default: PULSELOOP_STEPS)")
    parser.add_argument("--json", action="store_true", help="machine-readable output envelope")


def add_run_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--seq", default=COMPOSITE_90X180Y90X, help="pulse sequence, e.g. '90x 180y 90x'")
    parser.add_argument("--profile", type=Path, default=None, help="fluctuation profile JSON file")
    parser.add_argument("--kind", default=None, help="profile kind (overrides the file)")
    parser.add_argument("--f0", type=float, default=None)
    parser.add_argument("--g0", type=float, default=None)
    parser.add_argument("--xi", type=int, default=None)
    parser.add_argument("--eta", type=int, default=None)
    parser.add_argument("--basis", default="0,1,0", help="basis Bloch vector n+ as nx,ny,nz")
    add_grid_options(parser)


def validated(model, payload: Dict[str, Any]):
    try:
        return model.model_validate(payload)
    except ValidationError as e:
        first = e.errors()[0]
        where = ".".join(str(p) for p in first["loc"]) or "config"
        raise ConfigError(f"invalid {where}: {first['msg']}") from e


def read_json(path: Path) -> Dict[str, Any]:
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as e:
        raise ConfigError(f"cannot read {path}: {e}") from e


def profile_config(args: argparse.Namespace) -> Optional[ProfileConfig]:
    """Profile file merged with inline flags; inline values win"""
    payload: Dict[str, Any] = read_json(args.profile) if args.profile is not None else {}
    inline = {k: getattr(args, k) for k in PROFILE_FIELDS if getattr(args, k, None) is not None}
    if not payload and not inline:
        return None
    payload.update(inline)
    payload.setdefault("kind", "piecewise_sine")
    return validated(ProfileConfig, payload)


def run_config(args: argparse.Namespace, **extra: Any) -> RunConfig:
    payload = {
        "sequence": args.seq,
        "profile": profile_config(args),
        "steps": args.steps,
        "basis": args.basis,
        **extra,
    }
    return validated(RunConfig, payload)


def grid_for(steps: Optional[int]) -> GridSpec:
    return GridSpec(steps if steps is not None else settings.STEPS)


def assemble(config: RunConfig) -> Tuple[PulseSequence, Optional[FluctuationProfile], Hamiltonian, BlochVector, GridSpec]:
    """Parse the sequence and profile, then build the Hamiltonian, basis and grid"""
    seq = parse_sequence(config.sequence)
    profile = load_profile(config.profile, seq.breakpoints) if config.profile is not None else None
    h = FluctuatedHamiltonian(seq, profile) if profile is not None else ideal_hamiltonian(seq)
    try:
        basis = BlochVector(*config.basis)
    except PulseLoopError as e:
        raise ConfigError(f"invalid --basis: {e.message}") from e
    return seq, profile, h, basis, grid_for(config.steps)


def print_json(payload: Any) -> None:
    sys.stdout.write(json.dumps(payload, indent=2, default=float) + "\n")


def emit_success(command: str, data: Any, message: str) -> None:
    print_json(command_response(command, data, message).model_dump(mode="json"))


def emit_reports(command: str, reports: List[ScenarioReport], message: str) -> None:
    print_json(report_list_response(command, reports, message).model_dump(mode="json"))


def emit_error(exc: Exception, as_json: bool) -> None:
    if as_json:
        print_json(error_response(exc).model_dump(mode="json"))
    else:
        sys.stderr.write(f"error: {exc}\n")


def parse_float_list(text: str) -> List[float]:
    return [float(x) for x in text.split(",") if x.strip()]


def parse_int_list(text: str) -> List[int]:
    return [int(x) for x in text.split(",") if x.strip()]
