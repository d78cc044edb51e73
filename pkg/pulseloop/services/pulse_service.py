"""
Pulse-sequence notation: ``90x 180y 90x``, ``90(30)``, ``180-x``.

Grammar:
    seq   := pulse+
    pulse := ANGLE (AXIS | "(" SIGNED_NUMBER ")")
    AXIS  := "x" | "y" | "-x" | "-y"

Durations are proportional to rotation angle at constant drive amplitude,
normalized so the whole sequence lasts one time unit.
"""

import re
from fractions import Fraction
from typing import List, Tuple

import numpy as np

from pulseloop.core.errors import PulseParseError
from pulseloop.core.logging import get_logger
from pulseloop.models.bloch import BlochVector, HamiltonianSample, Unitary2
from pulseloop.models.hamiltonian import Hamiltonian, SampleArrays
from pulseloop.models.pulse import PulseSegment, PulseSequence
from pulseloop.services.su2_service import IDENTITY, su2_rotation
from pulseloop.utils.angles import piece_index

logger = get_logger(__name__)

COMPOSITE_90X180Y90X = "90x 180y 90x"

AXIS_PHASES = {"x": 0.0, "y": 90.0, "-x": 180.0, "-y": 270.0}
_PHASE_AXES = {v: k for k, v in AXIS_PHASES.items()}

_NUMBER = r"(?:\d+(?:\.\d*)?|\.\d+)"
_PULSE_RE = re.compile(
    rf"(?P<angle>[+-]?{_NUMBER})"
    rf"(?:(?P<axis>-?[xy])(?![A-Za-z])|\(\s*(?P<phase>[+-]?{_NUMBER})\s*\))"
)
_TOKEN_RE = re.compile(r"\S+")


def _offending_text(text: str, pos: int) -> str:
    match = _TOKEN_RE.match(text, pos)
    return match.group(0) if match else text[pos:]


def _tokenize(text: str) -> List[Tuple[Fraction, float]]:
    pulses: List[Tuple[Fraction, float]] = []
    pos = 0
    length = len(text)
    while True:
        while pos < length and text[pos].isspace():
            pos += 1
        if pos >= length:
            break
        index = len(pulses) + 1
        match = _PULSE_RE.match(text, pos)
        if match is None:
            raise PulseParseError("expected <angle><axis> or <angle>(<phase>)", index, _offending_text(text, pos))
        angle = Fraction(match.group("angle"))
        if angle <= 0:
            raise PulseParseError("rotation angle must be positive", index, match.group(0))
        if match.group("axis") is not None:
            phase = AXIS_PHASES[match.group("axis")]
        else:
            phase = float(match.group("phase"))
        pulses.append((angle, phase))
        pos = match.end()
    return pulses


def parse_sequence(text: str) -> PulseSequence:
    """Parse pulse notation into segments tiling [0, 1]"""
    if not text or not text.strip():
        raise PulseParseError("empty pulse sequence", 0)
    pulses = _tokenize(text)

    total = sum((angle for angle, _ in pulses), Fraction(0))
    segments: List[PulseSegment] = []
    elapsed = Fraction(0)
    breakpoints = [0.0]
    for angle, phase in pulses:
        start = elapsed
        elapsed += angle / total
        segments.append(
            PulseSegment(
                angle_deg=float(angle),
                phase_deg=phase,
                t_start=float(start),
                t_end=float(elapsed),
            )
        )
        breakpoints.append(float(elapsed))

    logger.debug("parsed pulse sequence", extra={"text": text, "segments": len(segments)})
    return PulseSequence(segments=tuple(segments), breakpoints=tuple(breakpoints), total_angle=total)


def format_sequence(seq: PulseSequence) -> str:
    """Canonical text form; axis letters where the phase is a multiple of 90 degrees"""
    parts = []
    for s in seq.segments:
        angle = f"{s.angle_deg:g}"
        axis = _PHASE_AXES.get(s.phase_deg % 360.0)
        parts.append(f"{angle}{axis}" if axis is not None else f"{angle}({s.phase_deg:g})")
    return " ".join(parts)


def ideal_amplitude(seq: PulseSequence) -> float:
    """Constant omega realizing every segment's rotation in its allotted time"""
    return float(seq.total_angle) / 360.0 * 2.0 * np.pi


def segment_axis(segment: PulseSegment) -> BlochVector:
    return BlochVector.normalized(segment.axis)


def sequence_unitary(seq: PulseSequence) -> Unitary2:
    """Closed-form product of the segment rotations, first pulse acting first"""
    u = Unitary2(IDENTITY)
    for s in seq.segments:
        u = su2_rotation(segment_axis(s), np.deg2rad(s.angle_deg)) @ u
    return u


def is_composite_90x180y90x(seq: PulseSequence) -> bool:
    if len(seq) != 3:
        return False
    expected = ((90.0, 0.0), (180.0, 90.0), (90.0, 0.0))
    return all(
        s.angle_deg == angle and (s.phase_deg % 360.0) == phase
        for s, (angle, phase) in zip(seq.segments, expected)
    )


class SequenceHamiltonian(Hamiltonian):
    """Ideal drive: omega constant, axis (cos phi_seg, sin phi_seg, 0), no detuning"""

    def __init__(self, seq: PulseSequence) -> None:
        self.seq = seq
        self.omega = ideal_amplitude(seq)
        self._phases = seq.phases_rad

    @property
    def breakpoints(self) -> Tuple[float, ...]:
        return self.seq.breakpoints

    def phase_at(self, times: np.ndarray) -> np.ndarray:
        return self._phases[piece_index(self.seq.breakpoints, times)]

    def sample_arrays(self, times: np.ndarray) -> SampleArrays:
        phi = self.phase_at(times)
        axis = np.stack([np.cos(phi), np.sin(phi), np.zeros_like(phi)], axis=1)
        n = len(phi)
        return np.full(n, self.omega), axis, np.zeros(n)


def ideal_hamiltonian(seq: PulseSequence) -> SequenceHamiltonian:
    return SequenceHamiltonian(seq)


def ideal_hamiltonian_at(seq: PulseSequence, t: float) -> HamiltonianSample:
    """Right-continuous sample of the ideal drive at time t"""
    return SequenceHamiltonian(seq)(t)
