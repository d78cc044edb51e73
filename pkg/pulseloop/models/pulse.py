"""Piecewise-constant pulse schedules over normalized time [0, 1]"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Tuple

import numpy as np


@dataclass(frozen=True)
class PulseSegment:
    """One rotation: angle in degrees about the xy-plane axis at rf phase phase_deg"""
    angle_deg: float
    phase_deg: float
    t_start: float
    t_end: float

    @property
    def duration(self) -> float:
        return self.t_end - self.t_start

    @property
    def phase_rad(self) -> float:
        return float(np.deg2rad(self.phase_deg))

    @property
    def axis(self) -> Tuple[float, float, float]:
        phi = self.phase_rad
        return (float(np.cos(phi)), float(np.sin(phi)), 0.0)


@dataclass(frozen=True)
class PulseSequence:
    """Ordered segments tiling [0, 1]; durations proportional to rotation angle"""
    segments: Tuple[PulseSegment, ...]
    breakpoints: Tuple[float, ...]
    total_angle: Fraction

    @property
    def total_angle_deg(self) -> float:
        return float(self.total_angle)

    @property
    def phases_rad(self) -> np.ndarray:
        return np.array([s.phase_rad for s in self.segments])

    def __len__(self) -> int:
        return len(self.segments)
