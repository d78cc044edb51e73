"""Integration grid and dense trajectories"""

import math
from dataclasses import dataclass, field
from typing import Iterable, List, Tuple

import numpy as np

from pulseloop.config import settings
from pulseloop.core.errors import ConfigError, DomainError
from pulseloop.models.bloch import BlochVector, StateVector


def _merge_breakpoints(*groups: Iterable[float]) -> Tuple[float, ...]:
    merged = {0.0, 1.0}
    for group in groups:
        merged.update(float(b) for b in group)
    bp = tuple(sorted(merged))
    if bp[0] < 0.0 or bp[-1] > 1.0:
        raise DomainError(f"breakpoints must lie in [0, 1], got {bp}")
    return bp


@dataclass(frozen=True)
class GridSpec:
    """Fixed-step grid; every breakpoint is a node"""
    steps_per_unit_time: int = field(default_factory=lambda: settings.STEPS)
    breakpoints: Tuple[float, ...] = (0.0, 1.0)

    def __post_init__(self) -> None:
        if isinstance(self.steps_per_unit_time, bool) or int(self.steps_per_unit_time) != self.steps_per_unit_time:
            raise ConfigError(f"steps must be an integer, got {self.steps_per_unit_time!r}")
        if self.steps_per_unit_time < 256:
            raise ConfigError(f"steps must be >= 256, got {self.steps_per_unit_time}")
        object.__setattr__(self, "breakpoints", _merge_breakpoints(self.breakpoints))

    def with_breakpoints(self, extra: Iterable[float]) -> "GridSpec":
        return GridSpec(self.steps_per_unit_time, _merge_breakpoints(self.breakpoints, extra))

    def doubled(self) -> "GridSpec":
        return GridSpec(2 * self.steps_per_unit_time, self.breakpoints)

    def segment_steps(self) -> List[int]:
        bp = self.breakpoints
        return [max(1, math.ceil((b - a) * self.steps_per_unit_time - 1e-9)) for a, b in zip(bp[:-1], bp[1:])]

    def nodes(self) -> np.ndarray:
        """Sorted node times; breakpoints are shared between neighbouring segments"""
        bp = self.breakpoints
        pieces = [np.linspace(a, b, n + 1)[:-1] for a, b, n in zip(bp[:-1], bp[1:], self.segment_steps())]
        return np.concatenate(pieces + [np.array([1.0])])


@dataclass(frozen=True, eq=False)
class Trajectory:
    """States and Bloch vectors at every grid node; arrays are read-only"""
    times: np.ndarray
    states: np.ndarray
    bloch: np.ndarray
    breakpoints: Tuple[float, ...] = (0.0, 1.0)
    max_norm_drift: float = 0.0

    def __post_init__(self) -> None:
        for name in ("times", "states", "bloch"):
            arr = np.array(getattr(self, name), copy=True)
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    def __len__(self) -> int:
        return len(self.times)

    @property
    def initial(self) -> StateVector:
        return self.state(0)

    @property
    def final(self) -> StateVector:
        return self.state(-1)

    @property
    def final_bloch(self) -> BlochVector:
        return BlochVector.normalized(self.bloch[-1])

    def state(self, k: int) -> StateVector:
        return StateVector.from_array(self.states[k])

    def bloch_at(self, k: int) -> BlochVector:
        return BlochVector.normalized(self.bloch[k])

    def segment_slices(self) -> List[slice]:
        """Node ranges of each piece between breakpoints, end node included"""
        idx = np.searchsorted(self.times, self.breakpoints)
        return [slice(int(a), int(b) + 1) for a, b in zip(idx[:-1], idx[1:])]

    def decimate(self, every: int) -> "Trajectory":
        """Keep every n-th node; the final node is always kept"""
        if every < 1:
            raise ConfigError(f"--every must be >= 1, got {every}")
        keep = np.arange(0, len(self.times), every)
        if keep[-1] != len(self.times) - 1:
            keep = np.append(keep, len(self.times) - 1)
        return Trajectory(self.times[keep], self.states[keep], self.bloch[keep], self.breakpoints, self.max_norm_drift)
