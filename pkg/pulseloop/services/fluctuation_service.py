"""
Regular-fluctuation noise model for the 90x180y90x composite pulse.

The fluctuated basis curve is
    n~(t) = +-(sin(theta+f) sin(phi+g), -sin(theta+f) cos(phi+g), cos(theta+f))
with theta(t) = 2 pi t - pi/2 and phi(t) the rf phase of the running segment.
It is generated by
    H~(t) = (1/2)(omega + f'(t)) m~(t).sigma + (1/2) g'(t) sigma_z,
    m~(t) = (cos(phi+g), sin(phi+g), 0).
"""

import json
from pathlib import Path
from typing import Optional, Sequence, Tuple, Union

import numpy as np

from pulseloop.config import settings
from pulseloop.core.errors import BoundaryConditionError, ConfigError, DomainError
from pulseloop.core.logging import get_logger
from pulseloop.models.bloch import BlochVector, HamiltonianSample
from pulseloop.models.enums import ProfileKind, SymmetryClass
from pulseloop.models.hamiltonian import Hamiltonian, SampleArrays, check_times
from pulseloop.models.phase import BoundaryCheck
from pulseloop.models.profile import (
    CombinedProfile,
    FluctuationProfile,
    GlobalSineProfile,
    PiecewiseSineProfile,
    TabulatedProfile,
    ZeroProfile,
)
from pulseloop.models.pulse import PulseSequence
from pulseloop.schemas.config import ProfileConfig
from pulseloop.services.pulse_service import (
    COMPOSITE_90X180Y90X,
    ideal_amplitude,
    is_composite_90x180y90x,
    parse_sequence,
)
from pulseloop.utils.angles import piece_index

logger = get_logger(__name__)


def _positive_integer(name: str, value) -> int:
    if isinstance(value, bool) or not isinstance(value, (int, float, np.integer, np.floating)):
        raise DomainError(f"{name} must be a positive integer, got {value!r}")
    if not float(value).is_integer() or value < 1:
        raise DomainError(f"{name} must be a positive integer, got {value!r}")
    return int(value)


def composite_breakpoints() -> Tuple[float, ...]:
    return parse_sequence(COMPOSITE_90X180Y90X).breakpoints


# Builders


def zero_profile() -> ZeroProfile:
    return ZeroProfile()


def piecewise_sine_profile(
    f0: float,
    g0: float,
    xi: int,
    eta: int,
    breakpoints: Optional[Sequence[float]] = None,
) -> PiecewiseSineProfile:
    """Sines with integer periods inside every segment; vanishes at each breakpoint"""
    bp = tuple(breakpoints) if breakpoints is not None else composite_breakpoints()
    if len(bp) < 2 or bp[0] != 0.0 or bp[-1] != 1.0 or np.any(np.diff(bp) <= 0):
        raise DomainError(f"breakpoints must increase from 0 to 1, got {bp}")
    return PiecewiseSineProfile(f0, g0, _positive_integer("xi", xi), _positive_integer("eta", eta), bp)


def global_sine_profile(f0: float, g0: float, xi: int, eta: int, cycles: int = 4) -> GlobalSineProfile:
    """f = f0 sin(2 pi cycles xi t), g = g0 sin(2 pi cycles eta t); the default gives sin(8 pi xi t)"""
    return GlobalSineProfile(
        f0, g0, _positive_integer("xi", xi), _positive_integer("eta", eta), _positive_integer("cycles", cycles)
    )


def tabulated_profile(samples: Sequence[Sequence[float]]) -> TabulatedProfile:
    return TabulatedProfile(samples)


def combined_profile(f_from: FluctuationProfile, g_from: FluctuationProfile) -> CombinedProfile:
    return CombinedProfile(f_from, g_from)


def load_profile(config: ProfileConfig, breakpoints: Optional[Sequence[float]] = None) -> FluctuationProfile:
    """Build a profile from its config; profiles violating the endpoint conditions are rejected"""
    if config.kind == ProfileKind.PIECEWISE_SINE:
        profile: FluctuationProfile = piecewise_sine_profile(config.f0, config.g0, config.xi, config.eta, breakpoints)
    elif config.kind == ProfileKind.GLOBAL_SINE:
        profile = global_sine_profile(config.f0, config.g0, config.xi, config.eta, config.cycles)
    elif config.kind == ProfileKind.TABULATED:
        if not config.samples:
            raise ConfigError("tabulated profile requires 'samples'")
        profile = tabulated_profile(config.samples)
    elif config.kind == ProfileKind.ZERO:
        profile = zero_profile()
    else:
        raise ConfigError(f"profile kind {config.kind.value!r} cannot be loaded from a config file")

    check = check_boundary_conditions(profile)
    if not check.ok:
        logger.warning("profile rejected at load", extra={"residuals": check.residuals})
        raise BoundaryConditionError(
            "profile must vanish at t=0 and t=1: "
            + ", ".join(f"{k}={v:.3g}" for k, v in check.residuals.items())
        )
    return profile


def profile_from_json(path: Union[str, Path], breakpoints: Optional[Sequence[float]] = None) -> FluctuationProfile:
    try:
        payload = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as e:
        raise ConfigError(f"cannot read profile file {path}: {e}") from e
    return load_profile(ProfileConfig.model_validate(payload), breakpoints)


# Checks


def check_boundary_conditions(p: FluctuationProfile, tol: Optional[float] = None) -> BoundaryCheck:
    """f and g must vanish at both ends of the sequence"""
    tol = settings.BOUNDARY_TOL if tol is None else tol
    ends = np.array([0.0, 1.0])
    f = np.abs(p.f(ends))
    g = np.abs(p.g(ends))
    residuals = {"f(0)": float(f[0]), "g(0)": float(g[0]), "f(1)": float(f[1]), "g(1)": float(g[1])}
    return BoundaryCheck(ok=all(r < tol for r in residuals.values()), residuals=residuals)


def check_breakpoint_continuity(p: FluctuationProfile, seq: PulseSequence, tol: Optional[float] = None) -> BoundaryCheck:
    """
    The curve stays continuous across a phase jump only at a pole: |sin(theta + f)| must
    vanish at every interior breakpoint where the rf phase changes.
    """
    _require_composite(seq)
    tol = settings.BOUNDARY_TOL if tol is None else tol
    residuals = {}
    for k in range(1, len(seq.segments)):
        if seq.segments[k].phase_deg % 360.0 == seq.segments[k - 1].phase_deg % 360.0:
            continue
        t = seq.breakpoints[k]
        residuals[f"sin(theta+f)({t:g})"] = float(abs(np.sin(theta(t) + p.f(np.array([t]))[0])))
    return BoundaryCheck(ok=all(r < tol for r in residuals.values()), residuals=residuals)


def classify_symmetry(p: FluctuationProfile) -> SymmetryClass:
    """
    First match of: g == 0; shift symmetry f(t+1/2) = f(t), g'(t+1/2) = g'(t);
    reflection symmetry f(1-t) = -f(t), g'(1-t) = g'(t). Sampled on [0, 1/2].
    """
    tol = settings.SYMMETRY_TOL
    t = np.linspace(0.0, 0.5, settings.SYMMETRY_GRID)
    full = np.linspace(0.0, 1.0, 2 * settings.SYMMETRY_GRID)
    if np.max(np.abs(p.g(full))) < 1e-12:
        return SymmetryClass.ZERO_G

    shift = max(
        np.max(np.abs(p.f(t + 0.5) - p.f(t))),
        np.max(np.abs(p.dg(t + 0.5) - p.dg(t))),
    )
    if shift < tol:
        return SymmetryClass.SHIFT_SYMMETRIC

    reflect = max(
        np.max(np.abs(p.f(1.0 - t) + p.f(t))),
        np.max(np.abs(p.dg(1.0 - t) - p.dg(t))),
    )
    if reflect < tol:
        return SymmetryClass.REFLECT_SYMMETRIC
    return SymmetryClass.UNCLASSIFIED


# Fluctuated Hamiltonian and reference curve


class FluctuatedHamiltonian(Hamiltonian):
    """omega + f', axis phase phi_seg + g, detuning g'"""

    def __init__(self, seq: PulseSequence, profile: FluctuationProfile) -> None:
        self.seq = seq
        self.profile = profile
        self.omega = ideal_amplitude(seq)
        self._phases = seq.phases_rad

    @property
    def breakpoints(self) -> Tuple[float, ...]:
        return tuple(sorted(set(self.seq.breakpoints) | set(self.profile.breakpoints)))

    def sample_arrays(self, times: np.ndarray) -> SampleArrays:
        phi = self._phases[piece_index(self.seq.breakpoints, times)] + self.profile.g(times)
        axis = np.stack([np.cos(phi), np.sin(phi), np.zeros_like(phi)], axis=1)
        return self.omega + self.profile.df(times), axis, self.profile.dg(times)


def fluctuated_hamiltonian_at(seq: PulseSequence, p: FluctuationProfile, t: float) -> HamiltonianSample:
    return FluctuatedHamiltonian(seq, p)(t)


def theta(t):
    """Polar angle of the ideal basis curve, 2 pi t - pi/2"""
    return 2.0 * np.pi * np.asarray(t, dtype=float) - 0.5 * np.pi


def _require_composite(seq: PulseSequence) -> None:
    if not is_composite_90x180y90x(seq):
        raise DomainError("the reference curve is only defined for the 90x180y90x composite pulse")


def reference_curve(seq: PulseSequence, p: FluctuationProfile, times, sign: int = 1) -> np.ndarray:
    """Fluctuated basis curve sampled at times, shape (N, 3)"""
    _require_composite(seq)
    if sign not in (1, -1):
        raise DomainError(f"sign must be +1 or -1, got {sign!r}")
    t = check_times(times)
    big_theta = theta(t) + p.f(t)
    big_phi = seq.phases_rad[piece_index(seq.breakpoints, t)] + p.g(t)
    s = np.sin(big_theta)
    return sign * np.stack([s * np.sin(big_phi), -s * np.cos(big_phi), np.cos(big_theta)], axis=1)


def fluctuated_curve_at(seq: PulseSequence, p: FluctuationProfile, t: float, sign: int = 1) -> BlochVector:
    return BlochVector.normalized(reference_curve(seq, p, np.array([t]), sign)[0])


def orthogonality_residual(seq: PulseSequence, p: FluctuationProfile, points: int = 1024) -> float:
    """max |m~(t).n~(t)| over a uniform grid"""
    t = np.linspace(0.0, 1.0, points)
    _, axis, _ = FluctuatedHamiltonian(seq, p).sample_arrays(t)
    curve = reference_curve(seq, p, t)
    return float(np.max(np.abs(np.sum(axis * curve, axis=1))))
