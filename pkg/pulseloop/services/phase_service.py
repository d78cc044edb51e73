"""
Phase bookkeeping for cyclic evolutions.

    gamma   = arg <psi(0)|psi(1)>
    gamma_d = -int_0^1 <n(t)|H(t)|n(t)> dt
    gamma_g = gamma - gamma_d

For a spin-1/2 the geometric part of the + basis equals -Omega/2 modulo 2 pi,
Omega the signed solid angle enclosed by the Bloch path.
"""

from typing import Optional, Sequence, Union

import numpy as np
from scipy.integrate import simpson

from pulseloop.core.errors import DomainError, GridMismatchError, NonCyclicEvolutionError, SolidAngleError
from pulseloop.core.logging import get_logger
from pulseloop.models.bloch import Y_AXIS, BlochVector, Unitary2
from pulseloop.models.hamiltonian import Hamiltonian, as_hamiltonian
from pulseloop.models.phase import GateReport, PhaseDecomposition
from pulseloop.models.profile import FluctuationProfile
from pulseloop.models.pulse import PulseSequence
from pulseloop.models.trajectory import GridSpec, Trajectory
from pulseloop.services.fluctuation_service import FluctuatedHamiltonian, theta
from pulseloop.services.propagation_service import (
    cyclicity_check,
    left_limit_times,
    propagate,
    reference_unitary,
)
from pulseloop.services.pulse_service import ideal_hamiltonian
from pulseloop.services.su2_service import bloch_to_state, deviation_up_to_global_phase
from pulseloop.utils.angles import phase_distance, wrap_phase

logger = get_logger(__name__)

# Largest angular gap between consecutive path points accepted by solid_angle
MAX_PATH_GAP = 0.1
CLOSURE_TOL = 1e-6


def _piecewise_simpson(times: np.ndarray, breakpoints: Sequence[float], integrand) -> float:
    """
    Sum of Simpson integrals over the pieces between breakpoints.
    integrand(t, sl) gets the piece's times with the closing node at its left limit.
    """
    idx = np.searchsorted(times, breakpoints)
    total = 0.0
    for a, b in zip(idx[:-1], idx[1:]):
        if b <= a:
            continue
        sl = slice(int(a), int(b) + 1)
        t = left_limit_times(times[sl], (times[a], times[b]))
        total += float(simpson(integrand(t, sl), x=times[sl]))
    return total


def dynamical_phase(traj: Trajectory, h) -> float:
    """-int <n|H|n> dt by composite Simpson quadrature on the trajectory grid, piece by piece"""
    model = as_hamiltonian(h)
    missing = [b for b in model.breakpoints if not np.any(traj.times == b)]
    if missing:
        raise GridMismatchError(f"Hamiltonian breakpoints {missing} are not trajectory nodes")
    bp = sorted(set(traj.breakpoints) | set(model.breakpoints))
    return -_piecewise_simpson(traj.times, bp, lambda t, sl: model.energies(t, traj.bloch[sl]))


def dynamical_phase_closed_form(p: FluctuationProfile, sign: int = 1, grid: Optional[GridSpec] = None) -> float:
    """-+(1/2) int g'(t) cos(theta(t) + f(t)) dt for the fluctuated 90x180y90x pulse"""
    if sign not in (1, -1):
        raise DomainError(f"sign must be +1 or -1, got {sign!r}")
    grid = (grid or GridSpec()).with_breakpoints(p.breakpoints)
    times = grid.nodes()

    def integrand(t, _sl):
        return p.dg(t) * np.cos(theta(t) + p.f(t))

    return -0.5 * sign * _piecewise_simpson(times, grid.breakpoints, integrand)


def decompose_phase(traj: Trajectory, h, tol: Optional[float] = None) -> PhaseDecomposition:
    """Split the phase of a cyclic trajectory into dynamical and geometric parts"""
    cyc = cyclicity_check(traj, tol)
    if not cyc.cyclic:
        logger.warning("non-cyclic evolution", extra={"fidelity": cyc.fidelity, "total_phase": cyc.total_phase})
        raise NonCyclicEvolutionError("evolution is not cyclic", cyc.fidelity, cyc.total_phase)
    gamma_d = dynamical_phase(traj, h)
    return PhaseDecomposition(
        gamma_total=cyc.total_phase,
        gamma_dynamical=wrap_phase(gamma_d),
        gamma_geometric=wrap_phase(cyc.total_phase - gamma_d),
        fidelity=cyc.fidelity,
    )


def _as_path(bloch_path) -> np.ndarray:
    if isinstance(bloch_path, np.ndarray):
        pts = np.asarray(bloch_path, dtype=float)
    else:
        pts = np.array([b.as_array() if isinstance(b, BlochVector) else b for b in bloch_path], dtype=float)
    if pts.ndim != 2 or pts.shape[1] != 3 or len(pts) < 2:
        raise SolidAngleError("path must be a sequence of at least two Bloch vectors")
    return pts / np.linalg.norm(pts, axis=1, keepdims=True)


def solid_angle(bloch_path, closed: bool = True) -> float:
    """
    Signed solid angle enclosed by a Bloch path, summed over the spherical
    triangles (apex, p_k, p_k+1) with tan(E/2) = a.(b x c) / (1 + a.b + b.c + c.a).

    The apex is the direction of sum p_k x p_k+1 (the centroid when that
    vanishes); the result is apex independent modulo 4 pi. Only closed paths
    enclose a solid angle: closed=False is rejected.
    """
    if not closed:
        raise DomainError("an open path encloses no solid angle")
    pts = _as_path(bloch_path)
    gap = float(np.linalg.norm(pts[0] - pts[-1]))
    if gap > CLOSURE_TOL:
        raise SolidAngleError(f"path is not closed (|p_first - p_last| = {gap:.3g})")

    b = pts[:-1]
    c = pts[1:]
    steps = np.arccos(np.clip(np.sum(b * c, axis=1), -1.0, 1.0))
    if np.max(steps) >= MAX_PATH_GAP:
        raise SolidAngleError(f"path too sparse: consecutive points {np.max(steps):.3g} rad apart")

    crosses = np.cross(b, c)
    apex = crosses.sum(axis=0)
    if np.linalg.norm(apex) < 1e-12:
        apex = pts.mean(axis=0)
    if np.linalg.norm(apex) < 1e-12:
        apex = pts[0]
    apex = apex / np.linalg.norm(apex)

    numerator = crosses @ apex
    denominator = 1.0 + b @ apex + np.sum(b * c, axis=1) + c @ apex
    return float(2.0 * np.sum(np.arctan2(numerator, denominator)))


def aa_solid_angle_relation(decomposition: PhaseDecomposition, omega: float) -> float:
    """Distance modulo 2 pi between gamma_g and -Omega/2"""
    return phase_distance(decomposition.gamma_geometric, -0.5 * omega)


def compare_to_ideal(fluctuated: PhaseDecomposition, ideal: PhaseDecomposition) -> float:
    """|gamma~_g - gamma_g| modulo 2 pi"""
    return phase_distance(fluctuated.gamma_geometric, ideal.gamma_geometric)


def reconstruct_gate(n_plus: BlochVector, gamma_plus: float, gamma_minus: float) -> Unitary2:
    """U = e^{i gamma+} |n+><n+| + e^{i gamma-} |n-><n-|"""
    if not (np.isfinite(gamma_plus) and np.isfinite(gamma_minus)):
        raise DomainError("basis phases must be finite")
    plus = bloch_to_state(n_plus).as_array()
    minus = bloch_to_state(-n_plus).as_array()
    u = np.exp(1j * gamma_plus) * np.outer(plus, plus.conj()) + np.exp(1j * gamma_minus) * np.outer(
        minus, minus.conj()
    )
    # Projectors sum to the identity only up to rounding; restore exact unitarity
    q, r = np.linalg.qr(u)
    return Unitary2(q * (np.diag(r) / np.abs(np.diag(r))))


def max_drive_alignment(traj: Trajectory, h) -> float:
    """max |m(t).n(t)| along the trajectory; zero for a purely geometric evolution"""
    omega, axis, _ = as_hamiltonian(h).sample_arrays(traj.times)
    weight = np.where(np.abs(omega) > 0.0, 1.0, 0.0)
    return float(np.max(weight * np.abs(np.sum(axis * traj.bloch, axis=1))))


def _resolve_hamiltonian(source, profile: Optional[FluctuationProfile]) -> Hamiltonian:
    if isinstance(source, PulseSequence):
        if profile is None:
            return ideal_hamiltonian(source)
        return FluctuatedHamiltonian(source, profile)
    if profile is not None:
        raise DomainError("a profile can only be applied to a pulse sequence")
    return as_hamiltonian(source)


def gate_from_simulation(
    source: Union[PulseSequence, Hamiltonian],
    profile: Optional[FluctuationProfile] = None,
    n_plus: BlochVector = Y_AXIS,
    grid: Optional[GridSpec] = None,
) -> GateReport:
    """
    Propagate both basis states, decompose their phases and rebuild the gate
    from the eigenphases; the rebuilt gate is compared with the propagated one.
    """
    h = _resolve_hamiltonian(source, profile)
    grid = grid or GridSpec()
    n_minus = -n_plus

    traj_plus = propagate(h, bloch_to_state(n_plus), grid)
    traj_minus = propagate(h, bloch_to_state(n_minus), grid)
    plus = decompose_phase(traj_plus, h)
    minus = decompose_phase(traj_minus, h)

    unitary = reconstruct_gate(n_plus, plus.gamma_total, minus.gamma_total)
    reference = reference_unitary(h, grid)

    try:
        # cyclicity already checked by decompose_phase; end the path on its start
        omega = solid_angle(np.vstack([traj_plus.bloch[:-1], traj_plus.bloch[:1]]))
    except SolidAngleError as e:
        logger.warning("solid angle unavailable", extra={"reason": e.message})
        omega = float("nan")

    report = GateReport(
        basis_plus=n_plus,
        basis_minus=n_minus,
        final_plus=traj_plus.final_bloch,
        plus=plus,
        minus=minus,
        unitary=unitary,
        reference_deviation=deviation_up_to_global_phase(unitary, reference),
        antisymmetry_residual=abs(wrap_phase(plus.gamma_geometric + minus.gamma_geometric)),
        max_drive_alignment=max_drive_alignment(traj_plus, h),
        solid_angle_plus=omega,
        solid_angle_residual=aa_solid_angle_relation(plus, omega) if np.isfinite(omega) else float("nan"),
    )
    logger.info(
        "gate reconstructed",
        extra={
            "gamma_plus": plus.gamma_total,
            "gamma_g_plus": plus.gamma_geometric,
            "gamma_d_plus": plus.gamma_dynamical,
            "reference_deviation": report.reference_deviation,
        },
    )
    return report

