"""
Fixed-step RK4 integration of i d(psi)/dt = H(t) psi.

Each piece between breakpoints is integrated on its own sub-grid; the closing
node of a piece is sampled at its left limit so no step sees the next piece.
The classical RK4 stages are linear in psi, so each step is a 2x2 matrix built
in one vectorized pass; states are advanced and renormalized node by node.
"""

from typing import Optional

import numpy as np

from pulseloop.config import settings
from pulseloop.core.errors import IntegrationError
from pulseloop.core.logging import get_logger
from pulseloop.models.bloch import StateVector, Unitary2
from pulseloop.models.hamiltonian import Hamiltonian, as_hamiltonian
from pulseloop.models.phase import CyclicityResult
from pulseloop.models.trajectory import GridSpec, Trajectory
from pulseloop.services.su2_service import bloch_components
from pulseloop.utils.angles import wrap_phase

logger = get_logger(__name__)


def left_limit_times(times: np.ndarray, breakpoints) -> np.ndarray:
    """Nudge the closing node of every piece to its left limit"""
    t = np.array(times, dtype=float)
    for b in breakpoints[1:]:
        hits = np.flatnonzero(t == b)
        if len(hits):
            t[hits] = np.nextafter(b, -np.inf)
    return t


def _generator(h: Hamiltonian, times: np.ndarray) -> np.ndarray:
    a = -1j * h.matrices(times)
    if not np.all(np.isfinite(a)):
        bad = int(np.flatnonzero(~np.all(np.isfinite(a.reshape(len(times), -1)), axis=1))[0])
        raise IntegrationError("non-finite Hamiltonian sample", float(times[bad]))
    return a


def _step_matrices(h: Hamiltonian, t: np.ndarray) -> np.ndarray:
    """RK4 propagator of each step t[k] -> t[k+1] of one piece, shape (n, 2, 2)"""
    left = t[:-1]
    right = np.append(t[1:-1], np.nextafter(t[-1], -np.inf))
    step = (t[1:] - t[:-1])[:, None, None]
    a1 = _generator(h, left)
    a2 = _generator(h, 0.5 * (left + t[1:]))
    a3 = _generator(h, right)
    identity = np.eye(2, dtype=complex)
    b2 = a2 + 0.5 * step * (a2 @ a1)
    b3 = a2 + 0.5 * step * (a2 @ b2)
    b4 = a3 + step * (a3 @ b3)
    return identity + step / 6.0 * (a1 + 2.0 * b2 + 2.0 * b3 + b4)


def propagate(h, psi0: StateVector, grid: Optional[GridSpec] = None) -> Trajectory:
    """Integrate from psi0 over [0, 1]; the grid is refined with the Hamiltonian's breakpoints"""
    model = as_hamiltonian(h)
    grid = (grid or GridSpec()).with_breakpoints(model.breakpoints)
    bp = grid.breakpoints

    times = [np.array([0.0])]
    states = [psi0.as_array()[None, :]]
    psi = psi0.as_array()
    c0, c1 = complex(psi[0]), complex(psi[1])
    drift = 0.0

    for a, b, n in zip(bp[:-1], bp[1:], grid.segment_steps()):
        t = np.linspace(a, b, n + 1)
        m = _step_matrices(model, t).reshape(n, 4).tolist()
        out = np.empty((n, 2), dtype=complex)
        for k, (m00, m01, m10, m11) in enumerate(m):
            c0, c1 = m00 * c0 + m01 * c1, m10 * c0 + m11 * c1
            norm = (c0.real**2 + c0.imag**2 + c1.real**2 + c1.imag**2) ** 0.5
            if not np.isfinite(norm) or norm == 0.0:
                raise IntegrationError("state diverged", float(t[k + 1]))
            drift = max(drift, abs(norm - 1.0))
            c0, c1 = c0 / norm, c1 / norm
            out[k] = (c0, c1)
        times.append(t[1:])
        states.append(out)

    all_states = np.concatenate(states)
    traj = Trajectory(
        times=np.concatenate(times),
        states=all_states,
        bloch=bloch_components(all_states),
        breakpoints=bp,
        max_norm_drift=drift,
    )
    logger.debug(
        "propagated",
        extra={"nodes": len(traj), "pieces": len(bp) - 1, "max_norm_drift": drift},
    )
    return traj


def cyclicity_check(traj: Trajectory, tol: Optional[float] = None) -> CyclicityResult:
    """fidelity = |<psi(0)|psi(1)>|, total phase = arg <psi(0)|psi(1)>"""
    tol = settings.CYCLIC_TOL if tol is None else tol
    overlap = traj.initial.inner(traj.final)
    fidelity = float(abs(overlap))
    return CyclicityResult(
        cyclic=bool(1.0 - fidelity < tol),
        fidelity=fidelity,
        total_phase=wrap_phase(float(np.angle(overlap))),
    )


def reference_unitary(h, grid: Optional[GridSpec] = None) -> Unitary2:
    """Evolution operator from propagating |0> and |1>; second column re-orthogonalized"""
    u0 = propagate(h, StateVector(1 + 0j, 0j), grid).states[-1]
    u1 = propagate(h, StateVector(0j, 1 + 0j), grid).states[-1]
    u0 = u0 / np.linalg.norm(u0)
    u1 = u1 - np.vdot(u0, u1) * u0
    u1 = u1 / np.linalg.norm(u1)
    return Unitary2(np.column_stack([u0, u1]))

