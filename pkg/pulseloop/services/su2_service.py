"""
Closed-form SU(2) algebra for a single qubit.

States use the gauge c0 real and >= 0; the south pole maps to (0, 1).
Convention throughout: H = (omega/2) m.sigma + (detuning_z/2) sigma_z with hbar = 1.
"""

import numpy as np

from pulseloop.config import settings
from pulseloop.core.errors import DomainError
from pulseloop.models.bloch import BlochVector, HamiltonianSample, StateVector, Unitary2

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
IDENTITY = np.eye(2, dtype=complex)


def pauli_vector() -> np.ndarray:
    """Stack (sigma_x, sigma_y, sigma_z) with shape (3, 2, 2)"""
    return np.stack([SIGMA_X, SIGMA_Y, SIGMA_Z])


def _require_unit(v: np.ndarray, what: str) -> None:
    norm = float(np.linalg.norm(v))
    if not np.isfinite(norm) or abs(norm - 1.0) > settings.INPUT_UNIT_TOL:
        raise DomainError(f"{what} must have unit length, got |v|={norm:.12g}")


def bloch_to_state(n: BlochVector) -> StateVector:
    """
    State with Bloch vector n in the gauge c0 real and >= 0.

    |n> = (cos(theta/2), e^{i phi} sin(theta/2)); the south pole maps to (0, 1).
    """
    v = n.as_array()
    _require_unit(v, "Bloch vector")
    nx, ny, nz = v / np.linalg.norm(v)
    if nz == -1.0:
        return StateVector(0j, 1 + 0j)
    c0 = np.sqrt(max(0.0, (1.0 + nz) / 2.0))
    c1 = np.sqrt(max(0.0, (1.0 - nz) / 2.0)) * np.exp(1j * np.arctan2(ny, nx))
    norm = np.sqrt(c0**2 + abs(c1) ** 2)
    return StateVector(complex(c0 / norm), complex(c1 / norm))


def state_to_bloch(psi: StateVector) -> BlochVector:
    """n = <psi|sigma|psi>; invariant under the global phase of psi"""
    return BlochVector.from_array(bloch_components(psi.as_array()))


def bloch_components(states: np.ndarray) -> np.ndarray:
    """
    Bloch vectors of one state (shape (2,)) or a stack of states (shape (N, 2)).

    Each state is normalized first; a zero amplitude pair is a domain error.
    """
    psi = np.asarray(states, dtype=complex)
    norm2 = np.sum(np.abs(psi) ** 2, axis=-1, keepdims=True)
    if np.any(norm2 == 0.0) or not np.all(np.isfinite(norm2)):
        raise DomainError("cannot take the Bloch vector of a zero or non-finite state")
    psi = psi / np.sqrt(norm2)
    c0 = psi[..., 0]
    c1 = psi[..., 1]
    cross = np.conj(c0) * c1
    return np.stack(
        [2.0 * cross.real, 2.0 * cross.imag, np.abs(c0) ** 2 - np.abs(c1) ** 2],
        axis=-1,
    )


def hamiltonian_matrix(h: HamiltonianSample) -> np.ndarray:
    """2x2 Hermitian matrix of a Hamiltonian sample"""
    m = h.axis.as_array()
    return 0.5 * h.omega * np.einsum("i,ijk->jk", m, pauli_vector()) + 0.5 * h.detuning_z * SIGMA_Z


def energy_expectation(psi: StateVector, h: HamiltonianSample) -> float:
    """<psi|H|psi> = (omega/2) m.n + (detuning_z/2) n_z"""
    n = bloch_components(psi.as_array())
    return float(0.5 * h.omega * np.dot(h.axis.as_array(), n) + 0.5 * h.detuning_z * n[2])


def su2_rotation(axis: BlochVector, angle: float) -> Unitary2:
    """exp(-i angle/2 axis.sigma) = cos(angle/2) I - i sin(angle/2) axis.sigma"""
    a = axis.as_array()
    _require_unit(a, "rotation axis")
    a = a / np.linalg.norm(a)
    generator = np.einsum("i,ijk->jk", a, pauli_vector())
    return Unitary2(np.cos(angle / 2.0) * IDENTITY - 1j * np.sin(angle / 2.0) * generator)


def rotate_bloch(u: Unitary2, n: BlochVector) -> BlochVector:
    """Bloch vector of U|n>"""
    return state_to_bloch(u.apply(bloch_to_state(n)))


def global_phase_align(a: np.ndarray, b: np.ndarray) -> complex:
    """
    Phase e^{i chi} such that a ~ e^{i chi} b, from tr(b^dag a) / |tr(b^dag a)|.
    Falls back to the largest entry of b when the trace vanishes.
    """
    inner = np.trace(b.conj().T @ a)
    if abs(inner) < 1e-15:
        idx = np.unravel_index(np.argmax(np.abs(b)), b.shape)
        inner = a[idx] * np.conj(b[idx])
        if abs(inner) < 1e-15:
            return 1.0 + 0.0j
    return complex(inner / abs(inner))


def deviation_up_to_global_phase(a: Unitary2, b: Unitary2) -> float:
    """max |a - e^{i chi} b| elementwise after aligning the global phase"""
    phase = global_phase_align(a.matrix, b.matrix)
    return float(np.max(np.abs(a.matrix - phase * b.matrix)))


def equal_up_to_global_phase(a: Unitary2, b: Unitary2, atol: float = 1e-8) -> bool:
    return deviation_up_to_global_phase(a, b) <= atol


def gate_infidelity(a: Unitary2, b: Unitary2) -> float:
    """1 - |tr(a^dag b)| / 2"""
    return float(1.0 - abs(np.trace(a.matrix.conj().T @ b.matrix)) / 2.0)
