"""Qubit value types: Bloch vectors, state vectors, 2x2 unitaries, Hamiltonian samples"""

from dataclasses import dataclass
from typing import Tuple

import numpy as np

from pulseloop.config import settings
from pulseloop.core.errors import DomainError


@dataclass(frozen=True)
class BlochVector:
    """Real unit 3-vector on the Bloch sphere"""
    nx: float
    ny: float
    nz: float

    def __post_init__(self) -> None:
        norm = float(np.sqrt(self.nx**2 + self.ny**2 + self.nz**2))
        if not np.isfinite(norm) or abs(norm - 1.0) > settings.UNIT_TOL:
            raise DomainError(f"Bloch vector must have unit length, got |n|={norm:.12g}")

    @classmethod
    def from_array(cls, v: np.ndarray) -> "BlochVector":
        return cls(float(v[0]), float(v[1]), float(v[2]))

    @classmethod
    def normalized(cls, v) -> "BlochVector":
        """Scale a nonzero 3-vector onto the sphere"""
        arr = np.asarray(v, dtype=float)
        norm = float(np.linalg.norm(arr))
        if norm == 0.0 or not np.isfinite(norm):
            raise DomainError("cannot normalize a zero or non-finite vector")
        return cls.from_array(arr / norm)

    def as_array(self) -> np.ndarray:
        return np.array([self.nx, self.ny, self.nz])

    def as_tuple(self) -> Tuple[float, float, float]:
        return (self.nx, self.ny, self.nz)

    def dot(self, other: "BlochVector") -> float:
        return self.nx * other.nx + self.ny * other.ny + self.nz * other.nz

    def __neg__(self) -> "BlochVector":
        return BlochVector(-self.nx, -self.ny, -self.nz)


X_AXIS = BlochVector(1.0, 0.0, 0.0)
Y_AXIS = BlochVector(0.0, 1.0, 0.0)
Z_AXIS = BlochVector(0.0, 0.0, 1.0)


@dataclass(frozen=True)
class StateVector:
    """Normalized amplitudes on |0>, |1>"""
    c0: complex
    c1: complex

    def __post_init__(self) -> None:
        norm2 = abs(self.c0) ** 2 + abs(self.c1) ** 2
        if not np.isfinite(norm2) or abs(norm2 - 1.0) > settings.UNIT_TOL:
            raise DomainError(f"state vector must be normalized, got <psi|psi>={norm2:.12g}")

    @classmethod
    def from_array(cls, v: np.ndarray) -> "StateVector":
        return cls(complex(v[0]), complex(v[1]))

    def as_array(self) -> np.ndarray:
        return np.array([self.c0, self.c1], dtype=complex)

    def inner(self, other: "StateVector") -> complex:
        """<self|other>"""
        return self.c0.conjugate() * other.c0 + self.c1.conjugate() * other.c1

    def with_global_phase(self, phase: float) -> "StateVector":
        w = complex(np.exp(1j * phase))
        return StateVector(w * self.c0, w * self.c1)


@dataclass(frozen=True, eq=False)
class Unitary2:
    """2x2 unitary matrix"""
    matrix: np.ndarray

    def __post_init__(self) -> None:
        m = np.asarray(self.matrix, dtype=complex)
        if m.shape != (2, 2):
            raise DomainError(f"expected a 2x2 matrix, got shape {m.shape}")
        deviation = float(np.max(np.abs(m.conj().T @ m - np.eye(2))))
        if not np.isfinite(deviation) or deviation > 1e-10:
            raise DomainError(f"matrix is not unitary (max |U^dag U - I| = {deviation:.3g})")
        object.__setattr__(self, "matrix", m)

    def __matmul__(self, other: "Unitary2") -> "Unitary2":
        return Unitary2(self.matrix @ other.matrix)

    def apply(self, psi: StateVector) -> StateVector:
        v = self.matrix @ psi.as_array()
        return StateVector.from_array(v / np.linalg.norm(v))

    def dagger(self) -> "Unitary2":
        return Unitary2(self.matrix.conj().T)


@dataclass(frozen=True)
class HamiltonianSample:
    """H = (omega/2) axis.sigma + (detuning_z/2) sigma_z at one instant"""
    omega: float
    axis: BlochVector
    detuning_z: float = 0.0
