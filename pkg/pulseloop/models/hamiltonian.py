"""Time-dependent single-qubit Hamiltonians on [0, 1].

Every model exposes vectorized sampling (``sample_arrays``) so the propagator
and the quadrature can evaluate a whole grid in one call, and the list of
breakpoints where it may jump. Point evaluation is right-continuous.
"""

import abc
from typing import Callable, Sequence, Tuple

import numpy as np

from pulseloop.core.errors import DomainError
from pulseloop.models.bloch import BlochVector, HamiltonianSample
from pulseloop.services.su2_service import SIGMA_Z, pauli_vector

SampleArrays = Tuple[np.ndarray, np.ndarray, np.ndarray]


def check_times(times: np.ndarray) -> np.ndarray:
    t = np.atleast_1d(np.asarray(times, dtype=float))
    if np.any(t < 0.0) or np.any(t > 1.0) or not np.all(np.isfinite(t)):
        bad = t[(t < 0.0) | (t > 1.0) | ~np.isfinite(t)][0]
        raise DomainError(f"time {bad!r} outside [0, 1]")
    return t


class Hamiltonian(abc.ABC):
    """H(t) = (omega/2) m.sigma + (detuning_z/2) sigma_z"""

    @property
    def breakpoints(self) -> Tuple[float, ...]:
        return (0.0, 1.0)

    @abc.abstractmethod
    def sample_arrays(self, times: np.ndarray) -> SampleArrays:
        """omega (N,), axis (N, 3), detuning_z (N,) at the given times"""

    def __call__(self, t: float) -> HamiltonianSample:
        omega, axis, detuning = self.sample_arrays(check_times(np.array([t])))
        return HamiltonianSample(
            omega=float(omega[0]),
            axis=BlochVector.normalized(axis[0]),
            detuning_z=float(detuning[0]),
        )

    def matrices(self, times: np.ndarray) -> np.ndarray:
        """Stacked 2x2 matrices, shape (N, 2, 2)"""
        omega, axis, detuning = self.sample_arrays(check_times(times))
        drive = np.einsum("ni,ijk->njk", axis, pauli_vector())
        return 0.5 * omega[:, None, None] * drive + 0.5 * detuning[:, None, None] * SIGMA_Z

    def energies(self, times: np.ndarray, bloch: np.ndarray) -> np.ndarray:
        """<n|H|n> = (omega/2) m.n + (detuning_z/2) n_z for Bloch vectors aligned with times"""
        omega, axis, detuning = self.sample_arrays(check_times(times))
        return 0.5 * omega * np.sum(axis * bloch, axis=1) + 0.5 * detuning * bloch[:, 2]


class ConstantHamiltonian(Hamiltonian):
    """Time-independent Hamiltonian"""

    def __init__(self, sample: HamiltonianSample) -> None:
        self.sample = sample

    def sample_arrays(self, times: np.ndarray) -> SampleArrays:
        n = len(times)
        return (
            np.full(n, self.sample.omega),
            np.tile(self.sample.axis.as_array(), (n, 1)),
            np.full(n, self.sample.detuning_z),
        )


class FunctionHamiltonian(Hamiltonian):
    """Adapter for a plain callable t -> HamiltonianSample (sampled point by point)"""

    def __init__(
        self,
        fn: Callable[[float], HamiltonianSample],
        breakpoints: Sequence[float] = (0.0, 1.0),
    ) -> None:
        self.fn = fn
        self._breakpoints = tuple(sorted(set(float(b) for b in breakpoints) | {0.0, 1.0}))

    @property
    def breakpoints(self) -> Tuple[float, ...]:
        return self._breakpoints

    def sample_arrays(self, times: np.ndarray) -> SampleArrays:
        samples = [self.fn(float(t)) for t in times]
        return (
            np.array([s.omega for s in samples], dtype=float),
            np.array([s.axis.as_array() for s in samples], dtype=float).reshape(-1, 3),
            np.array([s.detuning_z for s in samples], dtype=float),
        )


def as_hamiltonian(h) -> Hamiltonian:
    """Accept a Hamiltonian model or a plain callable"""
    if isinstance(h, Hamiltonian):
        return h
    if callable(h):
        return FunctionHamiltonian(h)
    raise DomainError(f"expected a Hamiltonian or callable, got {type(h).__name__}")
