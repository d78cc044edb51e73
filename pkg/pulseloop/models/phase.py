"""Results of phase analysis"""

from dataclasses import dataclass, field
from typing import Dict

from pulseloop.models.bloch import BlochVector, Unitary2


@dataclass(frozen=True)
class BoundaryCheck:
    ok: bool
    residuals: Dict[str, float] = field(default_factory=dict)


@dataclass(frozen=True)
class CyclicityResult:
    cyclic: bool
    fidelity: float
    total_phase: float


@dataclass(frozen=True)
class PhaseDecomposition:
    """Total, dynamical and geometric phase, each wrapped to (-pi, pi]"""
    gamma_total: float
    gamma_dynamical: float
    gamma_geometric: float
    fidelity: float


@dataclass(frozen=True)
class GateReport:
    """Gate reconstructed from the eigenphases of the basis pair +-n"""
    basis_plus: BlochVector
    basis_minus: BlochVector
    final_plus: BlochVector
    plus: PhaseDecomposition
    minus: PhaseDecomposition
    unitary: Unitary2
    reference_deviation: float
    antisymmetry_residual: float
    max_drive_alignment: float
    solid_angle_plus: float
    solid_angle_residual: float
