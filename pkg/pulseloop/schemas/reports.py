"""Scenario reports and their CSV / JSON shapes"""

import math
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field

from pulseloop.models.enums import ExpectationSource, ReportStatus
from pulseloop.models.phase import GateReport, PhaseDecomposition

SWEEP_COLUMNS = [
    "scenario",
    "f0",
    "g0",
    "xi",
    "eta",
    "status",
    "fidelity",
    "gamma_total",
    "gamma_dynamical",
    "gamma_geometric",
    "final_nx",
    "final_ny",
    "final_nz",
    "message",
]


class ExpectationCheck(BaseModel):
    """One expected value with its tolerance and provenance"""
    name: str
    expected: Optional[float] = None
    actual: float
    tolerance: Optional[float] = None
    source: ExpectationSource
    blocking: bool = True

    @property
    def deviation(self) -> float:
        if self.expected is None:
            return abs(self.actual)
        return abs(self.actual - self.expected)

    @property
    def passed(self) -> bool:
        if self.tolerance is None:
            return True
        return math.isfinite(self.actual) and self.deviation <= self.tolerance


class ScenarioReport(BaseModel):
    """Inputs, outputs and verdict of one scenario run"""
    scenario: str
    inputs: Dict[str, Any] = Field(default_factory=dict)
    outputs: Dict[str, Any] = Field(default_factory=dict)
    checks: List[ExpectationCheck] = Field(default_factory=list)
    status: ReportStatus = ReportStatus.REPORTED
    message: str = ""

    def finalize(self) -> "ScenarioReport":
        """Status from the blocking checks; scenarios without thresholds stay 'reported'"""
        if self.status == ReportStatus.ERROR:
            return self
        blocking = [c for c in self.checks if c.blocking and c.tolerance is not None]
        if not blocking:
            self.status = ReportStatus.REPORTED
        elif all(c.passed for c in blocking):
            self.status = ReportStatus.PASSED
        else:
            self.status = ReportStatus.FAILED
            failed = [c.name for c in blocking if not c.passed]
            self.message = "failed: " + ", ".join(failed)
        return self

    @property
    def ok(self) -> bool:
        return self.status in (ReportStatus.PASSED, ReportStatus.REPORTED)

    def to_row(self) -> Dict[str, Any]:
        """Flat row in SWEEP_COLUMNS order"""
        row: Dict[str, Any] = {col: "" for col in SWEEP_COLUMNS}
        row["scenario"] = self.scenario
        row["status"] = self.status.value
        row["message"] = self.message
        for key in ("f0", "g0", "xi", "eta"):
            row[key] = self.inputs.get(key, "")
        for key in ("fidelity", "gamma_total", "gamma_dynamical", "gamma_geometric"):
            row[key] = self.outputs.get(key, "")
        final = self.outputs.get("final_bloch")
        if final is not None:
            row["final_nx"], row["final_ny"], row["final_nz"] = final
        return row

    def to_json_dict(self) -> Dict[str, Any]:
        data = self.model_dump(mode="json")
        data["checks"] = [
            {**c.model_dump(mode="json"), "deviation": c.deviation, "passed": c.passed} for c in self.checks
        ]
        return data


class PhaseDecompositionOut(BaseModel):
    gamma_total: float
    gamma_dynamical: float
    gamma_geometric: float
    fidelity: float

    @classmethod
    def from_domain(cls, d: PhaseDecomposition) -> "PhaseDecompositionOut":
        return cls(
            gamma_total=d.gamma_total,
            gamma_dynamical=d.gamma_dynamical,
            gamma_geometric=d.gamma_geometric,
            fidelity=d.fidelity,
        )


class GateReportOut(BaseModel):
    """JSON shape of a reconstructed gate"""
    basis_plus: List[float]
    basis_minus: List[float]
    plus: PhaseDecompositionOut
    minus: PhaseDecompositionOut
    unitary_re: List[List[float]]
    unitary_im: List[List[float]]
    reference_deviation: float
    antisymmetry_residual: float
    max_drive_alignment: float
    solid_angle_plus: Optional[float] = None

    @classmethod
    def from_domain(cls, r: GateReport) -> "GateReportOut":
        return cls(
            basis_plus=list(r.basis_plus.as_tuple()),
            basis_minus=list(r.basis_minus.as_tuple()),
            plus=PhaseDecompositionOut.from_domain(r.plus),
            minus=PhaseDecompositionOut.from_domain(r.minus),
            unitary_re=r.unitary.matrix.real.tolist(),
            unitary_im=r.unitary.matrix.imag.tolist(),
            reference_deviation=r.reference_deviation,
            antisymmetry_residual=r.antisymmetry_residual,
            max_drive_alignment=r.max_drive_alignment,
            solid_angle_plus=r.solid_angle_plus if math.isfinite(r.solid_angle_plus) else None,
        )
