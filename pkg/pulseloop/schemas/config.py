"""Run, profile and sweep configuration files"""

from pathlib import Path
from typing import List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from pulseloop.models.enums import ProfileKind, ScenarioKind
from pulseloop.services.pulse_service import COMPOSITE_90X180Y90X


class ProfileConfig(BaseModel):
    """Fluctuation profile file; sine families use (f0, g0, xi, eta), tabulated ones use samples"""
    kind: ProfileKind
    f0: float = 0.0
    g0: float = 0.0
    xi: int = Field(default=1, ge=1)
    eta: int = Field(default=1, ge=1)
    cycles: int = Field(default=4, ge=1)
    samples: Optional[List[Tuple[float, float, float]]] = None

    model_config = ConfigDict(
        extra="forbid",
        json_schema_extra={
            "examples": [
                {"kind": "piecewise_sine", "f0": 0.1, "g0": 0.1, "xi": 5, "eta": 5},
                {"kind": "tabulated", "samples": [[0.0, 0.0, 0.0], [0.25, 0.01, 0.02], [0.5, 0.0, 0.03], [0.75, -0.01, 0.02], [1.0, 0.0, 0.0]]},
            ]
        },
    )

    @model_validator(mode="after")
    def check_samples(self) -> "ProfileConfig":
        if self.kind == ProfileKind.TABULATED and not self.samples:
            raise ValueError("tabulated profile requires 'samples'")
        if self.kind != ProfileKind.TABULATED and self.samples is not None:
            raise ValueError("'samples' is only valid for tabulated profiles")
        if self.kind != ProfileKind.GLOBAL_SINE and self.cycles != 4:
            raise ValueError("'cycles' is only valid for global_sine profiles")
        return self


def _parse_basis(v):
    if isinstance(v, str):
        parts = [p for p in v.replace(" ", "").split(",") if p]
        if len(parts) != 3:
            raise ValueError("basis must be three comma-separated numbers nx,ny,nz")
        return tuple(float(p) for p in parts)
    return v


class RunConfig(BaseModel):
    """Single simulate / phases run"""
    sequence: str = COMPOSITE_90X180Y90X
    profile: Optional[ProfileConfig] = None
    steps: Optional[int] = Field(default=None, ge=256)
    basis: Tuple[float, float, float] = (0.0, 1.0, 0.0)
    out: Optional[Path] = None
    every: int = Field(default=1, ge=1)
    reference_gauge: bool = False

    model_config = ConfigDict(extra="forbid")

    @field_validator("basis", mode="before")
    @classmethod
    def parse_basis(cls, v):
        return _parse_basis(v)


class SweepConfig(BaseModel):
    """Grid over (f0, g0, xi, eta) for one scenario"""
    scenario: ScenarioKind = ScenarioKind.FLUCTUATED_PIECEWISE
    f0: List[float] = Field(default_factory=lambda: [0.1])
    g0: List[float] = Field(default_factory=lambda: [0.1])
    xi: List[int] = Field(default_factory=lambda: [5])
    eta: List[int] = Field(default_factory=lambda: [5])
    steps: Optional[int] = Field(default=None, ge=256)
    workers: Optional[int] = Field(default=None, ge=1)
    out: Optional[Path] = None

    model_config = ConfigDict(
        extra="forbid",
        json_schema_extra={
            "example": {
                "scenario": "fluctuated_piecewise",
                "f0": [0.0, 0.1, 0.5],
                "g0": [0.0, 0.1, 0.5],
                "xi": [5],
                "eta": [5],
            }
        },
    )

    @property
    def points(self) -> int:
        return len(self.f0) * len(self.g0) * len(self.xi) * len(self.eta)
