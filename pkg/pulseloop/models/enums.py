"""Centralized Enum Definitions"""

import enum


# Fluctuation profiles


class ProfileKind(str, enum.Enum):
    """Profile families accepted in profile config files"""
    PIECEWISE_SINE = "piecewise_sine"
    GLOBAL_SINE = "global_sine"
    TABULATED = "tabulated"
    ZERO = "zero"
    COMBINED = "combined"


class SymmetryClass(str, enum.Enum):
    """Cases in which the fluctuated dynamical phase cancels exactly"""
    ZERO_G = "ZeroG"
    SHIFT_SYMMETRIC = "ShiftSymmetric"
    REFLECT_SYMMETRIC = "ReflectSymmetric"
    UNCLASSIFIED = "Unclassified"


# Experiments


class ScenarioKind(str, enum.Enum):
    """Canned scenarios; sweepable ones take (f0, g0, xi, eta)"""
    IDEAL_COMPOSITE = "ideal_composite"
    FLUCTUATED_PIECEWISE = "fluctuated_piecewise"
    FLUCTUATED_GLOBAL = "fluctuated_global"
    HA_HB_COMPARISON = "ha_hb_comparison"
    CASE_III = "case_iii"


class ExpectationSource(str, enum.Enum):
    """Provenance of an expected value"""
    PUBLISHED = "published"
    DERIVED = "derived"
    TRIVIAL = "trivial"


class ReportStatus(str, enum.Enum):
    """Outcome of a scenario run"""
    PASSED = "passed"
    FAILED = "failed"
    REPORTED = "reported"
    ERROR = "error"
