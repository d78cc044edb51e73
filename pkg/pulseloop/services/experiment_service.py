"""
Canned scenarios for the 90x180y90x composite pulse and the two-level drive comparison.

Every scenario returns a ScenarioReport; numeric failures inside a scenario are
recorded on the report instead of raised, so sweeps and the full check run keep
going.
"""

from typing import Dict, List, Optional, Tuple

import numpy as np

from pulseloop.config import settings
from pulseloop.core.errors import BoundaryConditionError, NonCyclicEvolutionError, PulseLoopError
from pulseloop.core.logging import get_logger
from pulseloop.models.bloch import X_AXIS, Y_AXIS, BlochVector, StateVector
from pulseloop.models.enums import ExpectationSource, ProfileKind, ReportStatus, ScenarioKind, SymmetryClass
from pulseloop.models.hamiltonian import Hamiltonian, SampleArrays
from pulseloop.models.phase import GateReport
from pulseloop.models.profile import FluctuationProfile, GlobalSineProfile
from pulseloop.models.trajectory import GridSpec
from pulseloop.schemas.reports import ExpectationCheck, ScenarioReport
from pulseloop.services.fluctuation_service import (
    FluctuatedHamiltonian,
    check_boundary_conditions,
    check_breakpoint_continuity,
    classify_symmetry,
    combined_profile,
    global_sine_profile,
    zero_profile,
)
from pulseloop.services.phase_service import (
    dynamical_phase,
    dynamical_phase_closed_form,
    gate_from_simulation,
)
from pulseloop.services.propagation_service import propagate
from pulseloop.services.pulse_service import COMPOSITE_90X180Y90X, parse_sequence
from pulseloop.services.su2_service import bloch_to_state, deviation_up_to_global_phase, su2_rotation

logger = get_logger(__name__)

HALF_PI = 0.5 * np.pi

# Endpoint of the fluctuated H_B evolution quoted to two decimals
HB_STRONG_NOISE_ENDPOINT = (0.95, -0.26, -0.16)
HB_ENDPOINT_TOL = 0.01

SYMMETRIC_CLASSES = (SymmetryClass.ZERO_G, SymmetryClass.SHIFT_SYMMETRIC, SymmetryClass.REFLECT_SYMMETRIC)

FLUCTUATED_SCENARIOS = {
    ProfileKind.PIECEWISE_SINE: ScenarioKind.FLUCTUATED_PIECEWISE.value,
    ProfileKind.GLOBAL_SINE: ScenarioKind.FLUCTUATED_GLOBAL.value,
}


TWO_LEVEL_CYCLES = 1


def two_level_profile(f0: float, g0: float, xi: int, eta: int) -> GlobalSineProfile:
    """f = f0 sin(2 pi xi t), g = g0 sin(2 pi eta t); the family of the H_A / H_B comparison"""
    return global_sine_profile(f0, g0, xi, eta, cycles=TWO_LEVEL_CYCLES)


def strong_noise_profile() -> GlobalSineProfile:
    """f = g = sin(20 pi t)"""
    return two_level_profile(1.0, 1.0, 10, 10)


def _grid(grid: Optional[GridSpec], steps: Optional[int] = None) -> GridSpec:
    if grid is not None:
        return grid
    return GridSpec(steps or settings.STEPS)


def _check(
    name: str,
    actual: float,
    expected: Optional[float],
    tolerance: Optional[float],
    source: ExpectationSource,
    blocking: bool = True,
) -> ExpectationCheck:
    return ExpectationCheck(
        name=name,
        expected=expected,
        actual=float(actual),
        tolerance=tolerance,
        source=source,
        blocking=blocking,
    )


def _vector_checks(
    prefix: str,
    actual: BlochVector,
    expected: Tuple[float, float, float],
    tolerance: float,
    source: ExpectationSource,
    blocking: bool = True,
) -> List[ExpectationCheck]:
    return [
        _check(f"{prefix}_{axis}", a, e, tolerance, source, blocking)
        for axis, a, e in zip("xyz", actual.as_tuple(), expected)
    ]


def _gate_outputs(report: GateReport) -> Dict[str, object]:
    return {
        "fidelity": report.plus.fidelity,
        "gamma_total": report.plus.gamma_total,
        "gamma_dynamical": report.plus.gamma_dynamical,
        "gamma_geometric": report.plus.gamma_geometric,
        "gamma_total_minus": report.minus.gamma_total,
        "gamma_dynamical_minus": report.minus.gamma_dynamical,
        "gamma_geometric_minus": report.minus.gamma_geometric,
        "solid_angle": report.solid_angle_plus,
        "reference_deviation": report.reference_deviation,
        "antisymmetry_residual": report.antisymmetry_residual,
        "max_drive_alignment": report.max_drive_alignment,
        "final_bloch": list(report.final_plus.as_tuple()),
    }


def _error_report(scenario: str, inputs: Dict[str, object], exc: Exception) -> ScenarioReport:
    logger.warning("scenario failed", extra={"scenario": scenario, "error": str(exc)})
    return ScenarioReport(scenario=scenario, inputs=inputs, status=ReportStatus.ERROR, message=str(exc))


# Ideal composite pulse


def run_ideal_composite(grid: Optional[GridSpec] = None) -> ScenarioReport:
    """90x180y90x without noise: gamma+- = -+pi/2, no dynamical part, Omega = pi"""
    grid = _grid(grid)
    seq = parse_sequence(COMPOSITE_90X180Y90X)
    inputs = {"sequence": COMPOSITE_90X180Y90X, "steps": grid.steps_per_unit_time, "basis": list(Y_AXIS.as_tuple())}
    try:
        gate = gate_from_simulation(seq, None, Y_AXIS, grid)
    except PulseLoopError as e:
        return _error_report(ScenarioKind.IDEAL_COMPOSITE.value, inputs, e)

    target = su2_rotation(Y_AXIS, np.pi)
    src = ExpectationSource.PUBLISHED
    checks = [
        _check("gamma_plus", gate.plus.gamma_total, -HALF_PI, 1e-8, src),
        _check("gamma_minus", gate.minus.gamma_total, HALF_PI, 1e-8, src),
        _check("gamma_dynamical_plus", gate.plus.gamma_dynamical, 0.0, 1e-9, src),
        _check("gamma_dynamical_minus", gate.minus.gamma_dynamical, 0.0, 1e-9, src),
        _check("gate_deviation", deviation_up_to_global_phase(gate.unitary, target), 0.0, 1e-8, src),
        _check("solid_angle", gate.solid_angle_plus, np.pi, 1e-3, src),
        _check("aa_solid_angle_relation", gate.solid_angle_residual, 0.0, 1e-3, src),
    ]
    report = ScenarioReport(
        scenario=ScenarioKind.IDEAL_COMPOSITE.value,
        inputs=inputs,
        outputs=_gate_outputs(gate),
        checks=checks,
    ).finalize()
    logger.info("ideal composite", extra={"status": report.status.value})
    return report


# Fluctuated composite pulse


def run_fluctuated_composite(
    profile: FluctuationProfile,
    grid: Optional[GridSpec] = None,
    expected_symmetry: Optional[SymmetryClass] = None,
    published: bool = False,
) -> ScenarioReport:
    """
    Fluctuated 90x180y90x from the +-y basis. Phase values are blocking
    expectations when the profile falls in a class where the dynamical phase
    cancels (or when the caller marks the run as a published data point);
    otherwise they are reported.
    """
    grid = _grid(grid)
    seq = parse_sequence(COMPOSITE_90X180Y90X)
    scenario = FLUCTUATED_SCENARIOS.get(profile.kind, "fluctuated_composite")
    inputs = {"sequence": COMPOSITE_90X180Y90X, "steps": grid.steps_per_unit_time, **profile.params}

    ends = check_boundary_conditions(profile)
    joints = check_breakpoint_continuity(profile, seq)
    if not (ends.ok and joints.ok):
        residuals = {**ends.residuals, **joints.residuals}
        return _error_report(
            scenario,
            inputs,
            BoundaryConditionError("profile violates the boundary conditions: " + ", ".join(
                f"{k}={v:.3g}" for k, v in residuals.items() if v >= settings.BOUNDARY_TOL
            )),
        )

    symmetry = classify_symmetry(profile)
    try:
        gate = gate_from_simulation(seq, profile, Y_AXIS, grid)
    except NonCyclicEvolutionError as e:
        report = ScenarioReport(
            scenario=scenario,
            inputs=inputs,
            outputs={"fidelity": e.fidelity, "gamma_total": e.total_phase, "symmetry": symmetry.value},
            checks=[_check("cyclic_fidelity", e.fidelity, 1.0, settings.CYCLIC_TOL, ExpectationSource.TRIVIAL)],
        )
        return report.finalize()
    except PulseLoopError as e:
        return _error_report(scenario, inputs, e)

    closed_plus = dynamical_phase_closed_form(profile, +1, grid)
    closed_minus = dynamical_phase_closed_form(profile, -1, grid)
    geometric = symmetry in SYMMETRIC_CLASSES or published
    src = ExpectationSource.PUBLISHED if published else ExpectationSource.DERIVED

    checks = [
        _check("cyclic_infidelity", 1.0 - gate.plus.fidelity, 0.0, 1e-9, ExpectationSource.TRIVIAL),
        _check("gamma_plus", gate.plus.gamma_total, -HALF_PI, 1e-6, src, geometric),
        _check("gamma_minus", gate.minus.gamma_total, HALF_PI, 1e-6, src, geometric),
        _check("gamma_geometric_plus", gate.plus.gamma_geometric, -HALF_PI, 1e-6, src, geometric),
        _check("gamma_geometric_minus", gate.minus.gamma_geometric, HALF_PI, 1e-6, src, geometric),
        _check("gamma_dynamical_plus", gate.plus.gamma_dynamical, 0.0, 1e-6, src, geometric),
        _check("gamma_dynamical_closed_form", closed_plus, 0.0, 1e-6, src, geometric),
        _check(
            "dynamical_phase_cross_oracle",
            gate.plus.gamma_dynamical - closed_plus,
            0.0,
            1e-6,
            ExpectationSource.DERIVED,
        ),
        _check("antisymmetry_residual", gate.antisymmetry_residual, 0.0, 1e-6, ExpectationSource.DERIVED),
        _check("aa_solid_angle_relation", gate.solid_angle_residual, 0.0, 1e-3, ExpectationSource.DERIVED),
        _check("solid_angle", gate.solid_angle_plus, np.pi, 1e-3, src, geometric),
        _check("reference_deviation", gate.reference_deviation, 0.0, 1e-6, ExpectationSource.DERIVED),
    ]
    if expected_symmetry is not None:
        checks.append(
            _check(
                f"symmetry_is_{expected_symmetry.value}",
                0.0 if symmetry == expected_symmetry else 1.0,
                0.0,
                0.0,
                ExpectationSource.PUBLISHED,
            )
        )

    outputs = _gate_outputs(gate)
    outputs.update(
        {
            "symmetry": symmetry.value,
            "gamma_dynamical_closed_form": closed_plus,
            "gamma_dynamical_closed_form_minus": closed_minus,
        }
    )
    report = ScenarioReport(scenario=scenario, inputs=inputs, outputs=outputs, checks=checks).finalize()
    logger.info(
        "fluctuated composite",
        extra={"status": report.status.value, "symmetry": symmetry.value, "gamma_d": gate.plus.gamma_dynamical},
    )
    return report


# Two-level drive comparison


class TwoLevelDriveHamiltonian(Hamiltonian):
    """
    H = (1/2)(omega0 + f') (cos(phi0 + g), sin(phi0 + g), 0).sigma + (1/2)(delta0 + g') sigma_z
    """

    def __init__(
        self,
        omega0: float,
        phase0: float,
        detuning0: float,
        profile: Optional[FluctuationProfile] = None,
    ) -> None:
        self.omega0 = omega0
        self.phase0 = phase0
        self.detuning0 = detuning0
        self.profile = profile or zero_profile()

    @property
    def breakpoints(self) -> Tuple[float, ...]:
        return self.profile.breakpoints

    def sample_arrays(self, times: np.ndarray) -> SampleArrays:
        phi = self.phase0 + self.profile.g(times)
        axis = np.stack([np.cos(phi), np.sin(phi), np.zeros_like(phi)], axis=1)
        return self.omega0 + self.profile.df(times), axis, self.detuning0 + self.profile.dg(times)


def hamiltonian_a(profile: Optional[FluctuationProfile] = None) -> TwoLevelDriveHamiltonian:
    """pi sigma_y / 4 with its fluctuated form"""
    return TwoLevelDriveHamiltonian(HALF_PI, HALF_PI, 0.0, profile)


def hamiltonian_b(profile: Optional[FluctuationProfile] = None) -> TwoLevelDriveHamiltonian:
    """pi (sigma_x + sigma_z) / (2 sqrt 2) with its fluctuated form"""
    return TwoLevelDriveHamiltonian(np.pi / np.sqrt(2.0), 0.0, np.pi / np.sqrt(2.0), profile)


def run_ha_hb_comparison(
    profile: Optional[FluctuationProfile] = None,
    grid: Optional[GridSpec] = None,
) -> ScenarioReport:
    """
    Evolve |0> under the fluctuated H_A and H_B; both ideal evolutions end at +x.
    H_A keeps that endpoint under any regular fluctuation, H_B does not.
    """
    profile = profile if profile is not None else strong_noise_profile()
    grid = _grid(grid, settings.STRONG_NOISE_STEPS)
    scenario = ScenarioKind.HA_HB_COMPARISON.value
    inputs = {"steps": grid.steps_per_unit_time, **profile.params}
    psi0 = StateVector(1 + 0j, 0j)
    try:
        final_a = propagate(hamiltonian_a(profile), psi0, grid).final_bloch
        final_b = propagate(hamiltonian_b(profile), psi0, grid).final_bloch
    except PulseLoopError as e:
        return _error_report(scenario, inputs, e)

    is_strong = profile.params == strong_noise_profile().params
    is_zero = profile.kind == ProfileKind.ZERO
    ideal = X_AXIS.as_tuple()

    checks = _vector_checks("final_a", final_a, ideal, 1e-6, ExpectationSource.PUBLISHED)
    if is_strong:
        checks += _vector_checks("final_b", final_b, HB_STRONG_NOISE_ENDPOINT, HB_ENDPOINT_TOL, ExpectationSource.PUBLISHED)
    elif is_zero:
        checks += _vector_checks("final_b", final_b, ideal, 1e-6, ExpectationSource.PUBLISHED)
    else:
        checks += _vector_checks("final_b", final_b, ideal, None, ExpectationSource.DERIVED, blocking=False)

    report = ScenarioReport(
        scenario=scenario,
        inputs=inputs,
        outputs={
            "final_bloch_a": list(final_a.as_tuple()),
            "final_bloch": list(final_b.as_tuple()),
            "distance_b_to_ideal": float(np.linalg.norm(final_b.as_array() - X_AXIS.as_array())),
        },
        checks=checks,
    ).finalize()
    logger.info("H_A / H_B comparison", extra={"status": report.status.value, "final_b": final_b.as_tuple()})
    return report


# Uncorrelated fluctuations


def run_case_iii(
    profile_f: FluctuationProfile,
    profile_g: FluctuationProfile,
    grid: Optional[GridSpec] = None,
) -> ScenarioReport:
    """
    f from one profile, g from an independent one. The dynamical phase is only
    expected to be small, so its magnitude is reported rather than judged;
    classified profiles and the quadrature cross-check are still enforced.
    """
    grid = _grid(grid)
    seq = parse_sequence(COMPOSITE_90X180Y90X)
    profile = combined_profile(profile_f, profile_g)
    scenario = ScenarioKind.CASE_III.value
    inputs = {"steps": grid.steps_per_unit_time, "f_from": profile_f.params, "g_from": profile_g.params}
    try:
        h = FluctuatedHamiltonian(seq, profile)
        traj = propagate(h, bloch_to_state(Y_AXIS), grid)
        gamma_d = dynamical_phase(traj, h)
        closed = dynamical_phase_closed_form(profile, +1, grid)
    except PulseLoopError as e:
        return _error_report(scenario, inputs, e)

    symmetry = classify_symmetry(profile)
    symmetric = symmetry in SYMMETRIC_CLASSES
    checks = [
        _check(
            "gamma_dynamical",
            gamma_d,
            0.0,
            1e-6 if symmetric else None,
            ExpectationSource.DERIVED,
            blocking=symmetric,
        ),
        _check("dynamical_phase_cross_oracle", gamma_d - closed, 0.0, 1e-6, ExpectationSource.DERIVED),
    ]
    report = ScenarioReport(
        scenario=scenario,
        inputs=inputs,
        outputs={
            "symmetry": symmetry.value,
            "gamma_dynamical": gamma_d,
            "abs_gamma_dynamical": abs(gamma_d),
            "gamma_dynamical_closed_form": closed,
            "cross_oracle_residual": abs(gamma_d - closed),
            "final_bloch": list(traj.final_bloch.as_tuple()),
        },
        checks=checks,
    ).finalize()
    logger.info("uncorrelated fluctuations", extra={"abs_gamma_d": abs(gamma_d), "symmetry": symmetry.value})
    return report


def uncorrelated_profiles(f0: float, g0: float, xi: int, eta: int) -> Tuple[GlobalSineProfile, GlobalSineProfile]:
    """Global sines carrying only f (frequency xi) and only g (frequency eta)"""
    return global_sine_profile(f0, 0.0, xi, 1), global_sine_profile(0.0, g0, 1, eta)

