"""
End-to-end checks run by ``pulseloop papercheck``.

Besides the canned scenarios this runs the orthogonality property of every
built-in profile, the quadrature-vs-closed-form cross-check on generated
tabulated profiles, the numerical property suite and the non-blocking probe of
geometric-phase robustness.
"""

from typing import List, Optional

import numpy as np
from scipy.linalg import expm
from scipy.stats import qmc

from pulseloop.config import settings
from pulseloop.core.errors import PulseLoopError
from pulseloop.core.logging import get_logger
from pulseloop.models.bloch import Y_AXIS, BlochVector, HamiltonianSample, Unitary2
from pulseloop.models.enums import ExpectationSource, SymmetryClass
from pulseloop.models.hamiltonian import ConstantHamiltonian
from pulseloop.models.profile import FluctuationProfile, TabulatedProfile
from pulseloop.models.trajectory import GridSpec
from pulseloop.schemas.reports import ExpectationCheck, ScenarioReport
from pulseloop.services.experiment_service import (
    run_case_iii,
    run_fluctuated_composite,
    run_ha_hb_comparison,
    run_ideal_composite,
    strong_noise_profile,
    uncorrelated_profiles,
)
from pulseloop.services.fluctuation_service import (
    FluctuatedHamiltonian,
    combined_profile,
    global_sine_profile,
    orthogonality_residual,
    piecewise_sine_profile,
    zero_profile,
)
from pulseloop.services.phase_service import (
    compare_to_ideal,
    decompose_phase,
    dynamical_phase,
    dynamical_phase_closed_form,
)
from pulseloop.services.propagation_service import propagate, reference_unitary
from pulseloop.services.pulse_service import COMPOSITE_90X180Y90X, ideal_hamiltonian, parse_sequence
from pulseloop.services.su2_service import bloch_to_state, deviation_up_to_global_phase, hamiltonian_matrix, su2_rotation

logger = get_logger(__name__)

TABULATED_NODES = 257


def _check(name, actual, expected, tolerance, source=ExpectationSource.DERIVED, blocking=True) -> ExpectationCheck:
    return ExpectationCheck(
        name=name, expected=expected, actual=float(actual), tolerance=tolerance, source=source, blocking=blocking
    )


def builtin_profiles() -> List[FluctuationProfile]:
    return [
        zero_profile(),
        piecewise_sine_profile(0.1, 0.1, 5, 5),
        global_sine_profile(0.1, 0.1, 5, 5),
        strong_noise_profile(),
        combined_profile(*uncorrelated_profiles(0.05, 0.05, 17, 23)),
    ]


def random_tabulated_profiles(n: int, start: int = 2) -> List[TabulatedProfile]:
    """
    Tabulated profiles from an unscrambled Halton sequence (deterministic, no seed):

        f = 20 a t(1-t)(t-1/4)(t-3/4)(1 + b t)
        g = 2 t(1-t)(c0 + c1 t + c2 t^2)

    f vanishes at the ends and at both phase jumps of the composite pulse, g at the ends.
    ``start`` skips the leading points; the first two give a = -1 and a = 0 (f == 0).
    """
    engine = qmc.Halton(d=5, scramble=False)
    engine.fast_forward(start)
    coeffs = 2.0 * engine.random(n) - 1.0
    t = np.linspace(0.0, 1.0, TABULATED_NODES)
    profiles = []
    for a, b, c0, c1, c2 in coeffs:
        f = 20.0 * a * t * (1.0 - t) * (t - 0.25) * (t - 0.75) * (1.0 + b * t)
        g = 2.0 * t * (1.0 - t) * (c0 + c1 * t + c2 * t**2)
        profiles.append(TabulatedProfile(np.column_stack([t, f, g])))
    return profiles


def orthogonality_check(profiles: Optional[List[FluctuationProfile]] = None) -> ScenarioReport:
    """max |m~ . n~| over 1024 points for every built-in profile"""
    seq = parse_sequence(COMPOSITE_90X180Y90X)
    profiles = profiles if profiles is not None else builtin_profiles() + random_tabulated_profiles(1)
    checks = [
        _check(f"orthogonality_{i}_{p.kind.value}", orthogonality_residual(seq, p), 0.0, 1e-10, ExpectationSource.PUBLISHED)
        for i, p in enumerate(profiles)
    ]
    return ScenarioReport(scenario="orthogonality", inputs={"profiles": len(profiles)}, checks=checks).finalize()


def cross_oracle_check(n: int = 20, grid: Optional[GridSpec] = None) -> ScenarioReport:
    """Trajectory quadrature of the dynamical phase against the closed form on generated profiles"""
    seq = parse_sequence(COMPOSITE_90X180Y90X)
    grid = grid or GridSpec()
    psi0 = bloch_to_state(Y_AXIS)
    checks = []
    largest = 0.0
    for i, profile in enumerate(random_tabulated_profiles(n)):
        h = FluctuatedHamiltonian(seq, profile)
        quadrature = dynamical_phase(propagate(h, psi0, grid), h)
        closed = dynamical_phase_closed_form(profile, +1, grid)
        largest = max(largest, abs(quadrature - closed))
        checks.append(_check(f"cross_oracle_{i}", quadrature - closed, 0.0, 1e-6))
    logger.info("cross oracle", extra={"profiles": n, "max_residual": largest})
    return ScenarioReport(
        scenario="cross_oracle",
        inputs={"profiles": n, "steps": grid.steps_per_unit_time},
        outputs={"max_residual": largest},
        checks=checks,
    ).finalize()


def property_suite(grid: Optional[GridSpec] = None) -> ScenarioReport:
    """Norm conservation, gauge invariance, grid-doubling stability, constant-H closed form"""
    grid = grid or GridSpec()
    seq = parse_sequence(COMPOSITE_90X180Y90X)
    ideal = ideal_hamiltonian(seq)
    fluctuated = FluctuatedHamiltonian(seq, piecewise_sine_profile(0.1, 0.1, 5, 5))
    psi0 = bloch_to_state(Y_AXIS)
    checks = []

    traj = propagate(fluctuated, psi0, grid)
    norms = np.linalg.norm(traj.states, axis=1)
    checks.append(_check("stored_norm", np.max(np.abs(norms - 1.0)), 0.0, 1e-9))
    checks.append(_check("norm_drift_per_step", traj.max_norm_drift, 0.0, 1e-10, blocking=False))

    base = decompose_phase(propagate(ideal, psi0, grid), ideal)
    phases = 2.0 * np.pi * qmc.Halton(d=1, scramble=False).random(11)[1:, 0]
    gauge = 0.0
    for alpha in phases:
        shifted = decompose_phase(propagate(ideal, psi0.with_global_phase(alpha), grid), ideal)
        gauge = max(
            gauge,
            abs(shifted.gamma_total - base.gamma_total),
            abs(shifted.gamma_dynamical - base.gamma_dynamical),
            abs(shifted.gamma_geometric - base.gamma_geometric),
            abs(shifted.fidelity - base.fidelity),
        )
    checks.append(_check("gauge_invariance", gauge, 0.0, 1e-10))

    coarse = traj.states[-1]
    fine = propagate(fluctuated, psi0, grid.doubled()).states[-1]
    checks.append(_check("grid_doubling", np.max(np.abs(fine - coarse)), 0.0, 1e-9))

    sample = HamiltonianSample(np.pi, BlochVector.normalized([1.0, 0.0, 1.0]))
    closed = su2_rotation(sample.axis, np.pi)
    simulated = reference_unitary(ConstantHamiltonian(sample), grid)
    checks.append(_check("constant_hamiltonian", deviation_up_to_global_phase(simulated, closed), 0.0, 1e-8))
    exponential = Unitary2(expm(-1j * hamiltonian_matrix(sample)))
    checks.append(_check("rotation_vs_expm", deviation_up_to_global_phase(exponential, closed), 0.0, 1e-12))

    return ScenarioReport(
        scenario="property_suite",
        inputs={"steps": grid.steps_per_unit_time},
        outputs={"max_norm_drift": traj.max_norm_drift},
        checks=checks,
    ).finalize()


def conjecture_probe(
    amplitudes=(0.05, 0.1, 0.2),
    frequencies=(3, 5),
    grid: Optional[GridSpec] = None,
) -> ScenarioReport:
    """
    |gamma~_g - gamma_g| over f0 x g0 x (xi = eta) for the piecewise-sine family.
    Values are reported, never judged.
    """
    grid = grid or GridSpec()
    seq = parse_sequence(COMPOSITE_90X180Y90X)
    psi0 = bloch_to_state(Y_AXIS)
    ideal_h = ideal_hamiltonian(seq)
    ideal = decompose_phase(propagate(ideal_h, psi0, grid), ideal_h)
    checks = []
    for f0 in amplitudes:
        for g0 in amplitudes:
            for nu in frequencies:
                h = FluctuatedHamiltonian(seq, piecewise_sine_profile(f0, g0, nu, nu))
                name = f"geometric_shift_f0={f0:g}_g0={g0:g}_xi=eta={nu}"
                try:
                    deviation = compare_to_ideal(decompose_phase(propagate(h, psi0, grid), h), ideal)
                except PulseLoopError as e:
                    logger.warning("probe point failed", extra={"point": name, "error": e.message})
                    deviation = float("nan")
                checks.append(_check(name, deviation, 0.0, None, blocking=False))
    values = [c.actual for c in checks if np.isfinite(c.actual)]
    return ScenarioReport(
        scenario="conjecture_probe",
        inputs={"amplitudes": list(amplitudes), "frequencies": list(frequencies), "steps": grid.steps_per_unit_time},
        outputs={"max_geometric_shift": max(values) if values else None},
        checks=checks,
    ).finalize()


def run_papercheck(grid: Optional[GridSpec] = None) -> List[ScenarioReport]:
    """
    Every anchored scenario with its tolerances. An explicit grid is used for all
    runs (including the strong-noise comparison); otherwise each run takes its default.
    """
    reports = [
        run_ideal_composite(grid),
        run_fluctuated_composite(
            piecewise_sine_profile(0.1, 0.1, 5, 5), grid, SymmetryClass.REFLECT_SYMMETRIC, published=True
        ),
        run_fluctuated_composite(
            global_sine_profile(0.1, 0.1, 5, 5), grid, SymmetryClass.SHIFT_SYMMETRIC, published=True
        ),
        run_ha_hb_comparison(strong_noise_profile(), grid),
        orthogonality_check(),
        cross_oracle_check(20, grid),
        property_suite(grid),
        run_case_iii(*uncorrelated_profiles(0.05, 0.05, 17, 23), grid=grid),
        run_case_iii(
            *uncorrelated_profiles(1.0, 1.0, 10, 10), grid=grid or GridSpec(settings.STRONG_NOISE_STEPS)
        ),
        conjecture_probe(grid=grid),
    ]
    failed = [r.scenario for r in reports if not r.ok]
    logger.info("check run finished", extra={"reports": len(reports), "failed": failed})
    return reports
