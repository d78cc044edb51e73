"""Building blocks of the canned scenarios."""

import numpy as np
import pytest

from pulseloop.models.bloch import X_AXIS
from pulseloop.models.enums import ProfileKind, ReportStatus, SymmetryClass
from pulseloop.models.trajectory import GridSpec
from pulseloop.services.experiment_service import (
    hamiltonian_a,
    hamiltonian_b,
    run_fluctuated_composite,
    run_ha_hb_comparison,
    strong_noise_profile,
    two_level_profile,
    uncorrelated_profiles,
)
from pulseloop.services.fluctuation_service import (
    check_boundary_conditions,
    classify_symmetry,
    combined_profile,
    global_sine_profile,
    tabulated_profile,
    zero_profile,
)
from pulseloop.services.su2_service import SIGMA_X, SIGMA_Y, SIGMA_Z


def test_ideal_drive_matrices():
    t = np.array([0.0, 0.3, 1.0])
    np.testing.assert_allclose(hamiltonian_a().matrices(t), np.broadcast_to(np.pi / 4 * SIGMA_Y, (3, 2, 2)), atol=1e-15)
    b = np.pi / (2.0 * np.sqrt(2.0)) * (SIGMA_X + SIGMA_Z)
    np.testing.assert_allclose(hamiltonian_b().matrices(t), np.broadcast_to(b, (3, 2, 2)), atol=1e-15)


def test_fluctuated_drive_sampling():
    p = strong_noise_profile()
    t = np.array([0.01, 0.37])
    omega, axis, detuning = hamiltonian_b(p).sample_arrays(t)
    np.testing.assert_allclose(omega, np.pi / np.sqrt(2.0) + p.df(t))
    np.testing.assert_allclose(axis[:, 0], np.cos(p.g(t)))
    np.testing.assert_allclose(detuning, np.pi / np.sqrt(2.0) + p.dg(t))


def test_strong_noise_profile():
    p = strong_noise_profile()
    assert p.kind == ProfileKind.GLOBAL_SINE
    assert p.params["cycles"] == 1
    assert p.f(np.array([1.0 / 40.0]))[0] == pytest.approx(1.0)
    assert p.dg(np.array([0.0]))[0] == pytest.approx(20.0 * np.pi)
    assert check_boundary_conditions(p).ok


def test_two_level_family_is_slower_than_composite_family():
    slow = two_level_profile(1.0, 1.0, 10, 10)
    fast = global_sine_profile(1.0, 1.0, 10, 10)
    assert slow.params != fast.params
    t = np.array([1.0 / 160.0])
    assert fast.f(t)[0] == pytest.approx(1.0)
    assert slow.f(t)[0] == pytest.approx(np.sin(np.pi / 8.0))


def test_uncorrelated_profiles_split_f_and_g():
    pf, pg = uncorrelated_profiles(0.05, 0.05, 17, 23)
    t = np.linspace(0.0, 1.0, 33)
    np.testing.assert_array_equal(pf.g(t), 0.0)
    np.testing.assert_array_equal(pg.f(t), 0.0)
    combined = combined_profile(pf, pg)
    np.testing.assert_allclose(combined.f(t), pf.f(t))
    np.testing.assert_allclose(combined.g(t), pg.g(t))
    assert classify_symmetry(combined) == SymmetryClass.SHIFT_SYMMETRIC


def test_zero_profile_keeps_both_endpoints():
    report = run_ha_hb_comparison(zero_profile(), GridSpec(2048))
    assert report.status == ReportStatus.PASSED
    np.testing.assert_allclose(report.outputs["final_bloch"], X_AXIS.as_tuple(), atol=1e-6)


def test_broken_boundary_is_an_error_report():
    t = np.linspace(0.0, 1.0, 9)
    profile = tabulated_profile(np.column_stack([t, 0.1 * np.ones_like(t), np.zeros_like(t)]))
    report = run_fluctuated_composite(profile, GridSpec(256))
    assert report.status == ReportStatus.ERROR
    assert "f(0)" in report.message
