"""Unit tests for fluctuation profiles, their checks and the fluctuated drive."""

import numpy as np
import pytest

from pulseloop.core.errors import BoundaryConditionError, ConfigError, DomainError
from pulseloop.models.bloch import BlochVector
from pulseloop.models.enums import ProfileKind, SymmetryClass
from pulseloop.schemas.config import ProfileConfig
from pulseloop.services.acceptance_service import random_tabulated_profiles
from pulseloop.services.fluctuation_service import (
    FluctuatedHamiltonian,
    check_boundary_conditions,
    check_breakpoint_continuity,
    classify_symmetry,
    combined_profile,
    fluctuated_curve_at,
    fluctuated_hamiltonian_at,
    global_sine_profile,
    load_profile,
    orthogonality_residual,
    profile_from_json,
    piecewise_sine_profile,
    reference_curve,
    tabulated_profile,
    zero_profile,
)
from pulseloop.services.propagation_service import propagate
from pulseloop.services.pulse_service import parse_sequence
from pulseloop.services.su2_service import bloch_to_state


@pytest.mark.parametrize("xi", [0, -1, 2.5, True, "3"])
def test_sine_builders_require_positive_integers(xi):
    with pytest.raises(DomainError):
        piecewise_sine_profile(0.1, 0.1, xi, 5)
    with pytest.raises(DomainError):
        global_sine_profile(0.1, 0.1, 5, xi)


def test_integral_floats_accepted():
    assert piecewise_sine_profile(0.1, 0.1, 5.0, 5).xi == 5


def test_piecewise_sine_vanishes_at_every_breakpoint(piecewise_profile):
    bp = np.array([0.0, 0.25, 0.75, 1.0])
    np.testing.assert_allclose(piecewise_profile.f(bp), 0.0, atol=1e-12)
    np.testing.assert_allclose(piecewise_profile.g(bp), 0.0, atol=1e-12)


def test_piecewise_derivative_matches_finite_difference(piecewise_profile):
    t = np.array([0.1, 0.4, 0.9])
    h = 1e-6
    fd = (piecewise_profile.f(t + h) - piecewise_profile.f(t - h)) / (2 * h)
    np.testing.assert_allclose(piecewise_profile.df(t), fd, rtol=1e-6)


def test_global_sine_values(global_profile):
    t = np.array([1 / 80])
    assert global_profile.f(t)[0] == pytest.approx(0.1 * np.sin(np.pi / 2))
    assert global_profile.dg(np.array([0.0]))[0] == pytest.approx(0.1 * 40 * np.pi)


def test_boundary_conditions(piecewise_profile):
    assert check_boundary_conditions(piecewise_profile).ok
    assert check_boundary_conditions(zero_profile()).ok
    shifted = tabulated_profile([[0, 0.2, 0], [0.3, 0.1, 0], [0.6, 0.0, 0], [1.0, 0.0, 0.0]])
    check = check_boundary_conditions(shifted)
    assert not check.ok
    assert check.residuals["f(0)"] == pytest.approx(0.2)


def test_breakpoint_continuity(composite, piecewise_profile):
    assert check_breakpoint_continuity(piecewise_profile, composite).ok
    bump = tabulated_profile([[0, 0, 0], [0.25, 0.3, 0], [0.5, 0.3, 0], [0.75, 0.0, 0], [1, 0, 0]])
    assert not check_breakpoint_continuity(bump, composite).ok


def test_classify_symmetry(piecewise_profile, global_profile):
    assert classify_symmetry(zero_profile()) == SymmetryClass.ZERO_G
    assert classify_symmetry(piecewise_sine_profile(0.3, 0.0, 2, 7)) == SymmetryClass.ZERO_G
    assert classify_symmetry(piecewise_profile) == SymmetryClass.REFLECT_SYMMETRIC
    assert classify_symmetry(global_profile) == SymmetryClass.SHIFT_SYMMETRIC


def test_generated_tabulated_profiles_are_unclassified():
    profile = random_tabulated_profiles(1)[0]
    assert classify_symmetry(profile) == SymmetryClass.UNCLASSIFIED


def test_combined_profile_takes_f_and_g_separately():
    p = combined_profile(global_sine_profile(0.2, 0.0, 3, 1), global_sine_profile(0.0, 0.4, 1, 7))
    t = np.linspace(0, 1, 11)
    np.testing.assert_allclose(p.f(t), 0.2 * np.sin(24 * np.pi * t))
    np.testing.assert_allclose(p.g(t), 0.4 * np.sin(56 * np.pi * t))


def test_fluctuated_drive_sample(composite, piecewise_profile):
    t = 0.1
    h = fluctuated_hamiltonian_at(composite, piecewise_profile, t)
    assert h.omega == pytest.approx(2 * np.pi + piecewise_profile.df(np.array([t]))[0])
    assert h.detuning_z == pytest.approx(piecewise_profile.dg(np.array([t]))[0])
    phi = piecewise_profile.g(np.array([t]))[0]
    np.testing.assert_allclose(h.axis.as_array(), [np.cos(phi), np.sin(phi), 0.0], atol=1e-12)


def test_zero_profile_reduces_to_ideal_curve(composite):
    np.testing.assert_allclose(fluctuated_curve_at(composite, zero_profile(), 0.0).as_array(), [0, 1, 0], atol=1e-12)
    np.testing.assert_allclose(fluctuated_curve_at(composite, zero_profile(), 0.25).as_array(), [0, 0, 1], atol=1e-12)
    np.testing.assert_allclose(fluctuated_curve_at(composite, zero_profile(), 0.5).as_array(), [1, 0, 0], atol=1e-12)
    np.testing.assert_allclose(
        fluctuated_curve_at(composite, zero_profile(), 0.0, sign=-1).as_array(), [0, -1, 0], atol=1e-12
    )


def test_reference_curve_needs_composite_pulse(piecewise_profile):
    with pytest.raises(DomainError):
        reference_curve(parse_sequence("360x"), piecewise_profile, np.array([0.5]))


def test_reference_curve_rejects_times_outside_unit_interval(composite, piecewise_profile):
    with pytest.raises(DomainError):
        reference_curve(composite, piecewise_profile, np.array([1.5]))


@pytest.mark.parametrize(
    "profile",
    [
        zero_profile(),
        piecewise_sine_profile(0.1, 0.1, 5, 5),
        global_sine_profile(1.0, 1.0, 10, 10),
    ],
)
def test_drive_orthogonal_to_curve(composite, profile):
    assert orthogonality_residual(composite, profile) < 1e-10


def test_fluctuated_breakpoints_merge_profile_and_sequence(composite, global_profile):
    assert FluctuatedHamiltonian(composite, global_profile).breakpoints == (0.0, 0.25, 0.75, 1.0)


def test_load_profile_from_config(composite):
    profile = load_profile(ProfileConfig(kind="piecewise_sine", f0=0.1, g0=0.1, xi=5, eta=5), composite.breakpoints)
    assert profile.kind == ProfileKind.PIECEWISE_SINE
    assert profile.breakpoints == composite.breakpoints


def test_load_profile_rejects_boundary_violation():
    config = ProfileConfig(kind="tabulated", samples=[[0, 0, 0.1], [0.3, 0, 0], [0.6, 0, 0], [1, 0, 0]])
    with pytest.raises(BoundaryConditionError):
        load_profile(config)


def test_load_profile_global_sine_cycles():
    profile = load_profile(ProfileConfig(kind="global_sine", f0=1.0, g0=1.0, xi=10, eta=10, cycles=1))
    assert profile.params["cycles"] == 1
    assert profile.f(np.array([1.0 / 40.0]))[0] == pytest.approx(1.0)


def test_load_profile_rejects_combined_kind():
    with pytest.raises(ConfigError):
        load_profile(ProfileConfig(kind="combined"))


def test_profile_from_json_file(tmp_path):
    path = tmp_path / "global.json"
    path.write_text('{"kind": "global_sine", "f0": 0.1, "g0": 0.2, "xi": 3, "eta": 4}')
    profile = profile_from_json(path)
    assert profile.kind == ProfileKind.GLOBAL_SINE
    assert profile.params["g0"] == 0.2
    assert classify_symmetry(profile) == SymmetryClass.SHIFT_SYMMETRIC


def test_profile_from_json_unreadable(tmp_path):
    with pytest.raises(ConfigError):
        profile_from_json(tmp_path / "missing.json")
    broken = tmp_path / "broken.json"
    broken.write_text("{kind:")
    with pytest.raises(ConfigError):
        profile_from_json(broken)


def test_tabulated_validation():
    with pytest.raises(DomainError):
        tabulated_profile([[0, 0, 0], [1, 0, 0]])
    with pytest.raises(DomainError):
        tabulated_profile([[0, 0, 0], [0.5, 0, 0], [0.4, 0, 0], [1, 0, 0]])
    with pytest.raises(DomainError):
        tabulated_profile([[0.1, 0, 0], [0.5, 0, 0], [0.7, 0, 0], [1, 0, 0]])


@pytest.mark.parametrize("profile_fixture", ["piecewise_profile", "global_profile"])
@pytest.mark.parametrize("sign", [1, -1])
def test_propagated_path_follows_fluctuated_curve(request, composite, fine_grid, profile_fixture, sign):
    profile = request.getfixturevalue(profile_fixture)
    h = FluctuatedHamiltonian(composite, profile)
    traj = propagate(h, bloch_to_state(BlochVector(0.0, float(sign), 0.0)), fine_grid)
    np.testing.assert_allclose(traj.bloch, reference_curve(composite, profile, traj.times, sign), atol=1e-6)
    for i in range(0, len(traj), 1024):
        expected = fluctuated_curve_at(composite, profile, float(traj.times[i]), sign)
        np.testing.assert_allclose(traj.bloch[i], expected.as_array(), atol=1e-6)
