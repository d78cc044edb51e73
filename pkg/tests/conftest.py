"""Shared pytest fixtures: sequences, profiles and grids."""

import numpy as np
import pytest

from pulseloop.models.bloch import Y_AXIS
from pulseloop.models.trajectory import GridSpec
from pulseloop.services.fluctuation_service import (
    FluctuatedHamiltonian,
    global_sine_profile,
    piecewise_sine_profile,
)
from pulseloop.services.propagation_service import propagate
from pulseloop.services.pulse_service import COMPOSITE_90X180Y90X, ideal_hamiltonian, parse_sequence
from pulseloop.services.su2_service import bloch_to_state

HALF_PI = 0.5 * np.pi


@pytest.fixture
def composite():
    return parse_sequence(COMPOSITE_90X180Y90X)


@pytest.fixture
def coarse_grid() -> GridSpec:
    """Enough for the ideal pulse at 1e-8; fluctuated phases need fine_grid"""
    return GridSpec(2048)


@pytest.fixture
def fine_grid() -> GridSpec:
    return GridSpec(8192)


@pytest.fixture
def piecewise_profile():
    return piecewise_sine_profile(0.1, 0.1, 5, 5)


@pytest.fixture
def global_profile():
    return global_sine_profile(0.1, 0.1, 5, 5)


@pytest.fixture
def plus_state():
    return bloch_to_state(Y_AXIS)


@pytest.fixture
def ideal_trajectory(composite, coarse_grid, plus_state):
    return propagate(ideal_hamiltonian(composite), plus_state, coarse_grid)


@pytest.fixture
def piecewise_hamiltonian(composite, piecewise_profile):
    return FluctuatedHamiltonian(composite, piecewise_profile)
