import math

import numpy as np
import pytest
from hypothesis import strategies as st

from cqed_memory import SystemParams, gaussian_profile

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def ref_params():
    """λ_L = λ_R = 5κ, γ = 0.5κ, ω_e = k_c, g_L = -g_R."""
    return SystemParams.symmetric(5.0, gamma=0.5)


@pytest.fixture
def narrow_gaussian():
    return gaussian_profile(0.0, 0.1)


def random_params(rng: np.random.Generator, symmetric: bool = False) -> SystemParams:
    """λ̄ ∈ [0.5, 10]κ, γ ∈ [0, 1]κ, random mixing angle and phases."""
    lam_bar = rng.uniform(0.5, 10.0)
    if symmetric:
        return SystemParams.symmetric(lam_bar / math.sqrt(2), gamma=rng.uniform(0.0, 1.0))
    mix = rng.uniform(0.15, 0.5 * math.pi - 0.15)
    return SystemParams(
        lambda_l=lam_bar * math.cos(mix),
        lambda_r=lam_bar * math.sin(mix),
        theta_l=rng.uniform(-math.pi, math.pi),
        theta_r=rng.uniform(-math.pi, math.pi),
        gamma=rng.uniform(0.0, 1.0),
        omega_e=rng.uniform(-0.3, 0.3),
    )


@st.composite
def qubits(draw):
    """Normalized complex amplitude pair (as a tuple)."""
    theta = draw(st.floats(0.0, math.pi / 2))
    phase_l = draw(st.floats(-math.pi, math.pi))
    phase_r = draw(st.floats(-math.pi, math.pi))
    return math.cos(theta) * complex(math.cos(phase_l), math.sin(phase_l)), math.sin(theta) * complex(
        math.cos(phase_r), math.sin(phase_r)
    )


@st.composite
def system_params(draw, gamma_zero: bool = False):
    lam_l = draw(st.floats(0.0, 10.0))
    lam_r = draw(st.floats(0.05, 10.0))
    return SystemParams(
        lambda_l=lam_l,
        lambda_r=lam_r,
        theta_l=draw(st.floats(-math.pi, math.pi)),
        theta_r=draw(st.floats(-math.pi, math.pi)),
        gamma=0.0 if gamma_zero else draw(st.floats(0.0, 2.0)),
        omega_e=draw(st.floats(-2.0, 2.0)),
        k_c=draw(st.floats(-1.0, 1.0)),
    )


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
