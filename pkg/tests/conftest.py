import math

import numpy as np
import pytest
from hypothesis import settings

from discordgame import qmath

settings.register_profile("default", max_examples=100, deadline=None)
settings.load_profile("default")

ACCEPTANCE_LINES = []


def random_density(rng, dim=4, rank=None):
    rank = rank or dim
    g = rng.normal(size=(dim, rank)) + 1j * rng.normal(size=(dim, rank))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def random_hermitian(rng, dim=2):
    g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return 0.5 * (g + g.conj().T)


def rotation(axis_theta, axis_phi, angle):
    n = (math.cos(axis_phi) * math.sin(axis_theta), math.sin(axis_phi) * math.sin(axis_theta), math.cos(axis_theta))
    n_sigma = sum(c * s for c, s in zip(n, qmath.PAULI))
    return math.cos(angle / 2) * qmath.IDENTITY2 - 1j * math.sin(angle / 2) * n_sigma


@pytest.fixture
def rng():
    return np.random.default_rng(20261017)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
