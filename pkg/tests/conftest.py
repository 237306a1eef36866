import math

import numpy as np
import pytest

from hs_holevo.states import density_from_matrix


# -- independent oracles: plain numpy, no package kernels ---------------------


def np_random_density(rng, dim, rank=None):
    rank = dim if rank is None else rank
    g = rng.normal(size=(dim, rank)) + 1j * rng.normal(size=(dim, rank))
    w = g @ g.conj().T
    return w / np.trace(w).real


def np_random_hermitian(rng, dim):
    g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return g + g.conj().T


def np_hs(a, b):
    d = a - b
    return 0.5 * np.trace(d.conj().T @ d).real


def np_example(theta):
    """Explicit 4x4 matrices of the two-signal qubit example."""
    c, s = math.cos(theta), math.sin(theta)
    r0 = np.array([[1, 0], [0, 0]], dtype=complex)
    r1 = np.array([[c * c, c * s], [c * s, s * s]], dtype=complex)
    pq = np.zeros((4, 4), dtype=complex)
    pq[:2, :2], pq[2:, 2:] = r0 / 2, r1 / 2
    rq = (r0 + r1) / 2
    rp = np.eye(2) / 2
    return r0, r1, pq, rp, rq


@pytest.fixture
def rng():
    return np.random.default_rng(20260101)


@pytest.fixture
def plus():
    return density_from_matrix([[0.5, 0.5], [0.5, 0.5]])


# -- acceptance summary -------------------------------------------------------

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
