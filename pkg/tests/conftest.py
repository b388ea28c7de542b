from functools import lru_cache

import numpy as np
import pytest

from spinstar import oracle, qinfo
from spinstar.params import ModelParams


@lru_cache(maxsize=None)
def dense(n, coupling=1.0, field=0.0):
    """Cached (H, eigendecomposition) for the dense star."""
    h = oracle.build_hamiltonian(ModelParams(n, coupling, field))
    return h, oracle.eig_hermitian(h)


def dense_ground(n, coupling=1.0, field=0.0):
    h, dec = dense(n, coupling, field)
    return oracle.ground_space(h, decomposition=dec)


def ground_mixture(n, coupling=1.0, field=0.0):
    """Equal mixture over the dense ground space."""
    return qinfo.equal_mixture(dense_ground(n, coupling, field))


def basis_state(index, n_sites):
    psi = np.zeros(1 << n_sites, dtype=complex)
    psi[index] = 1.0
    return psi


@pytest.fixture
def rng():
    return np.random.default_rng(20021)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for number in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[number])
