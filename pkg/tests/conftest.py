from __future__ import annotations

import pytest

from ringwaves.bifurcation import _twisted_context
from ringwaves.groups import dihedral_lattice, gamma_prime_lattice


@pytest.fixture(scope="session")
def lat_d3():
    return dihedral_lattice(3)


@pytest.fixture(scope="session", params=None)
def lat3():
    return gamma_prime_lattice(3)


@pytest.fixture(scope="session")
def ctx3(lat3):
    return _twisted_context(lat3)


@pytest.fixture(scope="session")
def lat7():
    return gamma_prime_lattice(7)


@pytest.fixture(scope="session")
def ctx7(lat7):
    return _twisted_context(lat7)
