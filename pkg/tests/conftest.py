"""Shared fixtures: Cartan data and parameter families used across the suite."""

import pytest

from schurq import build_cartan
from schurq.presentation import FSpec


@pytest.fixture(scope="session")
def a1():
    return build_cartan("A", 1)


@pytest.fixture(scope="session")
def a2():
    return build_cartan("A", 2)


@pytest.fixture(scope="session")
def b2():
    return build_cartan("B", 2)


@pytest.fixture(scope="session")
def f_classical():
    return FSpec.classical()


@pytest.fixture(scope="session")
def f_qinteger():
    return FSpec.qinteger()
