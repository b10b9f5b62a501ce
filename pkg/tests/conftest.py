"""Shared fixtures: precision contexts and cached expensive solves."""

import pytest

from emden_dq import PrecisionContext
from emden_dq.fixtures import cached_curve, cached_solution, cached_weights  # noqa: F401


@pytest.fixture(scope="session")
def ctx50():
    return PrecisionContext(50)


@pytest.fixture(scope="session")
def ctx60():
    return PrecisionContext(60)


@pytest.fixture(scope="session")
def ctx30():
    return PrecisionContext(30)
