"""Shared fixtures: a generic evaluation context and a seeded RNG."""

import numpy as np
import pytest

from ellu2.theta import ThetaContext


@pytest.fixture(scope="session")
def ctx():
    return ThetaContext(0.12, 0.67)


@pytest.fixture()
def rng():
    return np.random.default_rng(90125)
