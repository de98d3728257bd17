import numpy as np
import pytest

from spectral.problems import make_diagonal_problem
from spectral.stepsize import GradientPair, StepInterval


@pytest.fixture
def unit_pair() -> GradientPair:
    """Pair with ss = 0.5, sy = 0.5, yy = 1, so bb1 = 1 and bb2 = 0.5."""
    return GradientPair.from_vectors(np.array([0.5, 0.5]), np.array([1.0, 0.0]))


@pytest.fixture
def unit_interval(unit_pair: GradientPair) -> StepInterval:
    return StepInterval.from_pair(unit_pair)


@pytest.fixture
def two_dim_problem():
    return make_diagonal_problem(np.array([1.0, 100.0]))
