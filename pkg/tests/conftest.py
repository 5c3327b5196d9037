import numpy as np
import pytest

from psystem_lab import new_model


@pytest.fixture(scope="session")
def model3():
    return new_model(3.0)


@pytest.fixture(scope="session")
def model2():
    return new_model(2.0)


@pytest.fixture(scope="session")
def model14():
    return new_model(1.4)


@pytest.fixture()
def rng():
    return np.random.default_rng(20240817)
