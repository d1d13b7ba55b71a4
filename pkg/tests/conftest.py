import numpy as np
import pytest

from hatsim import load_params, preset_profiles


@pytest.fixture(scope="session")
def params():
    return load_params("kb-probabilistic")


@pytest.fixture(scope="session")
def params_regression():
    return load_params("kb-regression")


@pytest.fixture(scope="session")
def presets():
    return preset_profiles()


@pytest.fixture()
def rng():
    return np.random.default_rng(1234)
