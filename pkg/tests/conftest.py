import numpy as np
import pytest

from saranfk import EvalSettings, QContext


@pytest.fixture
def ctx05():
    return QContext(q=0.5)


@pytest.fixture
def settings():
    return EvalSettings.default()


@pytest.fixture
def rng():
    return np.random.default_rng(1234)
