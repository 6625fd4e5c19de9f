import numpy as np
import pytest

from weakschmidt.numerics import make_rng
from weakschmidt.states import PureState, uniform_ensemble

OMEGA = np.exp(2j * np.pi / 3)


def three_cycle_states():
    """Amplitude matrices F_3 / 3 with rows cyclically shifted by 0, 1, 2."""
    w = OMEGA
    rows = [np.array([1, 1, 1]), np.array([1, w, w ** 2]), np.array([1, w ** 2, w])]
    mats = [np.stack([rows[(k + j) % 3] for j in range(3)]) / 3.0 for k in range(3)]
    return [PureState.from_matrix(A) for A in mats]


@pytest.fixture
def rng():
    return make_rng(20240611)


@pytest.fixture
def omega():
    return OMEGA


@pytest.fixture
def cycle_states():
    return three_cycle_states()


@pytest.fixture
def cycle_ensemble():
    return uniform_ensemble(three_cycle_states())


@pytest.fixture
def bell_state():
    vec = np.zeros(4, dtype=np.complex128)
    vec[0] = vec[3] = 1.0 / np.sqrt(2.0)
    return PureState.from_vector(vec)
