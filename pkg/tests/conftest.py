import numpy as np
import pytest

from sqztomo.states import StateSpec


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


STATE_ZOO = [
    StateSpec.vacuum(),
    StateSpec.fock(1),
    StateSpec.fock(4),
    StateSpec.coherent(1.0),
    StateSpec.coherent(2 * np.exp(1j)),
    StateSpec.cat(2.0, +1),
    StateSpec.cat(1.5j, -1),
    StateSpec.thermal(0.5),
    StateSpec.thermal(2.0),
]
