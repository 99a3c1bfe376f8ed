"""Squeeze tomography of photon states in a truncated Fock space.

Units are hbar = m = omega = 1 with q = (a + a^dag)/sqrt(2) and
p = (a - a^dag)/(i sqrt(2)).
"""

from .fock_core import DensityMatrix, PlebanskiParams
from .states import StateSpec, make_density

__version__ = "0.1.0"

__all__ = ["DensityMatrix", "PlebanskiParams", "StateSpec", "make_density", "__version__"]
