"""Package-wide numerical defaults."""

import math
import os

DEFAULT_CUTOFF = 128
LAMBDA_MAX = 2.0
N_MAX_SPECIAL = 512

# truncation diagnostics
TAIL_WARN = 1e-8
TAIL_TOP_FRACTION = 0.1
LEAKAGE_HARD = 1e-4

# working-space enlargement used when an operator must be accurate on the
# full N x N block rather than only on its interior
ORACLE_PAD = 4

# quadrature defaults for the oscillatory inverse transforms
X_WINDOW = 12.0
X_NODES = 2048
MUNU_WINDOW = 6.0
MUNU_NODES = 512


def default_cutoff() -> int:
    """Fock cutoff, overridable through ``SQZTOMO_DEFAULT_CUTOFF``."""
    raw = os.environ.get("SQZTOMO_DEFAULT_CUTOFF")
    if raw is None:
        return DEFAULT_CUTOFF
    value = int(raw)
    if value < 2:
        raise ValueError(f"SQZTOMO_DEFAULT_CUTOFF must be >= 2, got {value}")
    return value


def boundary_margin(N: int) -> int:
    """Number of top Fock levels treated as corrupted by truncation."""
    return math.ceil(N / 10)
