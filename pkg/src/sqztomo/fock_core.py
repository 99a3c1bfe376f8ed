"""Truncated Fock-space operators.

Operators are plain ``(N, N)`` complex numpy arrays with ``A[i, j] = <i|A|j>``.
Units are hbar = m = omega = 1 with ``q = (a + a^dag)/sqrt(2)`` and
``p = (a - a^dag)/(i sqrt(2))``.

Truncating at ``N`` corrupts the top of the basis: ``[q, p] = i`` fails on the
last level and exponentials of unbounded generators are only trustworthy on the
interior block ``[0, N - k)`` with ``k = ceil(N/10)``.  Constructors that
exponentiate accept ``working_dim`` to build in a larger space and crop, which
makes the whole returned block accurate as long as the relevant states fit in
the working space.

Squeeze convention: ``S(lam) = exp[i lam/2 (qp + pq)] = exp[lam/2 (a^2 - a^dag^2)]``,
so Stoler's ``exp[(z a^2 - z* a^dag^2)/2]`` with real ``z`` is exactly
``S(lam=z)`` (no sign flip, no phase).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import expm

from .config import LAMBDA_MAX, TAIL_TOP_FRACTION, TAIL_WARN, boundary_margin
from .diagnostics import CutoffError, warn_tail

# lam = STOLER_SIGN * z for real z; fixed by comparison against squeeze_matrix
STOLER_SIGN = 1.0


def _check_cutoff(N: int) -> int:
    if int(N) != N or N < 2:
        raise ValueError(f"Fock cutoff must be an integer >= 2, got {N!r}")
    return int(N)


def annihilation_matrix(N: int) -> np.ndarray:
    """Ladder operator ``a`` with ``<n|a|n+1> = sqrt(n+1)``."""
    N = _check_cutoff(N)
    return np.diag(np.sqrt(np.arange(1, N, dtype=np.float64)), 1).astype(np.complex128)


def number_matrix(N: int) -> np.ndarray:
    N = _check_cutoff(N)
    return np.diag(np.arange(N, dtype=np.float64)).astype(np.complex128)


def quadrature_matrices(N: int) -> tuple[np.ndarray, np.ndarray]:
    """Position and momentum quadratures ``(q, p)``."""
    a = annihilation_matrix(N)
    ad = a.conj().T
    q = (a + ad) / math.sqrt(2.0)
    p = (a - ad) / (1j * math.sqrt(2.0))
    return q, p


def matrix_exponential(A) -> np.ndarray:
    """``exp(A)`` by scaling and squaring with Pade approximants.

    Real input stays real, which halves the cost for the squeeze generator.
    """
    A = np.asarray(A)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {A.shape}")
    if not np.all(np.isfinite(A)):
        raise ValueError("matrix has non-finite entries")
    if np.iscomplexobj(A) and not np.any(A.imag):
        return expm(A.real).astype(np.complex128)
    return expm(A).astype(np.complex128)


def unitarity_defect(U, margin: int | None = None) -> float:
    """``max |U^dag U - I|`` restricted to the interior block ``[0, N - margin)``."""
    U = np.asarray(U)
    N = U.shape[0]
    k = boundary_margin(N) if margin is None else margin
    inner = (U.conj().T @ U)[: N - k, : N - k]
    return float(np.max(np.abs(inner - np.eye(N - k))))


def _top_block_norm(U: np.ndarray, column: int = 0) -> float:
    N = U.shape[0]
    top = max(1, int(math.ceil(TAIL_TOP_FRACTION * N)))
    return float(np.linalg.norm(U[N - top :, column]))


def _exp_generator(build, N: int, working_dim: int | None) -> np.ndarray:
    M = N if working_dim is None else max(N, int(working_dim))
    U = matrix_exponential(build(M))
    return U if M == N else U[:N, :N].copy()


def _squeeze_generator(lam: float, M: int) -> np.ndarray:
    a = np.diag(np.sqrt(np.arange(1, M, dtype=np.float64)), 1)
    # i lam/2 (qp + pq) = lam/2 (a^2 - a^dag^2); the a a^dag terms cancel
    # exactly, so building from ladders matches the quadrature form even truncated
    a2 = a @ a
    return 0.5 * lam * (a2 - a2.T)


def squeeze_matrix(lam: float, N: int, *, working_dim: int | None = None,
                   lambda_max: float = LAMBDA_MAX) -> np.ndarray:
    """Squeezing operator ``S(lam) = exp[i lam/2 (qp + pq)]``."""
    N = _check_cutoff(N)
    if abs(lam) > lambda_max:
        raise ValueError(f"|lambda|={abs(lam)} exceeds lambda_max={lambda_max}")
    U = _exp_generator(lambda M: _squeeze_generator(lam, M), N, working_dim)
    warn_tail("squeeze_matrix", _top_block_norm(U), TAIL_WARN)
    return U


def rotation_matrix(theta: float, N: int) -> np.ndarray:
    """Rotation ``R(theta) = exp[i theta/2 (q^2 + p^2)] = exp[i theta (n + 1/2)]``."""
    N = _check_cutoff(N)
    return np.diag(np.exp(1j * theta * (np.arange(N) + 0.5)))


def displacement_matrix(eta: float, xi: float, N: int, *,
                        working_dim: int | None = None) -> np.ndarray:
    """``exp[i (eta q - xi p)]``, i.e. ``D(beta)`` with ``beta = (xi + i eta)/sqrt(2)``."""
    N = _check_cutoff(N)
    beta = (xi + 1j * eta) / math.sqrt(2.0)

    def build(M):
        a = annihilation_matrix(M)
        return beta * a.conj().T - np.conj(beta) * a

    U = _exp_generator(build, N, working_dim)
    warn_tail("displacement_matrix", _top_block_norm(U), TAIL_WARN)
    return U


def stoler_squeeze(z: complex, N: int, *, working_dim: int | None = None,
                   lambda_max: float = LAMBDA_MAX) -> np.ndarray:
    """Stoler's squeeze operator ``exp[(z a^2 - z* a^dag^2)/2]``."""
    N = _check_cutoff(N)
    if abs(z) > lambda_max:
        raise ValueError(f"|z|={abs(z)} exceeds lambda_max={lambda_max}")

    def build(M):
        a = annihilation_matrix(M)
        a2 = a @ a
        return 0.5 * (z * a2 - np.conj(z) * a2.conj().T)

    U = _exp_generator(build, N, working_dim)
    warn_tail("stoler_squeeze", _top_block_norm(U), TAIL_WARN)
    return U


@dataclass(frozen=True)
class PlebanskiParams:
    """Displacement ``(eta, xi)`` and scale ``a > 0`` of the Plebanski family."""

    eta: float
    xi: float
    a: float

    def __post_init__(self):
        if not self.a > 0:
            raise ValueError(f"scale parameter a must be > 0, got {self.a}")


def plebanski_transform(params: PlebanskiParams, psi, *,
                        working_dim: int | None = None) -> np.ndarray:
    """Apply ``exp[i(eta q - xi p)] exp[(i/2) log a (qp + pq)]`` to ``psi``."""
    psi = np.asarray(psi, dtype=np.complex128)
    N = psi.shape[0]
    norm_in = np.linalg.norm(psi)
    if abs(norm_in - 1.0) > 1e-6:
        raise ValueError(f"input state is not normalized (norm={norm_in})")
    out = squeeze_matrix(math.log(params.a), N, working_dim=working_dim) @ psi
    out = displacement_matrix(params.eta, params.xi, N, working_dim=working_dim) @ out
    warn_tail("plebanski_transform", abs(1.0 - np.linalg.norm(out) ** 2), TAIL_WARN)
    return out


class DensityMatrix:
    """Validated, read-only density matrix on a truncated Fock space.

    The trace may fall short of one by the probability mass that lives above
    the cutoff; that deficit is exposed as ``tail_mass``.
    """

    HERMITIAN_TOL = 1e-12
    TRACE_TOL = 1e-6
    EIG_TOL = 1e-9

    def __init__(self, matrix, *, validate: bool = True):
        rho = np.array(matrix, dtype=np.complex128)
        if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
            raise ValueError(f"density matrix must be square, got shape {rho.shape}")
        _check_cutoff(rho.shape[0])
        if validate:
            herm = float(np.max(np.abs(rho - rho.conj().T)))
            if herm > self.HERMITIAN_TOL:
                raise ValueError(f"density matrix is not Hermitian (defect {herm:.2e})")
            tr = float(np.trace(rho).real)
            if tr > 1.0 + 1e-12:
                raise ValueError(f"trace {tr!r} exceeds 1")
            if tr < 1.0 - self.TRACE_TOL:
                raise CutoffError(
                    f"trace deficit {1.0 - tr:.3e} exceeds {self.TRACE_TOL:.0e}; raise the cutoff",
                    tail_mass=1.0 - tr,
                )
            w_min = float(np.linalg.eigvalsh(rho).min())
            if w_min < -self.EIG_TOL:
                raise ValueError(f"density matrix has negative eigenvalue {w_min:.3e}")
        rho.setflags(write=False)
        self._rho = rho

    @property
    def matrix(self) -> np.ndarray:
        return self._rho

    @property
    def dim(self) -> int:
        return self._rho.shape[0]

    @property
    def tail_mass(self) -> float:
        return max(0.0, 1.0 - float(np.trace(self._rho).real))

    def photon_distribution(self) -> np.ndarray:
        return np.clip(np.diag(self._rho).real, 0.0, None)

    def __repr__(self) -> str:
        return f"DensityMatrix(dim={self.dim}, tail_mass={self.tail_mass:.2e})"

    @classmethod
    def from_vector(cls, psi) -> "DensityMatrix":
        psi = np.asarray(psi, dtype=np.complex128)
        return cls(np.outer(psi, psi.conj()))


def matrix_to_json(A) -> list:
    """Row-major ``[[ [re, im], ... ], ...]`` encoding used by ``dump``."""
    A = np.asarray(A, dtype=np.complex128)
    return [[[float(v.real), float(v.imag)] for v in row] for row in A]


def matrix_from_json(data) -> np.ndarray:
    arr = np.asarray(data, dtype=np.float64)
    return arr[..., 0] + 1j * arr[..., 1]


def require_fit(N: int, needed: int, what: str) -> None:
    if N < needed:
        raise CutoffError(f"{what} needs cutoff >= {needed}, got {N}")
