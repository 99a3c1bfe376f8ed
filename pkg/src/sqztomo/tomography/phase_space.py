"""Optical and symplectic tomograms and the Wigner function.

Wigner normalization throughout: ``integral dq dp / (2 pi) W = 1``, so the
vacuum has ``W(0, 0) = 2``.  With that convention the symplectic tomogram is
the Radon-type projection

    W_sym(X, mu, nu) = integral dq dp / (2 pi) W(q, p) delta(X - mu q - nu p).
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from ..diagnostics import QuadratureWarning
from ..fock_core import DensityMatrix
from ..special import oscillator_table
from ..states import StateSpec


@dataclass(frozen=True)
class WignerGrid:
    """``values[i, j] = W(q[i], p[j])`` on uniform axes."""

    q: np.ndarray
    p: np.ndarray
    values: np.ndarray

    def normalization(self) -> float:
        """Trapezoid estimate of ``integral dq dp / 2pi W``."""
        return float(np.trapezoid(np.trapezoid(self.values, self.p, axis=1), self.q)) / (2 * np.pi)

    def max_abs_difference(self, other: "WignerGrid") -> float:
        return float(np.max(np.abs(self.values - other.values)))


def _rotated_quadrature_amplitudes(N: int, y, phi):
    """``<n|X_phi = y>`` = ``e^{i phi n} psi_n(y)`` with shape ``(N,) + broadcast``."""
    y, phi = np.broadcast_arrays(np.asarray(y, dtype=np.float64), np.asarray(phi, dtype=np.float64))
    psi = oscillator_table(N - 1, y)
    n = np.arange(N).reshape((N,) + (1,) * y.ndim)
    return psi * np.exp(1j * n * phi[None, ...])


def _quadratic_form(rho: np.ndarray, v: np.ndarray) -> np.ndarray:
    flat = v.reshape(v.shape[0], -1)
    out = np.einsum("ip,ip->p", flat.conj(), rho @ flat).real
    return out.reshape(v.shape[1:])


def optical_tomogram(rho: DensityMatrix, X, theta):
    """Density of the rotated quadrature ``cos(theta) q + sin(theta) p`` at ``X``."""
    v = _rotated_quadrature_amplitudes(rho.dim, X, theta)
    out = _quadratic_form(rho.matrix, v)
    return out[()] if out.ndim == 0 else out


def symplectic_tomogram(rho: DensityMatrix, X, mu, nu):
    """Density of ``mu q + nu p`` at ``X``.

    Uses ``W_sym(X, mu, nu) = W_opt(X/s, phi) / s`` with ``s = |(mu, nu)|`` and
    ``phi = atan2(nu, mu)``.
    """
    X, mu, nu = np.broadcast_arrays(*(np.asarray(a, dtype=np.float64) for a in (X, mu, nu)))
    s = np.hypot(mu, nu)
    if np.any(s == 0):
        raise ValueError("symplectic tomogram undefined at (mu, nu) = (0, 0)")
    out = _quadratic_form(rho.matrix, _rotated_quadrature_amplitudes(rho.dim, X / s,
                                                                     np.arctan2(nu, mu))) / s
    return out[()] if out.ndim == 0 else out


def wigner_points(rho: DensityMatrix, q, p):
    """Wigner function of ``rho`` at arbitrary points (broadcast ``q`` against ``p``).

    Builds the Wigner functions of ``|m><n|`` by a Laguerre-type recursion in
    the complex variable ``A = (q + i p)/sqrt(2)``, never forming factorials.
    """
    q, p = np.broadcast_arrays(np.asarray(q, dtype=np.float64), np.asarray(p, dtype=np.float64))
    r = rho.matrix
    N = rho.dim
    A = (q + 1j * p) / math.sqrt(2.0)
    wl = [None] * N
    wl[0] = np.exp(-2.0 * np.abs(A) ** 2) / np.pi + 0j
    W = r[0, 0].real * wl[0].real
    for n in range(1, N):
        wl[n] = 2.0 * A * wl[n - 1] / math.sqrt(n)
        W = W + 2.0 * np.real(r[0, n] * wl[n])
    for m in range(1, N):
        temp = wl[m]
        wl[m] = (2.0 * np.conj(A) * temp - math.sqrt(m) * wl[m - 1]) / math.sqrt(m)
        W = W + np.real(r[m, m] * wl[m])
        for n in range(m + 1, N):
            temp2 = (2.0 * A * wl[n - 1] - math.sqrt(m) * temp) / math.sqrt(n)
            temp = wl[n]
            wl[n] = temp2
            W = W + 2.0 * np.real(r[m, n] * wl[n])
    out = 2.0 * np.pi * W
    return out[()] if out.ndim == 0 else out


def wigner_from_state(rho: DensityMatrix, q, p, *, coverage_tol: float = 1e-4) -> WignerGrid:
    """Wigner function of ``rho`` on the tensor grid ``q`` x ``p``."""
    q = np.asarray(q, dtype=np.float64)
    p = np.asarray(p, dtype=np.float64)
    grid = WignerGrid(q, p, wigner_points(rho, q[:, None], p[None, :]))
    deficit = abs(grid.normalization() - (1.0 - rho.tail_mass))
    if deficit > coverage_tol:
        warnings.warn(QuadratureWarning("wigner_from_state coverage", deficit, coverage_tol),
                      stacklevel=2)
    return grid


def symplectic_from_wigner(wigner, X: float, mu: float, nu: float, *,
                           window: float = 10.0, nodes: int = 4001) -> float:
    """Project a Wigner function onto the line ``mu q + nu p = X``.

    ``wigner`` is a callable ``W(q, p)``.  The delta function is resolved
    along whichever of ``q``/``p`` gives the better-conditioned line.
    """
    t = np.linspace(-window, window, nodes)
    if abs(nu) >= abs(mu):
        vals = wigner(t, (X - mu * t) / nu) / abs(nu)
    else:
        vals = wigner((X - nu * t) / mu, t) / abs(mu)
    return float(np.trapezoid(vals, t)) / (2 * np.pi)


# ---------------------------------------------------------------- samplers

class GaussianSampler:
    """Symplectic tomogram of a Gaussian state with given first and second moments."""

    def __init__(self, mean_q=0.0, mean_p=0.0, var_q=0.5, var_p=0.5, cov_qp=0.0):
        self.mean_q, self.mean_p = float(mean_q), float(mean_p)
        self.var_q, self.var_p, self.cov_qp = float(var_q), float(var_p), float(cov_qp)

    @classmethod
    def coherent(cls, alpha: complex) -> "GaussianSampler":
        alpha = complex(alpha)
        return cls(math.sqrt(2.0) * alpha.real, math.sqrt(2.0) * alpha.imag)

    def __call__(self, X, mu, nu):
        mean = mu * self.mean_q + nu * self.mean_p
        var = mu * mu * self.var_q + nu * nu * self.var_p + 2.0 * mu * nu * self.cov_qp
        return np.exp(-((X - mean) ** 2) / (2.0 * var)) / np.sqrt(2.0 * np.pi * var)


class DensitySampler:
    """Symplectic tomogram of an arbitrary density matrix (Fock route)."""

    def __init__(self, rho: DensityMatrix):
        self.rho = rho

    def __call__(self, X, mu, nu):
        return symplectic_tomogram(self.rho, X, mu, nu)


class MixtureSampler:
    def __init__(self, samplers, weights):
        self.samplers = list(samplers)
        self.weights = [float(w) for w in weights]

    def __call__(self, X, mu, nu):
        return sum(w * s(X, mu, nu) for w, s in zip(self.weights, self.samplers))


def gaussian_sampler(spec: StateSpec) -> GaussianSampler:
    """Exact sampler for the Gaussian members of the state family.

    Fock and cat states are not Gaussian; use :class:`DensitySampler` for them.
    """
    if spec.kind == "vacuum":
        return GaussianSampler()
    if spec.kind == "coherent":
        return GaussianSampler.coherent(spec.alpha)
    if spec.kind == "thermal":
        var = 0.5 / math.tanh(0.5 / spec.T)
        return GaussianSampler(var_q=var, var_p=var)
    raise ValueError(f"{spec.kind} states are not Gaussian")
