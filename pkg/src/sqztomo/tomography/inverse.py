"""Reconstruction of the Wigner function and density matrix from a symplectic tomogram.

Both inverses share the first stage: the ``X`` integral

    chi(mu, nu) = integral dX e^{iX} W_sym(X, mu, nu)

which is the characteristic function ``<exp(i(mu q + nu p))>``.  Because the
tomogram spreads linearly with ``s = |(mu, nu)|``, the ``X`` window is applied
to the normalized variable ``X/s`` (homogeneity makes this exact), so a single
window serves the whole ``(mu, nu)`` square.  Everything after that is a
tensor trapezoid rule over ``(mu, nu)``.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .. import config
from ..diagnostics import QuadratureWarning
from ..special import laguerre
from .phase_space import WignerGrid

RESIDUAL_TARGET = 1e-3


@dataclass(frozen=True)
class QuadratureSpec:
    x_window: float = config.X_WINDOW
    x_nodes: int = config.X_NODES
    munu_window: float = config.MUNU_WINDOW
    munu_nodes: int = config.MUNU_NODES

    def __post_init__(self):
        if self.x_nodes < 2 or self.munu_nodes < 2:
            raise ValueError("quadrature node counts must be >= 2")
        if self.x_window <= 0 or self.munu_window <= 0:
            raise ValueError("quadrature windows must be positive")

    def scaled(self, factor: float) -> "QuadratureSpec":
        """Same windows with node counts multiplied by ``factor``."""
        return QuadratureSpec(self.x_window, max(2, int(round(self.x_nodes * factor))),
                              self.munu_window, max(2, int(round(self.munu_nodes * factor))))

    def extended(self, factor: float) -> "QuadratureSpec":
        """Windows and node counts both multiplied by ``factor`` (step sizes kept)."""
        return QuadratureSpec(self.x_window * factor, max(2, int(round(self.x_nodes * factor))),
                              self.munu_window * factor,
                              max(2, int(round(self.munu_nodes * factor))))


def _trapezoid_rule(lo: float, hi: float, nodes: int) -> tuple[np.ndarray, np.ndarray]:
    x = np.linspace(lo, hi, nodes)
    w = np.full(nodes, (hi - lo) / (nodes - 1))
    w[0] *= 0.5
    w[-1] *= 0.5
    return x, w


@dataclass
class CharacteristicGrid:
    mu: np.ndarray
    nu: np.ndarray
    weights_mu: np.ndarray
    weights_nu: np.ndarray
    chi: np.ndarray
    residual: float


def _split(n: int) -> tuple[int, int]:
    """Factor ``n = n1 * n2`` with ``n2`` the largest divisor not above sqrt(n)."""
    n2 = max(d for d in range(1, math.isqrt(n) + 1) if n % d == 0)
    return n // n2, n2


def characteristic_grid(sampler, spec: QuadratureSpec = QuadratureSpec(),
                        chunk: int = 8) -> CharacteristicGrid:
    """``chi(mu, nu)`` on the trapezoid nodes of ``spec``.

    The tomogram of a real state obeys ``W(X, -mu, -nu) = W(-X, mu, nu)``, so
    ``chi(-mu, -nu) = conj(chi(mu, nu))`` and only half of the square is
    sampled.  The phase ``e^{i s y}`` on the uniform ``y`` nodes factorizes as
    ``A_i B_j`` with ``y = y0 + dy (i n2 + j)``, which avoids forming a full
    table of complex exponentials.

    ``residual`` estimates the truncation error of both windows: the largest
    ``|chi|`` on the edge of the ``(mu, nu)`` square plus the largest
    normalized tomogram value at the ends of the ``X/s`` window.
    """
    mu, wmu = _trapezoid_rule(-spec.munu_window, spec.munu_window, spec.munu_nodes)
    nu, wnu = _trapezoid_rule(-spec.munu_window, spec.munu_window, spec.munu_nodes)
    n1, n2 = _split(spec.x_nodes)
    y0 = -spec.x_window
    dy = 2.0 * spec.x_window / (spec.x_nodes - 1)
    y = y0 + dy * np.arange(spec.x_nodes)
    _, wy = _trapezoid_rule(-spec.x_window, spec.x_window, spec.x_nodes)
    wy = wy.reshape(n1, n2)
    size = mu.size
    chi = np.empty((size, size), dtype=np.complex128)
    x_edge = 0.0
    first = size // 2
    for start in range(first, size, chunk):
        stop = min(start + chunk, size)
        m = mu[start:stop, None, None]
        n = nu[None, :, None]
        s = np.hypot(m, n)
        s_safe = np.where(s == 0, 1.0, s)
        origin = s == 0
        vals = sampler(s_safe * y[None, None, :], np.where(origin, 1.0, m),
                       np.where(origin, 0.0, n)) * s_safe
        x_edge = max(x_edge, float(np.max(np.abs(vals[..., [0, -1]]))))
        A = np.exp(1j * s_safe * (y0 + dy * n2 * np.arange(n1)))
        B = np.exp(1j * s_safe * (dy * np.arange(n2)))
        v = vals.reshape(vals.shape[:2] + (n1, n2)) * wy
        block = np.einsum("abij,abi,abj->ab", v, A, B, optimize=True)
        chi[start:stop] = np.where(s[..., 0] == 0, 1.0, block)
    chi[:first] = np.conj(chi[size - first:][::-1, ::-1])
    edge = max(np.abs(chi[[0, -1], :]).max(), np.abs(chi[:, [0, -1]]).max())
    residual = float(edge + x_edge)
    if residual > RESIDUAL_TARGET:
        warnings.warn(QuadratureWarning("characteristic_grid window", residual, RESIDUAL_TARGET),
                      stacklevel=2)
    return CharacteristicGrid(mu, nu, wmu, wnu, chi, residual)


def wigner_from_symplectic(sampler, q, p, spec: QuadratureSpec = QuadratureSpec(), *,
                           chi: CharacteristicGrid | None = None) -> WignerGrid:
    """``W(q, p) = integral dX dmu dnu / 2pi  e^{i(X - mu q - nu p)} W_sym(X, mu, nu)``."""
    q = np.asarray(q, dtype=np.float64)
    p = np.asarray(p, dtype=np.float64)
    g = characteristic_grid(sampler, spec) if chi is None else chi
    eq = np.exp(-1j * np.outer(q, g.mu)) * g.weights_mu
    ep = np.exp(-1j * np.outer(g.nu, p)) * g.weights_nu[:, None]
    W = (eq @ g.chi @ ep).real / (2 * np.pi)
    return WignerGrid(q, p, W)


def displacement_elements(N: int, beta) -> np.ndarray:
    """``<m|D(beta)|n>`` for ``m, n < N`` at every point of ``beta``; shape ``(N, N) + beta.shape``."""
    beta = np.asarray(beta, dtype=np.complex128)
    x = np.abs(beta) ** 2
    g = np.exp(-0.5 * x)
    out = np.empty((N, N) + beta.shape, dtype=np.complex128)
    for m in range(N):
        for n in range(N):
            if m >= n:
                k = m - n
                c = math.exp(0.5 * (math.lgamma(n + 1) - math.lgamma(m + 1)))
                out[m, n] = c * beta ** k * g * laguerre(n, x, k)
            else:
                k = n - m
                c = math.exp(0.5 * (math.lgamma(m + 1) - math.lgamma(n + 1)))
                out[m, n] = c * (-np.conj(beta)) ** k * g * laguerre(m, x, k)
    return out


@dataclass
class Reconstruction:
    """Reconstructed density matrix (Hermitian part) with its quadrature diagnostics."""

    matrix: np.ndarray
    hermitian_defect: float
    residual: float


def density_from_symplectic(sampler, N: int, spec: QuadratureSpec = QuadratureSpec(), *,
                            chi: CharacteristicGrid | None = None) -> Reconstruction:
    """``rho = (1/2pi) integral dX dmu dnu e^{i(X - mu q - nu p)} W_sym``, truncated to ``N``.

    ``exp(-i(mu q + nu p))`` is the displacement ``D(beta)`` with
    ``beta = (nu - i mu)/sqrt(2)``.
    """
    g = characteristic_grid(sampler, spec) if chi is None else chi
    w = (g.weights_mu[:, None] * g.weights_nu[None, :]) * g.chi
    rho = np.zeros((N, N), dtype=np.complex128)
    for start in range(0, g.mu.size, 64):
        beta = (g.nu[None, :] - 1j * g.mu[start:start + 64, None]) / math.sqrt(2.0)
        d = displacement_elements(N, beta)
        rho += np.einsum("mnab,ab->mn", d, w[start:start + 64])
    rho /= 2 * np.pi
    defect = float(np.max(np.abs(rho - rho.conj().T)))
    return Reconstruction(0.5 * (rho + rho.conj().T), defect, g.residual)
