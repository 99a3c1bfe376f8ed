"""Integral-transform kernels onto the squeeze tomogram.

Three kernels are implemented exactly in their printed algebraic form:

* ``kernel_density_to_squeeze``  acts on the position-space density matrix,
* ``kernel_wigner_to_squeeze``   acts on the Wigner function,
* ``kernel_symplectic_to_squeeze`` acts on the symplectic tomogram.

Each has a companion ``transform_*`` that integrates it against a state and
returns the squeeze tomogram for ``n = 0..n_max``.  The oracle in
:mod:`.squeeze` is the arbiter; disagreements are reported by
:mod:`.verification`, never patched here.

Besides the printed form, the first two kernels accept
``coefficient="derived"``, which replaces the real quadratic coefficient by
the value obtained from the linear action of ``S(lam) R(theta)`` on
``(q, p)``; the symplectic kernel accepts ``reading="swapped"``, which
exchanges the roles of the target and integration parameters inside the
printed ``mu~``/``nu~`` expressions.  Both are diagnostic alternatives used to
locate a discrepancy; the printed forms remain the defaults.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..diagnostics import SingularParameterError
from ..fock_core import DensityMatrix
from ..special import laguerre, oscillator_table
from ..states import position_representation
from .frames import TomographyFrame, munu_to_frame
from .inverse import CharacteristicGrid, QuadratureSpec, characteristic_grid
from .phase_space import wigner_points

COEFFICIENTS = ("printed", "derived")
READINGS = ("printed", "swapped")


def _printed_coefficient(mu: float, nu: float, kernel: str) -> complex:
    """``sqrt2 / (1 - sqrt(1 - 4 mu^2 nu^2)) - mu / (nu (mu^2 + nu^2))``.

    Off the physical manifold (``|mu nu| > 1/2``) the radical is taken on its
    principal complex branch.
    """
    if nu == 0:
        raise SingularParameterError(kernel, "nu")
    root = np.emath.sqrt(1.0 - 4.0 * mu * mu * nu * nu)
    denom = 1.0 - root
    if denom == 0:
        raise SingularParameterError(kernel, "1 - sqrt(1 - 4 mu^2 nu^2)")
    value = math.sqrt(2.0) / denom - mu / (nu * (mu * mu + nu * nu))
    return complex(value)


def derived_coefficient(frame: TomographyFrame) -> float:
    """Quadratic coefficient implied by the linear action of ``S R`` on ``(q, p)``.

    ``-mu nu (e^{2 lam} - e^{-2 lam}) / (mu^2 + nu^2)``.  It needs the frame
    itself: ``(lam, theta)`` and ``(lam', pi/2 - theta)`` can share ``(mu, nu)``
    while giving different squeeze tomograms.
    """
    mu, nu = frame.munu
    return -mu * nu * 2.0 * math.sinh(2.0 * frame.lam) / (mu * mu + nu * nu)


def _coefficient(mu, nu, coefficient, kernel, frame=None):
    if coefficient == "printed":
        return _printed_coefficient(mu, nu, kernel)
    if coefficient == "derived":
        if frame is None:
            frame = munu_to_frame(mu, nu)
        elif not np.allclose(frame.munu, (mu, nu), rtol=1e-12, atol=1e-14):
            raise ValueError(f"frame {frame} does not map to (mu, nu) = ({mu}, {nu})")
        return complex(derived_coefficient(frame))
    raise ValueError(f"coefficient must be one of {COEFFICIENTS}, got {coefficient!r}")


def _check_n(n: int) -> int:
    if int(n) != n or n < 0:
        raise ValueError(f"n must be a non-negative integer, got {n}")
    return int(n)


# ---------------------------------------------------------------- density matrix

def kernel_density_to_squeeze(x, y, n: int, mu: float, nu: float, *,
                              coefficient: str = "printed",
                              frame: TomographyFrame | None = None):
    """Kernel acting on ``rho(x, y)``.

    The printed prefactor ``H_n(x/s) H_n(y/s) / (sqrt(pi) s 2^n n!)`` together
    with the real Gaussian part of the exponent is evaluated as
    ``psi_n(x/s) psi_n(y/s) / s`` (``s^2 = mu^2 + nu^2``), which is the same
    expression without overflow.  The remaining phase is
    ``exp(-i c x^2/2 + i c y^2/2)``.  ``frame`` selects the preimage of
    ``(mu, nu)`` for ``coefficient="derived"`` (canonical branch if omitted).
    """
    n = _check_n(n)
    c = _coefficient(float(mu), float(nu), coefficient, "kernel_density_to_squeeze", frame)
    s = math.hypot(mu, nu)
    x, y = np.broadcast_arrays(np.asarray(x, dtype=np.float64), np.asarray(y, dtype=np.float64))
    psi_x = oscillator_table(n, x / s)[n]
    psi_y = oscillator_table(n, y / s)[n]
    out = psi_x * psi_y / s * np.exp(-0.5j * c * x * x + 0.5j * c * y * y)
    return out[()] if out.ndim == 0 else out


def transform_density_kernel(rho: DensityMatrix, frame: TomographyFrame, n_max: int, *,
                             coefficient: str = "printed", window: float = 12.0,
                             nodes: int = 1601) -> np.ndarray:
    """``W(n) = integral dx dy rho(x, y) K(x, y, n, mu, nu)`` for ``n = 0..n_max``.

    Complex in general; the printed kernel is conjugate-symmetric, so the
    imaginary part measures quadrature error only.
    """
    mu, nu = frame.munu
    x = np.linspace(-window, window, nodes)
    w = np.full(nodes, x[1] - x[0])
    w[[0, -1]] *= 0.5
    r = position_representation(rho, x) * np.outer(w, w)
    out = np.empty(n_max + 1, dtype=np.complex128)
    for n in range(n_max + 1):
        K = kernel_density_to_squeeze(x[:, None], x[None, :], n, mu, nu,
                                      coefficient=coefficient, frame=frame)
        out[n] = np.sum(r * K)
    return out


# ---------------------------------------------------------------- Wigner function

def z_squared(q, p, mu: float, nu: float, *, coefficient: str = "printed",
              frame: TomographyFrame | None = None):
    """``|z|^2 = 2 q^2 / s^2 + 2 s^2 (p - c q)^2``."""
    c = _coefficient(float(mu), float(nu), coefficient, "kernel_wigner_to_squeeze", frame)
    s2 = mu * mu + nu * nu
    q = np.asarray(q, dtype=np.float64)
    p = np.asarray(p, dtype=np.float64)
    if c.imag == 0:
        c = c.real
    d = p - c * q
    return 2.0 * q * q / s2 + 2.0 * s2 * d * d


def kernel_wigner_to_squeeze(q, p, n: int, mu: float, nu: float, *,
                             coefficient: str = "printed",
                             frame: TomographyFrame | None = None):
    """``(-1)^n / pi * exp(-|z|^2 / 2) * L_n(|z|^2)``."""
    n = _check_n(n)
    z2 = z_squared(q, p, mu, nu, coefficient=coefficient, frame=frame)
    out = (-1.0) ** n / math.pi * np.exp(-0.5 * z2) * laguerre(n, z2)
    out = np.asarray(out)
    return out[()] if out.ndim == 0 else out


def fock_wigner_kernel(q, p, n: int):
    """Wigner function of ``|n><n|`` normalized as a kernel: ``(-1)^n/pi e^{-r} L_n(2r)``, ``r = q^2+p^2``."""
    r = np.asarray(q, dtype=np.float64) ** 2 + np.asarray(p, dtype=np.float64) ** 2
    out = (-1.0) ** n / math.pi * np.exp(-r) * laguerre(n, 2.0 * r)
    return out[()] if np.ndim(out) == 0 else out


def transform_wigner_kernel(rho: DensityMatrix, frame: TomographyFrame, n_max: int, *,
                            coefficient: str = "printed", window: float = 8.0,
                            nodes: int = 401) -> np.ndarray:
    """``W(n) = integral dq dp W(q, p) K_W(q, p, n, mu, nu)`` with the Wigner
    function normalized as ``integral dq dp / 2pi W = 1``."""
    mu, nu = frame.munu
    t = np.linspace(-window, window, nodes)
    w = np.full(nodes, t[1] - t[0])
    w[[0, -1]] *= 0.5
    W = wigner_points(rho, t[:, None], t[None, :]) * np.outer(w, w)
    out = np.empty(n_max + 1, dtype=np.complex128)
    for n in range(n_max + 1):
        out[n] = np.sum(W * kernel_wigner_to_squeeze(t[:, None], t[None, :], n, mu, nu,
                                                     coefficient=coefficient, frame=frame))
    return out


@dataclass(frozen=True)
class LimitPathReport:
    """Kernel evaluated along ``theta = pi/2 - delta`` at ``lam = 0``."""

    n: int
    deltas: tuple
    deviations: tuple
    coefficient: str

    @property
    def final_deviation(self) -> float:
        return self.deviations[-1]

    @property
    def coincides(self) -> bool:
        return self.final_deviation <= 1e-6


def fock_wigner_limit_path(n: int, *, coefficient: str = "printed",
                           deltas=(1e-1, 1e-2, 1e-3, 1e-4), extent: float = 3.0,
                           points: int = 61) -> LimitPathReport:
    """Approach ``mu = 0, nu = 1`` and compare the kernel with the Fock-state Wigner function.

    The kernel is singular exactly at that point as printed, so it is
    evaluated at ``(lam, theta) = (0, pi/2 - delta)`` for shrinking ``delta``;
    the deviation is the maximum absolute difference on a square
    ``[-extent, extent]^2`` grid.
    """
    t = np.linspace(-extent, extent, points)
    Q, P = np.meshgrid(t, t, indexing="ij")
    target = fock_wigner_kernel(Q, P, n)
    devs = []
    for d in deltas:
        fr = TomographyFrame(0.0, math.pi / 2 - d)
        K = kernel_wigner_to_squeeze(Q, P, n, fr.mu, fr.nu, coefficient=coefficient, frame=fr)
        devs.append(float(np.max(np.abs(K - target))))
    return LimitPathReport(n, tuple(deltas), tuple(devs), coefficient)


# ---------------------------------------------------------------- symplectic tomogram

def tilde_parameters(mu_p: float, nu_p: float, mu: float, nu: float, *,
                     reading: str = "printed") -> tuple[complex, complex]:
    """``(mu~, nu~)`` of the printed formulas.

    ``reading="printed"``: the radical and the ``1/nu``, ``1/mu`` factors use
    the integration variables ``(mu, nu)``.  ``reading="swapped"``: primed and
    unprimed symbols are exchanged throughout.
    """
    if reading == "swapped":
        mu_p, nu_p, mu, nu = mu, nu, mu_p, nu_p
    elif reading != "printed":
        raise ValueError(f"reading must be one of {READINGS}, got {reading!r}")
    mu = np.asarray(mu, dtype=np.float64)
    nu = np.asarray(nu, dtype=np.float64)
    if np.any(nu == 0):
        raise SingularParameterError("kernel_symplectic_to_squeeze", "nu")
    if np.any(mu == 0):
        raise SingularParameterError("kernel_symplectic_to_squeeze", "mu")
    root = np.emath.sqrt(1.0 - 4.0 * mu * mu * nu * nu)
    mu_t = -nu_p / (2.0 * nu) * (1.0 - root) + mu_p * mu
    nu_t = nu_p / (2.0 * mu) * (1.0 + root) + mu_p * nu
    return mu_t, nu_t


def _alpha_squared(mu_p, nu_p, mu, nu, reading):
    mu_t, nu_t = tilde_parameters(mu_p, nu_p, mu, nu, reading=reading)
    return np.abs(nu_t - 1j * mu_t) ** 2 / 2.0


def kernel_symplectic_to_squeeze(n: int, mu_p: float, nu_p: float, X, mu, nu, *,
                                 reading: str = "printed"):
    """``e^{iX} / (2 pi) * exp(-|alpha|^2 / 2) * L_n(|alpha|^2)``, ``alpha = (nu~ - i mu~)/sqrt2``."""
    n = _check_n(n)
    a2 = _alpha_squared(mu_p, nu_p, mu, nu, reading)
    out = np.exp(1j * np.asarray(X, dtype=np.float64)) / (2 * np.pi) * np.exp(-0.5 * a2) \
        * laguerre(n, a2)
    out = np.asarray(out)
    return out[()] if out.ndim == 0 else out


def transform_symplectic_kernel(sampler, frame: TomographyFrame, n_max: int, *,
                                reading: str = "printed",
                                spec: QuadratureSpec = QuadratureSpec(),
                                chi: CharacteristicGrid | None = None) -> np.ndarray:
    """``W(n) = integral dX dmu dnu W_sym(X, mu, nu) K_S(n, mu', nu', X, mu, nu)``.

    The kernel depends on ``X`` only through ``e^{iX}``, so the ``X`` integral
    is the characteristic function and the remaining integral is a
    two-dimensional trapezoid sum.  The result is complex; its imaginary part
    is returned rather than discarded.
    """
    g = characteristic_grid(sampler, spec) if chi is None else chi
    mu_p, nu_p = frame.munu
    a2 = _alpha_squared(mu_p, nu_p, g.mu[:, None], g.nu[None, :], reading)
    w = g.weights_mu[:, None] * g.weights_nu[None, :] * g.chi * np.exp(-0.5 * a2) / (2 * np.pi)
    return np.array([np.sum(w * laguerre(n, a2)) for n in range(n_max + 1)])
