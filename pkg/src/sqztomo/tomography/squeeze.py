"""Squeeze tomograms: the Fock-space oracle and the closed forms.

``W(n | lam, theta) = <n| S(lam) R(theta) rho R^dag(theta) S^dag(lam) |n>``

The oracle conjugates ``rho`` with matrix exponentials and is the reference
every other route is checked against.  The closed forms are evaluated through
normalized recursions so that no Hermite value or factorial is ever formed
explicitly.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from ..config import (LAMBDA_MAX, LEAKAGE_HARD, N_MAX_SPECIAL, ORACLE_PAD, TAIL_TOP_FRACTION, TAIL_WARN,
                      boundary_margin)
from ..diagnostics import TruncationWarning
from ..fock_core import DensityMatrix, _squeeze_generator, matrix_exponential
from ..special import hermite, hermite_at_zero_log, two_index_hermite_table, squeeze_r_matrix
from ..states import StateSpec, boltzmann_weights, make_density
from .frames import TomographyFrame

BOLTZMANN_TAIL = 1e-10
# number of photon levels summed when checking normalization of closed forms
NORM_LEVELS = N_MAX_SPECIAL


@dataclass
class SqueezeTomogram:
    """Photon-number probabilities ``values[f, n]`` for each frame ``f``.

    ``tail_mass[f]`` is the probability above ``n_max``; ``total[f]`` is the
    sum over every level the route computed (the normalization check).
    """

    n_max: int
    frames: tuple
    values: np.ndarray
    tail_mass: np.ndarray
    total: np.ndarray
    route: str
    min_before_clip: float = 0.0
    boundary_mass: np.ndarray = field(default=None)

    def column(self, frame_index: int = 0) -> np.ndarray:
        return self.values[frame_index]


def _as_frames(frames) -> tuple:
    if isinstance(frames, TomographyFrame):
        return (frames,)
    return tuple(frames)


def _clip(values: np.ndarray) -> tuple[np.ndarray, float]:
    lo = float(values.min()) if values.size else 0.0
    return np.clip(values, 0.0, None), lo


@lru_cache(maxsize=32)
def _squeeze_columns(lam: float, M: int, N: int) -> np.ndarray:
    U = matrix_exponential(_squeeze_generator(lam, M))[:, :N]
    U.setflags(write=False)
    return U


def squeeze_tomogram_oracle(rho: DensityMatrix, frames, n_max: int, *,
                            pad: int = ORACLE_PAD,
                            lambda_max: float = LAMBDA_MAX) -> SqueezeTomogram:
    """Reference tomogram by explicit conjugation in Fock space.

    The squeeze operator is exponentiated in a working space ``pad`` times
    larger than the cutoff of ``rho`` and then cropped, so its columns are
    accurate on every level where ``rho`` has weight.
    """
    frames = _as_frames(frames)
    N = rho.dim
    if n_max >= N - boundary_margin(N):
        raise ValueError(f"n_max={n_max} must be < N - margin = {N - boundary_margin(N)}")
    M = max(N, pad * N)
    top = max(1, int(math.ceil(TAIL_TOP_FRACTION * M)))
    r = rho.matrix
    rows, totals, tails, edges = [], [], [], []
    for fr in frames:
        if abs(fr.lam) > lambda_max:
            raise ValueError(f"|lambda|={abs(fr.lam)} exceeds lambda_max={lambda_max}")
        U = _squeeze_columns(float(fr.lam), M, N) * np.exp(1j * fr.theta * (np.arange(N) + 0.5))
        w = np.einsum("ij,ij->i", U @ r, U.conj()).real
        rows.append(w[: n_max + 1])
        totals.append(w.sum())
        tails.append(max(0.0, 1.0 - w[: n_max + 1].sum()))
        edges.append(max(0.0, w[M - top:].sum()))
    values, lo = _clip(np.array(rows))
    total = np.array(totals)
    edge = np.array(edges)
    if edge.max() > TAIL_WARN:
        warnings.warn(TruncationWarning("squeeze_tomogram_oracle", float(edge.max()), TAIL_WARN),
                      stacklevel=2)
    if (1.0 - total).max() > LEAKAGE_HARD:
        warnings.warn(TruncationWarning("squeeze_tomogram_oracle", float((1 - total).max()),
                                        LEAKAGE_HARD), stacklevel=2)
    return SqueezeTomogram(n_max, frames, values, np.array(tails), total, "oracle", lo, edge)


def squeeze_dequantizer(n: int, frame: TomographyFrame, N: int, *,
                        pad: int = ORACLE_PAD) -> np.ndarray:
    """``U^dag |n><n| U`` with ``U = S(lam) R(theta)``, cropped to the cutoff.

    ``trace(rho @ result)`` is the squeeze tomogram at ``n``.
    """
    M = max(N, pad * N)
    row = _squeeze_columns(float(frame.lam), M, N)[n] * np.exp(1j * frame.theta * (np.arange(N) + 0.5))
    return np.outer(row.conj(), row)


# ---------------------------------------------------------------- closed forms

def _as_levels(n):
    arr = np.asarray(n)
    if np.any(arr < 0):
        raise ValueError("photon numbers must be non-negative")
    return arr.astype(int)


def squeeze_tomogram_vacuum(n, lam: float):
    """Squeezed-vacuum photon statistics ``(-tanh)^n H_n(0)^2 / (n! 2^n cosh)``.

    Evaluated in log space; independent of the rotation angle.
    """
    levels = _as_levels(n)
    t = math.tanh(lam)
    out = np.zeros(levels.shape)
    for idx, k in np.ndenumerate(levels):
        if k % 2:
            continue
        if k == 0:
            out[idx] = 1.0 / math.cosh(lam)
            continue
        if t == 0.0:
            continue
        log_h, _ = hermite_at_zero_log(int(k))
        out[idx] = math.exp(k * math.log(abs(t)) - math.lgamma(k + 1) - k * math.log(2.0)
                            - math.log(math.cosh(lam)) + 2.0 * log_h)
    return out[()] if out.ndim == 0 else out


def coherent_amplitudes(n_max: int, lam: float, theta: float, alpha: complex) -> np.ndarray:
    """``<n|S(lam) R(theta)|alpha>`` for ``n = 0..n_max``.

    Uses the Hermite generating function with the Hermite argument and the
    ``(tanh/2)^{n/2}`` prefactor folded together:  with ``a~ = alpha e^{i theta}``
    the normalized terms ``u_n`` obey

        u_{n+1} = (a~ sech(lam) u_n - tanh(lam) sqrt(n) u_{n-1}) / sqrt(n+1).

    This is regular at ``lam = 0`` and valid for either sign of ``lam``.
    """
    at = complex(alpha) * complex(math.cos(theta), math.sin(theta))
    sech = 1.0 / math.cosh(lam)
    t = math.tanh(lam)
    u = np.zeros(n_max + 1, dtype=np.complex128)
    u[0] = 1.0
    if n_max >= 1:
        u[1] = at * sech
    for k in range(1, n_max):
        u[k + 1] = (at * sech * u[k] - t * math.sqrt(k) * u[k - 1]) / math.sqrt(k + 1)
    pref = (np.exp(0.5j * theta) * math.sqrt(sech)
            * np.exp(-0.5 * abs(alpha) ** 2 + 0.5 * at * at * t))
    return pref * u


def coherent_matrix_element(n: int, lam: float, theta: float, alpha: complex) -> complex:
    """Amplitude ``<n|S(lam) R(theta)|alpha>``."""
    return complex(coherent_amplitudes(int(n), lam, theta, alpha)[int(n)])


LAMBDA_SWITCH = 1e-6


def coherent_matrix_element_printed(n: int, lam: float, theta: float, alpha: complex) -> complex:
    """The closed form with ``|tanh lam|`` and ``|sinh 2 lam|`` taken literally.

    Agrees with :func:`coherent_matrix_element` for ``lam > 0`` only; for
    ``lam < 0`` the absolute values select the wrong branch of the square
    roots.  For ``|lam| < 1e-6`` the rotated-coherent limit is returned.
    """
    n = int(n)
    at = complex(alpha) * complex(math.cos(theta), math.sin(theta))
    if abs(lam) < LAMBDA_SWITCH:
        return complex(np.exp(-0.5 * abs(alpha) ** 2 + 0.5j * theta)
                       * at ** n / math.sqrt(math.factorial(n)))
    pref = np.exp(0.5 * (-abs(alpha) ** 2 + 1j * theta + at * at * math.tanh(lam)))
    scale = math.sqrt(abs(math.tanh(lam)) ** n / (2.0 ** n * math.factorial(n) * math.cosh(lam)))
    return complex(pref * scale * hermite(n, at / math.sqrt(abs(math.sinh(2 * lam)))))


def coherent_matrix_element_quadrature(n: int, lam: float, theta: float, alpha: complex,
                                       nodes: int = 4001) -> complex:
    """``e^{(lam + i theta)/2} * integral psi_n(x) psi_{a~}(e^lam x) dx`` by trapezoid."""
    from ..states import coherent_wavefunction
    from ..special import oscillator_table

    at = complex(alpha) * complex(math.cos(theta), math.sin(theta))
    centre = math.sqrt(2.0) * at.real * math.exp(-lam)
    half = 10.0 + math.sqrt(2.0 * n + 1.0) + 10.0 * math.exp(-lam) + abs(centre)
    x = np.linspace(-half, half, nodes)
    f = oscillator_table(n, x)[n] * coherent_wavefunction(at, math.exp(lam) * x)
    return complex(np.exp(0.5 * (lam + 1j * theta)) * np.trapezoid(f, x))


def squeeze_tomogram_coherent(n, lam: float, theta: float, alpha: complex):
    levels = _as_levels(n)
    amp = coherent_amplitudes(int(levels.max()), lam, theta, alpha)
    out = np.abs(amp[levels]) ** 2
    return out[()] if out.ndim == 0 else out


def fock_squeeze_table(lam: float, n_max: int, m_max: int) -> np.ndarray:
    """``|<n|S(lam)|m>|^2 = sech(lam) H^R_{nm}(0)^2 / (n! m!)`` for all ``n, m``."""
    h = two_index_hermite_table(squeeze_r_matrix(lam), n_max, m_max)
    return h * h / math.cosh(lam)


def _fock_one(n: int, lam: float) -> float:
    """``n^2 tanh^{n-1} H_{n-1}(0)^2 / (2^{n-1} n! cosh^3)``, the |1> tomogram."""
    if n == 0 or n % 2 == 0:
        return 0.0
    k = n - 1
    c3 = 3.0 * math.log(math.cosh(lam))
    if k == 0:
        return math.exp(-c3)
    t = math.tanh(lam)
    if t == 0.0:
        return 0.0
    log_h, _ = hermite_at_zero_log(k)
    return math.exp(2 * math.log(n) + k * math.log(abs(t)) + 2.0 * log_h
                    - k * math.log(2.0) - math.lgamma(n + 1) - c3)


def squeeze_tomogram_fock(n, lam: float, m: int):
    """Photon statistics of the squeezed Fock state ``S(lam)|m>``; no theta dependence."""
    levels = _as_levels(n)
    if m == 1:
        out = np.array([_fock_one(int(k), lam) for k in levels.ravel()]).reshape(levels.shape)
    else:
        table = fock_squeeze_table(lam, int(levels.max()), int(m))
        out = table[levels, m]
    return out[()] if out.ndim == 0 else out


def squeeze_tomogram_cat(n, lam: float, theta: float, alpha: complex, parity: int):
    """Even (+1) / odd (-1) cat tomogram: ``[1 +- (-1)^n] / (1 +- e^{-2|alpha|^2}) W_alpha``."""
    levels = _as_levels(n)
    w = squeeze_tomogram_coherent(levels, lam, theta, alpha)
    factor = (1.0 + parity * (-1.0) ** levels) / (1.0 + parity * math.exp(-2.0 * abs(alpha) ** 2))
    out = factor * w
    return out[()] if np.ndim(out) == 0 else out


def thermal_sum_limit(T: float, tol: float = BOLTZMANN_TAIL) -> int:
    """Smallest ``m`` such that the Boltzmann weight above ``m`` is below ``tol``."""
    return max(1, int(math.ceil(-T * math.log(tol))))


def squeeze_tomogram_thermal(n, lam: float, T: float, m_sum_max: int | None = None):
    """Boltzmann-weighted sum of squeezed Fock tomograms (theta independent)."""
    levels = _as_levels(n)
    if m_sum_max is None:
        m_sum_max = thermal_sum_limit(T)
    tail = math.exp(-(m_sum_max + 1) / T)
    if tail > BOLTZMANN_TAIL:
        warnings.warn(TruncationWarning("squeeze_tomogram_thermal", tail, BOLTZMANN_TAIL),
                      stacklevel=2)
    p = boltzmann_weights(T, m_sum_max + 1)
    table = fock_squeeze_table(lam, int(levels.max()), m_sum_max)
    out = (table @ p)[levels]
    return out[()] if out.ndim == 0 else out


def closed_form_tomogram(spec: StateSpec, frames, n_max: int, *,
                         norm_levels: int = NORM_LEVELS) -> SqueezeTomogram:
    """Tomogram of ``spec`` from its closed form, for each frame."""
    frames = _as_frames(frames)
    levels = np.arange(max(norm_levels, n_max + 1))
    rows, totals = [], []
    for fr in frames:
        if spec.kind == "vacuum":
            w = squeeze_tomogram_vacuum(levels, fr.lam)
        elif spec.kind == "fock":
            w = squeeze_tomogram_fock(levels, fr.lam, spec.m)
        elif spec.kind == "coherent":
            w = squeeze_tomogram_coherent(levels, fr.lam, fr.theta, spec.alpha)
        elif spec.kind == "cat":
            w = squeeze_tomogram_cat(levels, fr.lam, fr.theta, spec.alpha, spec.parity)
        else:
            w = squeeze_tomogram_thermal(levels, fr.lam, spec.T)
        rows.append(w[: n_max + 1])
        totals.append(w.sum())
    values, lo = _clip(np.array(rows))
    tails = np.maximum(0.0, 1.0 - values.sum(axis=1))
    return SqueezeTomogram(n_max, frames, values, tails, np.array(totals), "closed_form", lo)


def oracle_tomogram(spec: StateSpec, frames, n_max: int, N: int, **kw) -> SqueezeTomogram:
    """Convenience: build the density matrix and run the oracle."""
    return squeeze_tomogram_oracle(make_density(spec, N), frames, n_max, **kw)
