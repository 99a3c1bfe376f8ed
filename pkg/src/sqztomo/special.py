"""Hermite, Laguerre and two-index Hermite polynomials.

All polynomials are evaluated by three-term recursions.  For large orders the
raw values overflow long before the quantities built from them do (tomograms
divide ``H_n`` by ``n!``-sized factors), so the module also offers

* a log-magnitude + sign representation (``log_hermite``), and
* "normalized" tables where the factorial growth is divided out inside the
  recursion (``oscillator_table``, ``two_index_hermite_table``).

Conventions: physicists' Hermite polynomials, ``H_1(x) = 2x``.
"""

from __future__ import annotations

import math

import numpy as np

from .config import N_MAX_SPECIAL

_RESCALE_AT = 1e100


def _check_order(n: int, n_max: int = N_MAX_SPECIAL) -> int:
    n = int(n)
    if n < 0:
        raise ValueError(f"polynomial order must be non-negative, got {n}")
    if n > n_max:
        raise ValueError(f"polynomial order {n} exceeds n_max={n_max}")
    return n


def hermite(n, x):
    """Physicists' Hermite polynomial ``H_n(x)`` for real or complex ``x``.

    Raises ``OverflowError`` when the value is not representable; use
    :func:`log_hermite` in that regime.
    """
    n = _check_order(n)
    x = np.asarray(x)
    dtype = np.complex128 if np.iscomplexobj(x) else np.float64
    h_prev = np.ones_like(x, dtype=dtype)
    if n == 0:
        return h_prev[()] if h_prev.ndim == 0 else h_prev
    h = 2.0 * x.astype(dtype)
    with np.errstate(over="ignore", invalid="ignore"):
        for k in range(1, n):
            h_prev, h = h, 2.0 * x * h - 2.0 * k * h_prev
    if not np.all(np.isfinite(h)):
        raise OverflowError(f"H_{n} overflows at the requested points; use log_hermite")
    return h[()] if h.ndim == 0 else h


def log_hermite(n, x):
    """Return ``(log|H_n(x)|, sign(H_n(x)))`` for real ``x``.

    The recursion is rescaled whenever the running value passes 1e100, so any
    order up to ``N_MAX_SPECIAL`` is safe.  Zeros give ``(-inf, 0)``.
    """
    n = _check_order(n)
    x = np.asarray(x, dtype=np.float64)
    log_scale = np.zeros_like(x)
    h_prev = np.ones_like(x)
    h = 2.0 * x if n > 0 else h_prev.copy()
    for k in range(1, n):
        h_prev, h = h, 2.0 * x * h - 2.0 * k * h_prev
        big = np.abs(h) > _RESCALE_AT
        if np.any(big):
            s = np.where(big, np.abs(h), 1.0)
            h = h / s
            h_prev = h_prev / s
            log_scale = log_scale + np.log(s)
    sign = np.sign(h)
    with np.errstate(divide="ignore"):
        mag = np.log(np.abs(h)) + log_scale
    if x.ndim == 0:
        return float(mag), float(sign)
    return mag, sign


def hermite_at_zero_log(n: int) -> tuple[float, float]:
    """``(log|H_n(0)|, sign)`` from the closed form ``H_{2k}(0) = (-1)^k (2k)!/k!``."""
    n = _check_order(n)
    if n % 2:
        return -math.inf, 0.0
    k = n // 2
    return math.lgamma(n + 1) - math.lgamma(k + 1), (-1.0) ** k


def laguerre(n, x, alpha: float = 0.0):
    """Generalized Laguerre polynomial ``L_n^{(alpha)}(x)``; ``alpha=0`` is the plain one."""
    n = _check_order(n)
    x = np.asarray(x)
    dtype = np.complex128 if np.iscomplexobj(x) else np.float64
    l_prev = np.ones_like(x, dtype=dtype)
    if n == 0:
        return l_prev[()] if l_prev.ndim == 0 else l_prev
    l_cur = 1.0 + alpha - x.astype(dtype)
    for k in range(1, n):
        l_prev, l_cur = l_cur, ((2 * k + 1 + alpha - x) * l_cur - (k + alpha) * l_prev) / (k + 1)
    return l_cur[()] if l_cur.ndim == 0 else l_cur


def oscillator_table(n_max: int, x) -> np.ndarray:
    """Harmonic-oscillator eigenfunctions ``psi_0..psi_{n_max}`` at the points ``x``.

    ``psi_n(x) = pi^{-1/4} (2^n n!)^{-1/2} H_n(x) exp(-x^2/2)``, computed with the
    normalized recursion so nothing overflows.  Shape ``(n_max + 1,) + x.shape``.
    """
    n_max = _check_order(n_max)
    x = np.asarray(x, dtype=np.float64)
    out = np.empty((n_max + 1,) + x.shape)
    out[0] = np.pi ** -0.25 * np.exp(-0.5 * x * x)
    if n_max >= 1:
        out[1] = math.sqrt(2.0) * x * out[0]
    for k in range(1, n_max):
        out[k + 1] = math.sqrt(2.0 / (k + 1)) * x * out[k] - math.sqrt(k / (k + 1)) * out[k - 1]
    return out


def two_index_hermite_table(R, n_max: int, m_max: int) -> np.ndarray:
    """Normalized two-index Hermite values ``H^R_{nm}(0) / sqrt(n! m!)``.

    Generating function ``sum H^R_{nm}(0) s^n t^m / (n! m!) =
    exp(-(R11 s^2 + 2 R12 s t + R22 t^2) / 2)`` with ``R`` symmetric.
    Differentiating it gives the recursions used here:

        H_{n+1,m} = -R11 n H_{n-1,m} - R12 m H_{n,m-1}
        H_{n,m+1} = -R22 m H_{n,m-1} - R12 n H_{n-1,m}
    """
    R = np.asarray(R, dtype=np.float64)
    if R.shape != (2, 2) or abs(R[0, 1] - R[1, 0]) > 1e-14 * max(1.0, abs(R[0, 1])):
        raise ValueError("R must be a symmetric 2x2 matrix")
    n_max = _check_order(n_max)
    m_max = _check_order(m_max)
    r11, r12, r22 = R[0, 0], R[0, 1], R[1, 1]
    h = np.zeros((n_max + 1, m_max + 1))
    h[0, 0] = 1.0
    for m in range(m_max + 1):
        if m >= 1:
            # step in m along the n = 0 row
            prev = h[0, m - 2] if m >= 2 else 0.0
            h[0, m] = -r22 * math.sqrt(m - 1) * prev / math.sqrt(m) if m >= 2 else 0.0
        for n in range(n_max):
            a = h[n - 1, m] * math.sqrt(n) if n >= 1 else 0.0
            b = h[n, m - 1] * math.sqrt(m) if m >= 1 else 0.0
            h[n + 1, m] = (-r11 * a - r12 * b) / math.sqrt(n + 1)
    return h


def hermite_two_index_zero(R, n: int, m: int) -> float:
    """Two-index Hermite polynomial ``H^R_{nm}`` at the origin."""
    n = _check_order(n)
    m = _check_order(m)
    if (n + m) % 2:
        return 0.0
    h = two_index_hermite_table(R, n, m)[n, m]
    if h == 0.0:
        return 0.0
    log_mag = math.log(abs(h)) + 0.5 * (math.lgamma(n + 1) + math.lgamma(m + 1))
    if log_mag > 709.0:
        raise OverflowError(f"H^R_{{{n}{m}}}(0) overflows; use two_index_hermite_table")
    return math.copysign(math.exp(log_mag), h)


def squeeze_r_matrix(lam: float) -> np.ndarray:
    """The matrix ``[[tanh, -sech], [-sech, -tanh]]`` tying two-index Hermite values to squeezing."""
    t = math.tanh(lam)
    s = 1.0 / math.cosh(lam)
    return np.array([[t, -s], [-s, -t]])
