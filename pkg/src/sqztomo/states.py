"""Example photon states: vacuum, Fock, coherent, even/odd cat, thermal."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln

from .config import TAIL_WARN
from .diagnostics import CutoffError, warn_tail
from .fock_core import DensityMatrix
from .special import oscillator_table

KINDS = ("vacuum", "fock", "coherent", "cat", "thermal")


@dataclass(frozen=True)
class StateSpec:
    kind: str
    m: int = 0
    alpha: complex = 0j
    parity: int = 1
    T: float = 1.0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown state kind {self.kind!r}; expected one of {KINDS}")
        if self.kind == "fock" and (int(self.m) != self.m or self.m < 0):
            raise ValueError(f"Fock index must be a non-negative integer, got {self.m}")
        if self.kind == "thermal" and not self.T > 0:
            raise ValueError(f"temperature must be positive, got {self.T}")
        if self.kind == "cat":
            if abs(self.alpha) == 0:
                raise ValueError("cat states need |alpha| > 0")
            if self.parity not in (1, -1):
                raise ValueError(f"cat parity must be +1 or -1, got {self.parity}")
        object.__setattr__(self, "alpha", complex(self.alpha))

    @classmethod
    def vacuum(cls):
        return cls("vacuum")

    @classmethod
    def fock(cls, m: int):
        return cls("fock", m=int(m))

    @classmethod
    def coherent(cls, alpha: complex):
        return cls("coherent", alpha=alpha)

    @classmethod
    def cat(cls, alpha: complex, parity: int = 1):
        return cls("cat", alpha=alpha, parity=parity)

    @classmethod
    def thermal(cls, T: float):
        return cls("thermal", T=float(T))

    @property
    def is_pure(self) -> bool:
        return self.kind != "thermal"

    def to_json(self) -> dict:
        if self.kind == "vacuum":
            return {"kind": "vacuum"}
        if self.kind == "fock":
            return {"kind": "fock", "m": self.m}
        if self.kind == "coherent":
            return {"kind": "coherent", "alpha": [self.alpha.real, self.alpha.imag]}
        if self.kind == "cat":
            return {"kind": "cat", "alpha": [self.alpha.real, self.alpha.imag],
                    "parity": "+" if self.parity > 0 else "-"}
        return {"kind": "thermal", "T": self.T}

    @classmethod
    def from_json(cls, data: dict) -> "StateSpec":
        kind = data["kind"]
        alpha = data.get("alpha", [0.0, 0.0])
        if not isinstance(alpha, (list, tuple)):
            alpha = [complex(alpha).real, complex(alpha).imag]
        parity = data.get("parity", "+")
        if isinstance(parity, str):
            parity = 1 if parity in ("+", "even") else -1
        return cls(kind, m=int(data.get("m", 0)), alpha=complex(alpha[0], alpha[1]),
                   parity=int(parity), T=float(data.get("T", 1.0)))

    @classmethod
    def parse(cls, text: str) -> "StateSpec":
        """Parse the CLI form: ``vacuum``, ``fock:1``, ``coherent:3+0j``, ``cat:2:-``, ``thermal:1.5``."""
        parts = text.strip().split(":")
        kind = parts[0].lower()
        try:
            if kind == "vacuum" and len(parts) == 1:
                return cls.vacuum()
            if kind == "fock" and len(parts) == 2:
                return cls.fock(int(parts[1]))
            if kind == "coherent" and len(parts) == 2:
                return cls.coherent(complex(parts[1].replace(" ", "")))
            if kind == "cat" and len(parts) in (2, 3):
                sign = parts[2] if len(parts) == 3 else "+"
                if sign not in ("+", "-"):
                    raise ValueError(f"cat parity must be + or -, got {sign!r}")
                return cls.cat(complex(parts[1].replace(" ", "")), 1 if sign == "+" else -1)
            if kind == "thermal" and len(parts) == 2:
                return cls.thermal(float(parts[1]))
        except ValueError as exc:
            raise ValueError(f"cannot parse state {text!r}: {exc}") from None
        raise ValueError(f"cannot parse state {text!r}")


def fock_vector(m: int, N: int) -> np.ndarray:
    if m >= N:
        raise CutoffError(f"Fock state |{m}> needs cutoff > {m}, got {N}", tail_mass=1.0)
    psi = np.zeros(N, dtype=np.complex128)
    psi[m] = 1.0
    return psi


def coherent_vector(alpha: complex, N: int) -> np.ndarray:
    """Analytic Fock amplitudes ``exp(-|alpha|^2/2) alpha^n / sqrt(n!)``."""
    n = np.arange(N)
    if alpha == 0:
        return fock_vector(0, N)
    log_amp = -0.5 * abs(alpha) ** 2 + n * np.log(abs(alpha)) - 0.5 * gammaln(n + 1)
    return np.exp(log_amp) * np.exp(1j * n * np.angle(alpha))


def cat_normalization(alpha: complex, parity: int) -> float:
    return math.sqrt(1.0 / (2.0 * (1.0 + parity * math.exp(-2.0 * abs(alpha) ** 2))))


def cat_vector(alpha: complex, parity: int, N: int) -> np.ndarray:
    n = np.arange(N)
    return cat_normalization(alpha, parity) * coherent_vector(alpha, N) * (1 + parity * (-1.0) ** n)


def boltzmann_weights(T: float, N: int) -> np.ndarray:
    """``exp(-(n+1/2)/T) / Z`` with ``Z = cosech(1/(2T))/2``; not renormalized to the cutoff."""
    n = np.arange(N)
    return np.exp(-n / T) * (-math.expm1(-1.0 / T))


def _coherent_fit(alpha: complex, N: int) -> None:
    need = abs(alpha) ** 2 + 6 * abs(alpha) + 10
    if need > N:
        tail = 1.0 - float(np.sum(np.abs(coherent_vector(alpha, N)) ** 2))
        raise CutoffError(
            f"cutoff N={N} too small for |alpha|={abs(alpha):.3g} (needs >= {need:.1f}); "
            f"tail_mass={tail:.3e}", tail_mass=tail)


def state_vector(spec: StateSpec, N: int) -> np.ndarray:
    """Ket for a pure ``StateSpec``."""
    if spec.kind == "vacuum":
        return fock_vector(0, N)
    if spec.kind == "fock":
        return fock_vector(spec.m, N)
    if spec.kind == "coherent":
        _coherent_fit(spec.alpha, N)
        return coherent_vector(spec.alpha, N)
    if spec.kind == "cat":
        _coherent_fit(spec.alpha, N)
        return cat_vector(spec.alpha, spec.parity, N)
    raise ValueError(f"{spec.kind} state is mixed; use make_density")


def make_density(spec: StateSpec, N: int) -> DensityMatrix:
    """Density matrix of ``spec`` at cutoff ``N``."""
    if spec.kind == "thermal":
        p = boltzmann_weights(spec.T, N)
        tail = 1.0 - float(p.sum())
        if tail > DensityMatrix.TRACE_TOL:
            raise CutoffError(
                f"cutoff N={N} too small for T={spec.T}; tail_mass={tail:.3e}", tail_mass=tail)
        rho = DensityMatrix(np.diag(p).astype(np.complex128))
    else:
        rho = DensityMatrix.from_vector(state_vector(spec, N))
    warn_tail("make_density", rho.tail_mass, TAIL_WARN)
    return rho


def fock_wavefunction(n: int, x):
    """Oscillator eigenfunction ``psi_n(x)`` (real)."""
    vals = oscillator_table(n, x)[n]
    return vals[()] if np.ndim(vals) == 0 else vals


def coherent_wavefunction(alpha: complex, x):
    """``<x|alpha> = pi^{-1/4} exp(-x^2/2 + sqrt2 alpha x - alpha^2/2 - |alpha|^2/2)``.

    The global phase is the one that makes ``<n|alpha> = e^{-|alpha|^2/2} alpha^n/sqrt(n!)``.
    """
    x = np.asarray(x, dtype=np.float64)
    alpha = complex(alpha)
    out = np.pi ** -0.25 * np.exp(
        -0.5 * x * x + math.sqrt(2.0) * alpha * x - 0.5 * alpha * alpha - 0.5 * abs(alpha) ** 2
    )
    return out[()] if out.ndim == 0 else out


def position_representation(rho: DensityMatrix, x, y=None) -> np.ndarray:
    """``rho(x, y) = <x|rho|y>`` on the tensor grid ``x`` by ``y``."""
    x = np.asarray(x, dtype=np.float64)
    y = x if y is None else np.asarray(y, dtype=np.float64)
    N = rho.dim
    px = oscillator_table(N - 1, x)
    py = px if y is x else oscillator_table(N - 1, y)
    return px.T @ rho.matrix @ py
