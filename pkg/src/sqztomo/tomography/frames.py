"""Scaling/rotation frames and their symplectic parameters ``(mu, nu)``."""

from __future__ import annotations

import math
from dataclasses import dataclass

from ..diagnostics import FrameDomainError


@dataclass(frozen=True)
class TomographyFrame:
    """Squeeze parameter ``lam`` and rotation angle ``theta`` (radians)."""

    lam: float
    theta: float

    def __post_init__(self):
        if not (math.isfinite(self.lam) and math.isfinite(self.theta)):
            raise ValueError(f"frame parameters must be finite, got ({self.lam}, {self.theta})")

    @property
    def mu(self) -> float:
        return math.exp(self.lam) * math.cos(self.theta)

    @property
    def nu(self) -> float:
        return math.exp(-self.lam) * math.sin(self.theta)

    @property
    def munu(self) -> tuple[float, float]:
        return self.mu, self.nu


def frame_to_munu(lam: float, theta: float) -> tuple[float, float]:
    """``mu = e^lam cos(theta)``, ``nu = e^-lam sin(theta)``."""
    return TomographyFrame(lam, theta).munu


def munu_to_frame(mu: float, nu: float) -> TomographyFrame:
    """Canonical preimage of ``(mu, nu)``.

    The map is many-to-one: ``theta`` and ``pi/2 - theta`` share ``mu nu``.
    The canonical branch is ``|theta| <= pi/4`` whenever ``mu > 0``, and
    ``theta = pi/2`` on the axis ``mu = 0, nu > 0``.  Points with ``mu < 0``
    or ``mu = 0, nu <= 0`` need ``theta`` outside ``(-pi/2, pi/2]`` and are
    rejected.
    """
    mu = float(mu)
    nu = float(nu)
    if not (math.isfinite(mu) and math.isfinite(nu)):
        raise FrameDomainError("mu and nu must be finite", mu, nu)
    if abs(mu * nu) > 0.5:
        raise FrameDomainError("|mu nu| <= 1/2", mu, nu)
    if mu < 0:
        raise FrameDomainError("mu >= 0 on the canonical branch theta in (-pi/2, pi/2]", mu, nu)
    if mu == 0:
        if nu <= 0:
            raise FrameDomainError("nu > 0 when mu = 0 (theta = pi/2)", mu, nu)
        return TomographyFrame(-math.log(nu), math.pi / 2)
    theta = 0.5 * math.asin(max(-1.0, min(1.0, 2.0 * mu * nu)))
    return TomographyFrame(math.log(mu / math.cos(theta)), theta)
